#include "csit/dataset_io.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

#include "csit/binio.hpp"

namespace csit {

namespace {

constexpr char kMagic[5] = "CSID";
constexpr std::uint16_t kVersion = 1;

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path.string());
    return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot open " + path.string() + " for writing");
    return out;
}

void check_magnitudes(const Eigen::MatrixXf& frames) {
    if (frames.size() > 0 && !(frames.array() >= 0.0f).all())
        throw DomainError("dataset contains a negative magnitude");
}

} // namespace

CsiDataset read_dataset(std::istream& in) {
    // Bulk float rows are read as raw little-endian payload.
    static_assert(std::endian::native == std::endian::little, "little-endian host required");

    BinReader r(in);
    r.expect_magic(kMagic, "CSI dataset");
    const std::uint16_t version = r.u16();
    if (version != kVersion)
        throw FormatError("unsupported dataset version " + std::to_string(version));

    CsiDataset ds;
    const std::uint32_t sc = r.u32();
    const std::uint32_t n_frames = r.u32();
    if (sc == 0) throw CorruptError("dataset declares sc=0");
    ds.sc = static_cast<int>(sc);
    ds.label = DatasetLabel::from_raw(r.u8());

    const std::uint16_t tag_len = r.u16();
    ds.scenario_tag.resize(tag_len);
    if (tag_len > 0) r.bytes(ds.scenario_tag.data(), tag_len);

    ds.frames.resize(n_frames, sc);
    std::vector<float> row(sc);
    for (std::uint32_t j = 0; j < n_frames; ++j) {
        r.bytes(row.data(), sizeof(float) * sc);
        ds.frames.row(j) = Eigen::Map<const Eigen::VectorXf>(row.data(), sc).transpose();
    }
    check_magnitudes(ds.frames);
    return ds;
}

void write_dataset(const CsiDataset& dataset, std::ostream& out) {
    check_magnitudes(dataset.frames);
    if (dataset.scenario_tag.size() > std::numeric_limits<std::uint16_t>::max())
        throw DomainError("scenario tag longer than 65535 bytes");

    BinWriter w(out);
    w.magic(kMagic);
    w.u16(kVersion);
    w.u32(static_cast<std::uint32_t>(dataset.sc));
    w.u32(static_cast<std::uint32_t>(dataset.frame_count()));
    w.u8(dataset.label.raw);
    w.u16(static_cast<std::uint16_t>(dataset.scenario_tag.size()));
    w.bytes(dataset.scenario_tag.data(), dataset.scenario_tag.size());

    std::vector<float> row(dataset.sc);
    for (int j = 0; j < dataset.frame_count(); ++j) {
        Eigen::Map<Eigen::VectorXf>(row.data(), dataset.sc) = dataset.frames.row(j).transpose();
        w.bytes(row.data(), sizeof(float) * row.size());
    }
}

CsiDataset load_dataset(const std::filesystem::path& path) {
    auto in = open_input(path);
    CsiDataset ds = read_dataset(in);
    // Trailing garbage means the writer and header disagree about n_frames.
    in.peek();
    if (!in.eof()) throw CorruptError(path.string() + ": trailing bytes after last frame");
    return ds;
}

void save_dataset(const CsiDataset& dataset, const std::filesystem::path& path) {
    auto out = open_output(path);
    write_dataset(dataset, out);
    out.flush();
    if (!out) throw CorruptError("write failed for " + path.string());
}

namespace {

float parse_float(std::string_view field, const char* what) {
    float v = 0.0f;
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end)
        throw CorruptError(std::string("CSV: bad ") + what + " value '" + std::string(field) + "'");
    return v;
}

} // namespace

CsiDataset load_dataset_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw FormatError("CSV: missing header line");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "sc,label,tag") throw FormatError("CSV: expected header 'sc,label,tag'");

    if (!std::getline(in, line)) throw FormatError("CSV: missing metadata line");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw FormatError("CSV: metadata line needs 'sc,label,tag'");

    CsiDataset ds;
    ds.sc = static_cast<int>(parse_float(std::string_view(line).substr(0, c1), "sc"));
    if (ds.sc <= 0) throw CorruptError("CSV: sc must be positive");
    ds.label = DatasetLabel::from_raw(
        static_cast<std::uint8_t>(parse_float(std::string_view(line).substr(c1 + 1, c2 - c1 - 1), "label")));
    ds.scenario_tag = line.substr(c2 + 1);

    std::vector<Eigen::VectorXf> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        Eigen::VectorXf row(ds.sc);
        std::string_view rest(line);
        for (int i = 0; i < ds.sc; ++i) {
            const auto comma = rest.find(',');
            const auto field = rest.substr(0, comma);
            if (field.empty()) throw CorruptError("CSV: frame row has too few values");
            row[i] = parse_float(field, "magnitude");
            if (comma == std::string_view::npos) {
                if (i != ds.sc - 1) throw CorruptError("CSV: frame row has too few values");
                rest = {};
            } else {
                rest = rest.substr(comma + 1);
            }
        }
        if (!rest.empty()) throw CorruptError("CSV: frame row has too many values");
        rows.push_back(std::move(row));
    }

    ds.frames.resize(static_cast<int>(rows.size()), ds.sc);
    for (std::size_t j = 0; j < rows.size(); ++j) ds.frames.row(static_cast<int>(j)) = rows[j].transpose();
    check_magnitudes(ds.frames);
    return ds;
}

void save_dataset_csv(const CsiDataset& dataset, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw FormatError("cannot open " + path.string() + " for writing");
    out << "sc,label,tag\n";
    out << dataset.sc << ',' << int(dataset.label.raw) << ',' << dataset.scenario_tag << '\n';
    std::ostringstream row;
    row.precision(9); // round-trips float32 exactly
    for (int j = 0; j < dataset.frame_count(); ++j) {
        row.str({});
        for (int i = 0; i < dataset.sc; ++i) {
            if (i > 0) row << ',';
            row << dataset.frames(j, i);
        }
        out << row.str() << '\n';
    }
    if (!out) throw CorruptError("write failed for " + path.string());
}

} // namespace csit
