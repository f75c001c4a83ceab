#include "csit/detectors.hpp"

#include <fstream>
#include <vector>

#include "csit/binio.hpp"
#include "csit/parallel.hpp"

namespace csit {

namespace {

constexpr char kMagic[5] = "TPRF";
constexpr std::uint16_t kVersion = 1;

void check_pair(const CsiDataset& off, const CsiDataset& on) {
    if (off.empty() || on.empty()) throw EmptyInputError("detector: empty frame set");
    if (off.sc != on.sc)
        throw ShapeError("detector: offline sc " + std::to_string(off.sc) + " vs online sc " +
                         std::to_string(on.sc));
}

} // namespace

double mean_pairwise_distance(const Eigen::MatrixXf& off_rows, const Eigen::MatrixXf& on_rows) {
    if (off_rows.rows() == 0 || on_rows.rows() == 0)
        throw EmptyInputError("mean_pairwise_distance: empty frame set");
    if (off_rows.cols() != on_rows.cols())
        throw ShapeError("mean_pairwise_distance: column mismatch");

    // Frames as double columns so each pair difference is one contiguous op.
    const Eigen::MatrixXd off = off_rows.transpose().cast<double>();
    const Eigen::MatrixXd on = on_rows.transpose().cast<double>();

    // Fixed chunk grid over offline frames; partial sums are combined in
    // chunk order so the result is identical for any worker count.
    constexpr std::ptrdiff_t kChunk = 128;
    const int n_chunks = static_cast<int>((off.cols() + kChunk - 1) / kChunk);
    std::vector<double> partial(n_chunks, 0.0);
    parallel_chunks(n_chunks, [&](int chunk) {
        const std::ptrdiff_t i_lo = chunk * kChunk;
        const std::ptrdiff_t i_hi = std::min(i_lo + kChunk, off.cols());
        double sum = 0.0;
        for (std::ptrdiff_t i = i_lo; i < i_hi; ++i)
            for (std::ptrdiff_t j = 0; j < on.cols(); ++j)
                sum += (off.col(i) - on.col(j)).norm();
        partial[chunk] = sum;
    });

    double sum = 0.0;
    for (double s : partial) sum += s;
    return sum / (static_cast<double>(off.cols()) * static_cast<double>(on.cols()));
}

Verdict method1_decide(const CsiDataset& h_off, const CsiDataset& h_on, double threshold) {
    check_pair(h_off, h_on);
    const double stat = mean_pairwise_distance(h_off.frames, h_on.frames);
    return {stat <= threshold ? Decision::TamperFree : Decision::Tampering, stat, threshold};
}

Verdict method2_decide(const DcaeModel& model, const CsiDataset& h_off, const CsiDataset& h_on,
                       double threshold) {
    check_pair(h_off, h_on);
    const ErrorMatrix e_off = reconstruction_errors(model, h_off);
    const ErrorMatrix e_on = reconstruction_errors(model, h_on);
    const double stat = mean_pairwise_distance(e_off, e_on);
    return {stat <= threshold ? Decision::TamperFree : Decision::Tampering, stat, threshold};
}

DetectorProfile method3_offline(const CsiDataset& dataset, const DcaeConfig& dcae_cfg,
                                const TrainConfig& train_cfg, std::optional<double> kde_bandwidth,
                                std::uint32_t window_n_on) {
    DcaeModel model = build_dcae(dcae_cfg, train_cfg.seed);
    train(model, dataset, train_cfg);
    return make_profile(std::move(model), dataset, kde_bandwidth, window_n_on);
}

DetectorProfile make_profile(DcaeModel model, const CsiDataset& train_set,
                             std::optional<double> kde_bandwidth, std::uint32_t window_n_on,
                             double eta_threshold) {
    if (window_n_on < 2) throw ConfigError("window_n_on must be >= 2 (KDE needs spread)");
    if (eta_threshold < 0.0 || eta_threshold > 1.0)
        throw ConfigError("eta_threshold must be in [0, 1]");

    DetectorProfile profile;
    profile.model = std::move(model);
    profile.offline_pdf = fit_kde(anomaly_scores(reconstruction_errors(profile.model, train_set)),
                                  kde_bandwidth);
    profile.eta_threshold = eta_threshold;
    profile.window_n_on = window_n_on;
    return profile;
}

double method3_eta(const DetectorProfile& profile, const CsiDataset& window) {
    if (window.frame_count() < static_cast<int>(profile.window_n_on))
        throw InsufficientDataError("method3: window has " + std::to_string(window.frame_count()) +
                                    " frames, needs " + std::to_string(profile.window_n_on));
    const CsiDataset recent = window.tail(static_cast<int>(profile.window_n_on));
    const Eigen::VectorXd scores = anomaly_scores(reconstruction_errors(profile.model, recent));
    const AnomalyPdf online_pdf = fit_kde(scores, profile.offline_pdf.bandwidth);
    return overlapping_index(profile.offline_pdf, online_pdf);
}

Verdict method3_online(const DetectorProfile& profile, const CsiDataset& window) {
    const double eta = method3_eta(profile, window);
    return {eta >= profile.eta_threshold ? Decision::TamperFree : Decision::Tampering, eta,
            profile.eta_threshold};
}

void save_profile(const DetectorProfile& profile, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot open " + path.string() + " for writing");

    BinWriter w(out);
    w.magic(kMagic);
    w.u16(kVersion);
    write_model(profile.model, out);
    w.u32(static_cast<std::uint32_t>(profile.offline_pdf.samples.size()));
    for (std::ptrdiff_t i = 0; i < profile.offline_pdf.samples.size(); ++i)
        w.f32(profile.offline_pdf.samples[i]);
    w.f64(profile.offline_pdf.bandwidth);
    w.f64(profile.eta_threshold);
    w.u32(profile.window_n_on);

    out.flush();
    if (!out) throw CorruptError("write failed for " + path.string());
}

DetectorProfile load_profile(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path.string());

    BinReader r(in);
    r.expect_magic(kMagic, "detector profile");
    const std::uint16_t version = r.u16();
    if (version != kVersion)
        throw FormatError("unsupported profile version " + std::to_string(version));

    DetectorProfile profile;
    profile.model = read_model(in);
    const std::uint32_t n = r.u32();
    profile.offline_pdf.samples.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) profile.offline_pdf.samples[i] = r.f32();
    profile.offline_pdf.bandwidth = r.f64();
    profile.eta_threshold = r.f64();
    profile.window_n_on = r.u32();
    return profile;
}

} // namespace csit
