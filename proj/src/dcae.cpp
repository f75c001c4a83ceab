#include "csit/dcae.hpp"

#include <fstream>
#include <limits>
#include <numeric>

#include "csit/binio.hpp"
#include "csit/parallel.hpp"

namespace csit {

namespace {

constexpr char kMagic[5] = "DCAE";
constexpr std::uint16_t kVersion = 1;

void validate_config(const DcaeConfig& config) {
    if (config.input_len < 1) throw ConfigError("input_len must be >= 1");
    if (config.layers.empty()) throw ConfigError("at least one encoder layer is required");
    for (const auto& l : config.layers)
        if (l.filters < 1 || l.kernel_len < 1 || l.pool < 1)
            throw ConfigError("every layer needs filters, kernel_len and pool >= 1");
    if (config.encoder_lengths().back() < 1)
        throw ConfigError("latent length collapses below 1; reduce pooling or layers");
}

nn::ConvLayer<float> zero_conv(int filters, int kernel_len, int in_channels) {
    return {filters, kernel_len, in_channels,
            nn::Matrix<float>::Zero(filters, std::ptrdiff_t(in_channels) * kernel_len),
            nn::Vector<float>::Zero(filters), nn::Activation::ReLU};
}

// Stack with the right shapes and zero weights; build_dcae randomizes them,
// read_model fills them from disk.
nn::Stack<float> make_stack(const DcaeConfig& config) {
    const auto lengths = config.encoder_lengths();
    const int n = static_cast<int>(config.layers.size());

    nn::Stack<float> net;
    int in_ch = 1;
    for (int i = 0; i < n; ++i) {
        const auto& l = config.layers[i];
        net.ops.emplace_back(zero_conv(l.filters, l.kernel_len, in_ch));
        net.ops.emplace_back(nn::PoolOp{l.pool});
        in_ch = l.filters;
    }
    // Mirrored decoder: reversed (filters, kernel, pool) sequence, upsampling
    // back to each stage's pre-pool length.
    for (int i = n - 1; i >= 0; --i) {
        const auto& l = config.layers[i];
        net.ops.emplace_back(nn::UpsampleOp{l.pool, lengths[i]});
        net.ops.emplace_back(zero_conv(l.filters, l.kernel_len, in_ch));
        in_ch = l.filters;
    }
    net.ops.emplace_back(nn::FlattenOp{});
    net.ops.emplace_back(nn::DenseLayer<float>{
        nn::Matrix<float>::Zero(config.input_len, std::ptrdiff_t(in_ch) * config.input_len),
        nn::Vector<float>::Zero(config.input_len), nn::Activation::Sigmoid});
    return net;
}

} // namespace

std::vector<int> DcaeConfig::encoder_lengths() const {
    std::vector<int> lengths{input_len};
    for (const auto& l : layers) lengths.push_back(lengths.back() / l.pool);
    return lengths;
}

DcaeModel build_dcae(const DcaeConfig& config, std::uint64_t seed) {
    validate_config(config);
    DcaeModel model;
    model.config = config;
    model.rng_seed = seed;
    model.net = make_stack(config);

    // Draw all weights from one seeded stream, in op order.
    Rng rng(seed);
    for (auto& op : model.net.ops) {
        if (auto* conv = std::get_if<nn::ConvLayer<float>>(&op))
            *conv = nn::make_conv<float>(conv->filters, conv->kernel_len, conv->in_channels,
                                         conv->activation, rng);
        else if (auto* dense = std::get_if<nn::DenseLayer<float>>(&op))
            *dense = nn::make_dense<float>(static_cast<int>(dense->weights.rows()),
                                           static_cast<int>(dense->weights.cols()),
                                           dense->activation, rng);
    }
    return model;
}

namespace {

// Batch of dataset rows as a 1-channel tensor (frame k -> columns
// [k*sc, (k+1)*sc)).
nn::Tensor2<float> rows_to_tensor(const Eigen::MatrixXf& rows, const std::vector<int>& order,
                                  int first, int count) {
    const int sc = static_cast<int>(rows.cols());
    nn::Tensor2<float> t{1, sc, count, nn::Matrix<float>(1, std::ptrdiff_t(count) * sc)};
    for (int k = 0; k < count; ++k)
        t.data.block(0, std::ptrdiff_t(k) * sc, 1, sc) = rows.row(order[first + k]);
    return t;
}

// The same rows in the network's output layout (sc channels, length 1).
nn::Tensor2<float> rows_to_target(const Eigen::MatrixXf& rows, const std::vector<int>& order,
                                  int first, int count) {
    const int sc = static_cast<int>(rows.cols());
    nn::Tensor2<float> t{sc, 1, count, nn::Matrix<float>(sc, count)};
    for (int k = 0; k < count; ++k) t.data.col(k) = rows.row(order[first + k]).transpose();
    return t;
}

} // namespace

std::vector<double> train(DcaeModel& model, const CsiDataset& dataset, const TrainConfig& cfg) {
    if (dataset.empty()) throw EmptyInputError("train: dataset has no frames");
    if (dataset.sc != model.sc())
        throw ShapeError("train: dataset sc " + std::to_string(dataset.sc) +
                         " does not match model sc " + std::to_string(model.sc()));
    if (!dataset.label.is_tamper_free())
        throw DomainError("train: refusing non-tamper-free training data (semi-supervised contract)");
    if (cfg.epochs < 1 || cfg.batch_size < 1)
        throw ConfigError("train: epochs and batch_size must be >= 1");

    model.norm = fit_normalizer(dataset);
    const Eigen::MatrixXf x = normalize_frames(dataset.frames, model.norm);
    const int n = static_cast<int>(x.rows());

    nn::Vector<float> params = nn::gather_params(model.net);
    auto adam = nn::AdamState<float>::for_size(params.size(), cfg.learning_rate);

    Rng shuffle_rng(cfg.seed);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);

    std::vector<double> history;
    history.reserve(cfg.epochs);
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        if (cfg.shuffle) {
            for (int i = n - 1; i > 0; --i)
                std::swap(order[i], order[shuffle_rng.index(static_cast<std::size_t>(i) + 1)]);
        }
        double epoch_loss = 0.0;
        int batches = 0;
        for (int first = 0; first < n; first += cfg.batch_size) {
            const int count = std::min(cfg.batch_size, n - first);
            nn::Tensor2<float> batch = rows_to_tensor(x, order, first, count);
            nn::Tensor2<float> target = rows_to_target(x, order, first, count);

            nn::StackCache<float> cache;
            nn::forward(model.net, batch, &cache);
            epoch_loss += nn::mse_loss(cache.output, target);
            ++batches;

            nn::StackGrads<float> grads = nn::backward(model.net, cache, target);
            nn::adam_update<float>(params, nn::gather_grads(model.net, grads), adam);
            nn::scatter_params(model.net, params);
        }
        history.push_back(epoch_loss / batches);
    }
    return history;
}

DcaeModel train_best(const DcaeConfig& config, const CsiDataset& dataset, const TrainConfig& cfg,
                     int k, std::vector<double>* best_history) {
    if (k < 1) throw ConfigError("train_best: k must be >= 1");
    DcaeModel best;
    std::vector<double> best_hist;
    double best_loss = std::numeric_limits<double>::infinity();
    for (int i = 0; i < k; ++i) {
        DcaeModel candidate = build_dcae(config, cfg.seed + static_cast<std::uint64_t>(i));
        TrainConfig c = cfg;
        c.seed = cfg.seed + static_cast<std::uint64_t>(i);
        std::vector<double> hist = train(candidate, dataset, c);
        if (hist.back() < best_loss) {
            best_loss = hist.back();
            best = std::move(candidate);
            best_hist = std::move(hist);
        }
    }
    if (best_history) *best_history = std::move(best_hist);
    return best;
}

CsiFrame reconstruct(const DcaeModel& model, const CsiFrame& frame) {
    if (frame.magnitudes.size() != model.sc())
        throw ShapeError("reconstruct: frame length does not match model sc");
    if (model.norm.sc() != model.sc())
        throw StateError("reconstruct: model has no normalization params (untrained?)");
    const Eigen::VectorXf normed = normalize(frame.magnitudes, model.norm);
    nn::Tensor2<float> out = nn::forward(model.net, nn::Tensor2<float>::from_vector(normed));
    return {out.data.col(0), frame.frame_index};
}

ErrorMatrix reconstruction_errors(const DcaeModel& model, const CsiDataset& dataset) {
    if (dataset.sc != model.sc())
        throw ShapeError("reconstruction_errors: dataset sc does not match model sc");
    if (model.norm.sc() != model.sc())
        throw StateError("reconstruction_errors: model has no normalization params (untrained?)");

    const Eigen::MatrixXf x = normalize_frames(dataset.frames, model.norm);
    const int n = static_cast<int>(x.rows());
    ErrorMatrix errors(n, model.sc());

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    constexpr int kChunk = 256;
    const int n_chunks = (n + kChunk - 1) / kChunk;
    parallel_chunks(n_chunks, [&](int chunk) {
        const int first = chunk * kChunk;
        const int count = std::min(kChunk, n - first);
        nn::Tensor2<float> batch = rows_to_tensor(x, order, first, count);
        nn::Tensor2<float> out = nn::forward(model.net, batch);
        for (int k = 0; k < count; ++k)
            errors.row(first + k) = x.row(first + k) - out.data.col(k).transpose();
    });
    return errors;
}

Eigen::VectorXd anomaly_scores(const ErrorMatrix& errors) {
    if (errors.rows() == 0) throw EmptyInputError("anomaly_scores: empty error matrix");
    Eigen::VectorXd scores(errors.rows());
    for (int j = 0; j < errors.rows(); ++j)
        scores[j] = errors.row(j).cast<double>().norm();
    return scores;
}

// ---------------------------------------------------------------------------
// Persistence

void write_model(const DcaeModel& model, std::ostream& out) {
    BinWriter w(out);
    w.magic(kMagic);
    w.u16(kVersion);
    w.u64(model.rng_seed);

    w.u16(static_cast<std::uint16_t>(model.config.name.size()));
    w.bytes(model.config.name.data(), model.config.name.size());
    w.u32(static_cast<std::uint32_t>(model.config.input_len));
    w.u32(static_cast<std::uint32_t>(model.config.layers.size()));
    for (const auto& l : model.config.layers) {
        w.u32(static_cast<std::uint32_t>(l.filters));
        w.u32(static_cast<std::uint32_t>(l.kernel_len));
        w.u32(static_cast<std::uint32_t>(l.pool));
    }

    w.u32(static_cast<std::uint32_t>(model.norm.per_subcarrier_min.size()));
    for (std::ptrdiff_t i = 0; i < model.norm.per_subcarrier_min.size(); ++i)
        w.f32(model.norm.per_subcarrier_min[i]);
    for (std::ptrdiff_t i = 0; i < model.norm.per_subcarrier_max.size(); ++i)
        w.f32(model.norm.per_subcarrier_max[i]);

    nn::for_each_param_tensor(const_cast<nn::Stack<float>&>(model.net),
                              [&](const float* p, std::ptrdiff_t size) {
                                  for (std::ptrdiff_t i = 0; i < size; ++i) w.f32(p[i]);
                              });
}

DcaeModel read_model(std::istream& in) {
    BinReader r(in);
    r.expect_magic(kMagic, "DCAE model");
    const std::uint16_t version = r.u16();
    if (version != kVersion)
        throw FormatError("unsupported model version " + std::to_string(version));

    DcaeModel model;
    model.rng_seed = r.u64();

    const std::uint16_t name_len = r.u16();
    model.config.name.resize(name_len);
    if (name_len > 0) r.bytes(model.config.name.data(), name_len);
    model.config.input_len = static_cast<int>(r.u32());
    const std::uint32_t n_layers = r.u32();
    if (n_layers == 0 || n_layers > 64) throw CorruptError("implausible layer count");
    model.config.layers.resize(n_layers);
    for (auto& l : model.config.layers) {
        l.filters = static_cast<int>(r.u32());
        l.kernel_len = static_cast<int>(r.u32());
        l.pool = static_cast<int>(r.u32());
    }
    validate_config(model.config);

    const std::uint32_t norm_len = r.u32();
    if (norm_len != 0 && norm_len != static_cast<std::uint32_t>(model.config.input_len))
        throw CorruptError("normalization length does not match input_len");
    model.norm.per_subcarrier_min.resize(norm_len);
    model.norm.per_subcarrier_max.resize(norm_len);
    for (std::uint32_t i = 0; i < norm_len; ++i) model.norm.per_subcarrier_min[i] = r.f32();
    for (std::uint32_t i = 0; i < norm_len; ++i) model.norm.per_subcarrier_max[i] = r.f32();

    model.net = make_stack(model.config);
    nn::for_each_param_tensor(model.net, [&](float* p, std::ptrdiff_t size) {
        for (std::ptrdiff_t i = 0; i < size; ++i) p[i] = r.f32();
    });
    return model;
}

void save_model(const DcaeModel& model, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot open " + path.string() + " for writing");
    write_model(model, out);
    out.flush();
    if (!out) throw CorruptError("write failed for " + path.string());
}

DcaeModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path.string());
    return read_model(in);
}

} // namespace csit
