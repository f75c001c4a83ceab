#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "csit/csi_data.hpp"
#include "csit/nn.hpp"

namespace csit {

// One encoder stage: conv with `filters` kernels of length `kernel_len`
// (ReLU), then max pooling by `pool`. The decoder mirrors the sequence in
// reverse with upsampling in place of pooling.
struct DcaeLayerSpec {
    int filters = 10;
    int kernel_len = 1;
    int pool = 2;
};

struct DcaeConfig {
    std::string name = "custom";
    int input_len = 200;
    std::vector<DcaeLayerSpec> layers;

    static DcaeConfig dcae1(int sc = 200) {
        return {"dcae1", sc, {{10, 52, 2}, {10, 26, 2}, {10, 1, 2}}};
    }
    static DcaeConfig dcae2(int sc = 200) {
        return {"dcae2", sc, {{10, 104, 2}, {10, 52, 2}, {10, 26, 2}, {10, 1, 2}}};
    }

    // Per-stage lengths: input_len followed by each floor(len / pool).
    std::vector<int> encoder_lengths() const;
};

// Convolutional autoencoder plus the normalization frozen at training time.
// Inference is pure; clone the model per thread if reconstructing in parallel.
struct DcaeModel {
    DcaeConfig config;
    nn::Stack<float> net;
    NormParams norm; // empty until train() runs
    std::uint64_t rng_seed = 0;

    int sc() const { return config.input_len; }
};

struct TrainConfig {
    int epochs = 20;
    int batch_size = 100;
    float learning_rate = 0.001f;
    std::uint64_t seed = 0;
    bool shuffle = true;
};

// Reconstruction errors, one row per frame: normalized(frame) - reconstruction.
using ErrorMatrix = Eigen::MatrixXf;

// Builds an initialized model. Weights depend only on (config, seed).
// Throws ConfigError when pooling collapses the latent length below 1.
DcaeModel build_dcae(const DcaeConfig& config, std::uint64_t seed);

// Trains on a tamper-free dataset: fits the normalizer, then runs
// epochs x batches of Adam on the reconstruction MSE. Returns the mean batch
// MSE per epoch. Deterministic given (model seed, cfg.seed).
std::vector<double> train(DcaeModel& model, const CsiDataset& dataset, const TrainConfig& cfg);

// Trains `k` models from consecutive seeds and keeps the one with the lowest
// final-epoch loss. Convenience for seed sensitivity; k is typically small.
DcaeModel train_best(const DcaeConfig& config, const CsiDataset& dataset, const TrainConfig& cfg,
                     int k, std::vector<double>* best_history = nullptr);

// Full encoder -> decoder -> dense pass on one frame. The input is normalized
// with the model's stored params; the output lives in the normalized (0,1)
// domain.
CsiFrame reconstruct(const DcaeModel& model, const CsiFrame& frame);

// Row j = normalized(frame j) - reconstruct(frame j).
ErrorMatrix reconstruction_errors(const DcaeModel& model, const CsiDataset& dataset);

// Per-frame anomaly score: Euclidean norm of each error row.
Eigen::VectorXd anomaly_scores(const ErrorMatrix& errors);

// Binary persistence ("DCAE" magic). A loaded model reproduces bitwise
// identical reconstructions.
void save_model(const DcaeModel& model, const std::filesystem::path& path);
DcaeModel load_model(const std::filesystem::path& path);
void write_model(const DcaeModel& model, std::ostream& out);
DcaeModel read_model(std::istream& in);

} // namespace csit
