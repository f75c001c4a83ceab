#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "csit/errors.hpp"

namespace csit {

// Label byte shared by the in-memory type and the file format:
// 0 = tamper free, 1..7 = antenna rotation id, 255 = unknown.
struct DatasetLabel {
    static constexpr std::uint8_t kTamperFree = 0;
    static constexpr std::uint8_t kUnknown = 255;
    static constexpr int kMaxRotation = 7;

    std::uint8_t raw = kTamperFree;

    static DatasetLabel tamper_free() { return {kTamperFree}; }
    static DatasetLabel unknown() { return {kUnknown}; }

    static DatasetLabel rotation(int id) {
        if (id < 1 || id > kMaxRotation)
            throw DomainError("rotation id must be in 1..7, got " + std::to_string(id));
        return {static_cast<std::uint8_t>(id)};
    }

    static DatasetLabel from_raw(std::uint8_t b) {
        if (b != kTamperFree && b != kUnknown && (b < 1 || b > kMaxRotation))
            throw DomainError("invalid label byte " + std::to_string(int(b)));
        return {b};
    }

    bool is_tamper_free() const { return raw == kTamperFree; }
    bool is_tampered() const { return raw >= 1 && raw <= kMaxRotation; }

    friend bool operator==(DatasetLabel a, DatasetLabel b) { return a.raw == b.raw; }
};

// Magnitude of the estimated channel response of one frame, one entry per
// subcarrier.
struct CsiFrame {
    Eigen::VectorXf magnitudes;
    std::uint32_t frame_index = 0;
};

// A stack of frames sharing the same subcarrier count. Frames are rows of
// `frames`, in capture order; the row number doubles as the frame index.
struct CsiDataset {
    int sc = 0;
    Eigen::MatrixXf frames; // n_frames x sc
    DatasetLabel label = DatasetLabel::tamper_free();
    std::string scenario_tag;

    int frame_count() const { return static_cast<int>(frames.rows()); }
    bool empty() const { return frames.rows() == 0; }

    CsiFrame frame(int j) const {
        return {frames.row(j).transpose(), static_cast<std::uint32_t>(j)};
    }

    // Dataset made of the most recent n frames (keeps sc/label/tag).
    CsiDataset tail(int n) const {
        CsiDataset out{sc, frames.bottomRows(n), label, scenario_tag};
        return out;
    }
};

// Per-subcarrier min/max over a training set; pins the DCAE input to [0, 1]
// so it is commensurate with the sigmoid output layer.
struct NormParams {
    Eigen::VectorXf per_subcarrier_min;
    Eigen::VectorXf per_subcarrier_max;

    int sc() const { return static_cast<int>(per_subcarrier_min.size()); }
};

// Column-wise min/max over all frames. Throws EmptyInputError on an empty
// dataset. Constant subcarriers end up with max == min.
NormParams fit_normalizer(const CsiDataset& dataset);

// (x - min) / (max - min) clamped to [0, 1]; constant subcarriers map to 0.
// Online frames may exceed the training range, hence the clamp.
Eigen::VectorXf normalize(const Eigen::VectorXf& magnitudes, const NormParams& params);
CsiFrame normalize(const CsiFrame& frame, const NormParams& params);

// Row-wise variant for whole datasets (rows are frames).
Eigen::MatrixXf normalize_frames(const Eigen::MatrixXf& frames, const NormParams& params);

} // namespace csit
