#include "csit/csi_data.hpp"

namespace csit {

NormParams fit_normalizer(const CsiDataset& dataset) {
    if (dataset.empty()) throw EmptyInputError("fit_normalizer: dataset has no frames");
    NormParams p;
    p.per_subcarrier_min = dataset.frames.colwise().minCoeff().transpose();
    p.per_subcarrier_max = dataset.frames.colwise().maxCoeff().transpose();
    return p;
}

Eigen::VectorXf normalize(const Eigen::VectorXf& magnitudes, const NormParams& params) {
    if (magnitudes.size() != params.per_subcarrier_min.size())
        throw ShapeError("normalize: frame length " + std::to_string(magnitudes.size()) +
                         " does not match params length " +
                         std::to_string(params.per_subcarrier_min.size()));
    const auto& lo = params.per_subcarrier_min.array();
    const auto& hi = params.per_subcarrier_max.array();
    // Constant subcarriers (hi == lo) get a zero inverse range and map to 0.
    Eigen::ArrayXf inv_range = (hi > lo).select((hi - lo).inverse(), Eigen::ArrayXf::Zero(lo.size()));
    Eigen::ArrayXf out = (magnitudes.array() - lo) * inv_range;
    return out.max(0.0f).min(1.0f).matrix();
}

CsiFrame normalize(const CsiFrame& frame, const NormParams& params) {
    return {normalize(frame.magnitudes, params), frame.frame_index};
}

Eigen::MatrixXf normalize_frames(const Eigen::MatrixXf& frames, const NormParams& params) {
    if (frames.cols() != params.per_subcarrier_min.size())
        throw ShapeError("normalize_frames: sc mismatch");
    const auto lo = params.per_subcarrier_min.transpose().array().replicate(frames.rows(), 1);
    const auto hi = params.per_subcarrier_max.transpose().array().replicate(frames.rows(), 1);
    Eigen::ArrayXXf inv_range = (hi > lo).select((hi - lo).inverse(), Eigen::ArrayXXf::Zero(frames.rows(), frames.cols()));
    Eigen::ArrayXXf out = (frames.array() - lo) * inv_range;
    return out.max(0.0f).min(1.0f).matrix();
}

} // namespace csit
