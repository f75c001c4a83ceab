#pragma once

#include <optional>

#include <Eigen/Dense>

#include "csit/errors.hpp"

namespace csit {

// Gaussian kernel density estimate of an anomaly-score distribution:
//   f(a) = 1/(N h) * sum_j phi((a - a_j) / h).
// Samples are kept in float32 (matching the persisted form); evaluation runs
// in double.
struct AnomalyPdf {
    Eigen::VectorXf samples;
    double bandwidth = 1.0;
};

// `auto` bandwidth resolves to Scott's rule at fit time.
inline constexpr std::optional<double> kAutoBandwidth = std::nullopt;

// Fits a KDE. An explicit bandwidth must be positive; std::nullopt resolves
// to Scott's rule h = std * N^(-1/5) (sample std, floored at 1e-6).
AnomalyPdf fit_kde(const Eigen::VectorXd& scores, std::optional<double> bandwidth = 1.0);

// Exact mixture-of-Gaussians evaluation on a grid, O(N x G).
Eigen::VectorXd eval_pdf(const AnomalyPdf& pdf, const Eigen::VectorXd& grid);
double eval_pdf(const AnomalyPdf& pdf, double at);

// Overlapping index eta = integral of min(f_p, f_q): 1 for identical
// distributions, 0 for disjoint ones. Trapezoidal rule on a uniform grid
// spanning the joint sample range padded by 5 bandwidths; clamped to [0, 1].
double overlapping_index(const AnomalyPdf& p, const AnomalyPdf& q, int grid_points = 2048);

} // namespace csit
