#include "csit/density.hpp"

#include <algorithm>
#include <cmath>

namespace csit {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779;

} // namespace

AnomalyPdf fit_kde(const Eigen::VectorXd& scores, std::optional<double> bandwidth) {
    if (scores.size() == 0) throw EmptyInputError("fit_kde: no scores");

    double h;
    if (bandwidth.has_value()) {
        h = *bandwidth;
        if (!(h > 0.0)) throw DomainError("fit_kde: bandwidth must be positive");
    } else {
        // Scott's rule with the (N-1)-normalized sample std.
        const double n = static_cast<double>(scores.size());
        double sd = 0.0;
        if (scores.size() > 1) {
            const double mean = scores.mean();
            sd = std::sqrt((scores.array() - mean).square().sum() / (n - 1.0));
        }
        h = std::max(sd * std::pow(n, -0.2), 1e-6);
    }

    AnomalyPdf pdf;
    pdf.samples = scores.cast<float>();
    pdf.bandwidth = h;
    return pdf;
}

double eval_pdf(const AnomalyPdf& pdf, double at) {
    const double h = pdf.bandwidth;
    double acc = 0.0;
    for (std::ptrdiff_t j = 0; j < pdf.samples.size(); ++j) {
        const double z = (at - static_cast<double>(pdf.samples[j])) / h;
        acc += std::exp(-0.5 * z * z);
    }
    return acc * kInvSqrt2Pi / (static_cast<double>(pdf.samples.size()) * h);
}

Eigen::VectorXd eval_pdf(const AnomalyPdf& pdf, const Eigen::VectorXd& grid) {
    if (grid.size() == 0) throw EmptyInputError("eval_pdf: empty grid");
    Eigen::VectorXd out(grid.size());
    for (std::ptrdiff_t i = 0; i < grid.size(); ++i) out[i] = eval_pdf(pdf, grid[i]);
    return out;
}

double overlapping_index(const AnomalyPdf& p, const AnomalyPdf& q, int grid_points) {
    if (p.samples.size() == 0 || q.samples.size() == 0)
        throw EmptyInputError("overlapping_index: unfitted pdf");
    if (grid_points < 2) throw DomainError("overlapping_index: need at least 2 grid points");

    const double pad = 5.0 * std::max(p.bandwidth, q.bandwidth);
    const double lo = std::min(static_cast<double>(p.samples.minCoeff()),
                               static_cast<double>(q.samples.minCoeff())) -
                      pad;
    const double hi = std::max(static_cast<double>(p.samples.maxCoeff()),
                               static_cast<double>(q.samples.maxCoeff())) +
                      pad;

    const double step = (hi - lo) / (grid_points - 1);
    double integral = 0.0;
    double prev = std::min(eval_pdf(p, lo), eval_pdf(q, lo));
    for (int i = 1; i < grid_points; ++i) {
        const double a = lo + step * i;
        const double cur = std::min(eval_pdf(p, a), eval_pdf(q, a));
        integral += 0.5 * (prev + cur) * step;
        prev = cur;
    }
    return std::clamp(integral, 0.0, 1.0);
}

} // namespace csit
