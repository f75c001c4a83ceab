#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "csit/detectors.hpp"

namespace csit {

// Whether larger statistics indicate tampering (methods 1-2, distances) or
// smaller ones do (method 3, overlap).
enum class Direction { HigherIsPositive, LowerIsPositive };

// Operating points swept over every distinct statistic value plus +-inf
// sentinels. Starts at (0,0), ends at (1,1), both rates non-decreasing.
struct RocCurve {
    std::vector<double> fpr;
    std::vector<double> tpr;
    std::vector<double> thresholds;

    std::size_t size() const { return fpr.size(); }
};

// labels: 1 = positive (tampered), 0 = negative (tamper-free). Samples equal
// to a threshold count as TamperFree, matching the detectors' tie rule.
// Throws DegenerateLabelsError unless both classes are present.
RocCurve roc_curve(const std::vector<double>& statistics, const std::vector<int>& labels,
                   Direction direction);

// Trapezoidal area under the curve.
double auc(const RocCurve& curve);

// Largest TPR among operating points with FPR exactly 0.
double tpr_at_fpr0(const RocCurve& curve);

struct MethodResult {
    std::string method;
    double auc = 0.0;
    double tpr_at_fpr0 = 0.0;
    RocCurve curve;
};

struct CompareConfig {
    std::vector<DcaeConfig> presets; // first drives methods 2 and 3; extras add method-3 rows
    TrainConfig train_cfg;
    std::optional<double> kde_bandwidth = 1.0;
    int window = 1000; // frames per evaluation window, stride = window
};

// Runs the three methods over non-overlapping windows of the two test sets
// and reports ROC/AUC per method plus the TPR at the zero-false-alarm
// operating point. Train and test sets must be disjoint captures.
std::vector<MethodResult> compare_methods(const CsiDataset& train_set,
                                          const CsiDataset& test_tamper_free,
                                          const CsiDataset& test_tampered,
                                          const CompareConfig& config);

void write_results_csv(const std::vector<MethodResult>& results, const std::filesystem::path& path);
void write_roc_svg(const std::vector<MethodResult>& results, const std::filesystem::path& path);

} // namespace csit
