#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "csit/dcae.hpp"
#include "csit/density.hpp"

namespace csit {

enum class Decision { TamperFree, Tampering };

struct Verdict {
    Decision decision = Decision::TamperFree;
    double statistic = 0.0;      // mean pairwise distance (methods 1-2) or eta (method 3)
    double threshold_used = 0.0;
};

// Offline-phase artifact: trained DCAE, the tamper-free anomaly-score pdf,
// and the online decision parameters.
struct DetectorProfile {
    DcaeModel model;
    AnomalyPdf offline_pdf;
    double eta_threshold = 0.5;
    std::uint32_t window_n_on = 1000;
};

// Mean Euclidean distance over all (offline frame, online frame) pairs.
// Rows are frames; accumulation is in double, pair order fixed.
double mean_pairwise_distance(const Eigen::MatrixXf& off_rows, const Eigen::MatrixXf& on_rows);

// Method 1: raw-CSI distance with a threshold. TamperFree iff the mean
// distance is <= threshold (ties favor no alarm).
Verdict method1_decide(const CsiDataset& h_off, const CsiDataset& h_on, double threshold);

// Method 2: the method-1 rule applied to DCAE reconstruction errors.
Verdict method2_decide(const DcaeModel& model, const CsiDataset& h_off, const CsiDataset& h_on,
                       double threshold);

// Method 3 offline phase: trains the DCAE on tamper-free data, scores every
// training frame, and fits the anomaly-score pdf.
DetectorProfile method3_offline(const CsiDataset& dataset, const DcaeConfig& dcae_cfg,
                                const TrainConfig& train_cfg,
                                std::optional<double> kde_bandwidth = 1.0,
                                std::uint32_t window_n_on = 1000);

// Same, but with an already-trained model (reused by the evaluation harness).
DetectorProfile make_profile(DcaeModel model, const CsiDataset& train_set,
                             std::optional<double> kde_bandwidth = 1.0,
                             std::uint32_t window_n_on = 1000, double eta_threshold = 0.5);

// Overlap between the stored pdf and the pdf of the window's scores. The
// online KDE reuses the offline bandwidth so both densities see the same
// smoothing. Uses exactly the most recent window_n_on frames.
double method3_eta(const DetectorProfile& profile, const CsiDataset& window);

// Method 3 online phase: TamperFree iff eta >= eta_threshold.
Verdict method3_online(const DetectorProfile& profile, const CsiDataset& window);

// Profile persistence ("TPRF" magic): model block, pdf block, eta threshold,
// window size.
void save_profile(const DetectorProfile& profile, const std::filesystem::path& path);
DetectorProfile load_profile(const std::filesystem::path& path);

} // namespace csit
