#pragma once

#include <cstdint>
#include <vector>

#include "csit/csi_data.hpp"

namespace csit {

// Tapped-delay-line channel with a cardioid transmit antenna pattern.
// Each frame draws fresh per-tap log-normal jitter (environmental movement)
// and AWGN; the underlying tap geometry depends only on the config, so two
// datasets with different seeds sample the same channel.
struct SimConfig {
    int sc = 200;     // subcarriers per frame
    int n_paths = 6;  // taps in the delay line
    std::vector<double> path_delays{0.0, 3.0, 5.0, 8.0, 11.0, 14.0}; // in samples
    std::vector<double> path_gains_db{0.0, -3.0, -6.0, -9.0, -12.0, -15.0};
    std::vector<double> path_angles_deg{}; // empty = evenly spread over 360
    double antenna_orientation_deg = 0.0;  // [0, 360)
    double movement_level = 0.0;           // per-frame tap jitter std, dB; 0 = static
    double snr_db = 30.0;                  // +inf disables noise
    std::uint64_t seed = 0;
};

// Environmental scenarios mirroring increasing occupancy: A/B one person
// sitting, C/D one walking, E/F two walking, G three walking.
enum class Scenario { A, B, C, D, E, F, G };

struct ScenarioPreset {
    Scenario name = Scenario::A;
    double movement_level = 0.2;
    int occupancy = 1;
};

ScenarioPreset scenario_preset(Scenario s);
Scenario parse_scenario(const std::string& name); // "A".."G"
std::string scenario_name(Scenario s);

// Rotation ids r1..r7 map to azimuth offsets 45, 90, ..., 315 degrees;
// id 0 is the tamper-free default orientation.
double rotation_offset_deg(int rotation_id);

// Generates n_frames magnitude frames |H| for the configured channel.
// Deterministic for a given (config, n_frames). Throws EmptyRequestError
// when n_frames == 0.
CsiDataset simulate_csi(const SimConfig& config, int n_frames,
                        DatasetLabel label = DatasetLabel::unknown(),
                        const std::string& tag = {});

// simulate_csi with the preset's movement level and a rotation id
// (0 = default orientation -> TamperFree, 1..7 -> Tampered).
CsiDataset scenario_dataset(const ScenarioPreset& preset, int rotation_id, int n_frames,
                            std::uint64_t seed, const SimConfig& base = SimConfig{});

} // namespace csit
