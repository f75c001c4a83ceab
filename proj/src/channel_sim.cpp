#include "csit/channel_sim.hpp"

#include <cmath>
#include <complex>
#include <limits>

#include "csit/rng.hpp"

namespace csit {

namespace {

constexpr double kPi = 3.14159265358979323846;

double deg2rad(double d) { return d * kPi / 180.0; }

// Cardioid power pattern of the directional antenna, peak toward the
// orientation angle, null at the back.
double antenna_gain(double angle_deg, double orientation_deg) {
    return 0.5 * (1.0 + std::cos(deg2rad(angle_deg - orientation_deg)));
}

void validate(const SimConfig& c) {
    if (c.sc <= 0) throw ConfigError("sc must be positive");
    if (c.n_paths <= 0) throw ConfigError("n_paths must be positive");
    if (c.path_delays.size() != static_cast<std::size_t>(c.n_paths) ||
        c.path_gains_db.size() != static_cast<std::size_t>(c.n_paths))
        throw ConfigError("path_delays and path_gains_db must have n_paths entries");
    if (!c.path_angles_deg.empty() && c.path_angles_deg.size() != static_cast<std::size_t>(c.n_paths))
        throw ConfigError("path_angles_deg must be empty or have n_paths entries");
    if (c.movement_level < 0.0) throw ConfigError("movement_level must be >= 0");
}

} // namespace

ScenarioPreset scenario_preset(Scenario s) {
    switch (s) {
        case Scenario::A: return {s, 0.2, 1};
        case Scenario::B: return {s, 0.2, 1};
        case Scenario::C: return {s, 0.6, 1};
        case Scenario::D: return {s, 0.6, 1};
        case Scenario::E: return {s, 1.0, 2};
        case Scenario::F: return {s, 1.0, 2};
        case Scenario::G: return {s, 1.4, 3};
    }
    throw DomainError("unknown scenario");
}

Scenario parse_scenario(const std::string& name) {
    if (name.size() == 1 && name[0] >= 'A' && name[0] <= 'G')
        return static_cast<Scenario>(name[0] - 'A');
    throw DomainError("unknown scenario '" + name + "' (expected A..G)");
}

std::string scenario_name(Scenario s) {
    return std::string(1, static_cast<char>('A' + static_cast<int>(s)));
}

double rotation_offset_deg(int rotation_id) {
    if (rotation_id < 0 || rotation_id > DatasetLabel::kMaxRotation)
        throw DomainError("rotation id must be in 0..7, got " + std::to_string(rotation_id));
    return 45.0 * rotation_id;
}

CsiDataset simulate_csi(const SimConfig& config, int n_frames, DatasetLabel label,
                        const std::string& tag) {
    validate(config);
    if (n_frames <= 0) throw EmptyRequestError("simulate_csi: n_frames must be positive");

    const int sc = config.sc;
    const int np = config.n_paths;

    // Static tap geometry: nominal amplitude shaped by the antenna pattern.
    std::vector<double> tap_amp(np);
    for (int k = 0; k < np; ++k) {
        const double angle = config.path_angles_deg.empty()
                                 ? 360.0 * k / np
                                 : config.path_angles_deg[k];
        tap_amp[k] = std::pow(10.0, config.path_gains_db[k] / 20.0) *
                     antenna_gain(angle, config.antenna_orientation_deg);
    }

    // DFT twiddles per (subcarrier, tap): exp(-i 2 pi s tau_k / sc).
    std::vector<std::complex<double>> twiddle(static_cast<std::size_t>(sc) * np);
    for (int s = 0; s < sc; ++s)
        for (int k = 0; k < np; ++k)
            twiddle[static_cast<std::size_t>(s) * np + k] =
                std::polar(1.0, -2.0 * kPi * s * config.path_delays[k] / sc);

    const bool jitter = config.movement_level > 0.0;
    const bool noisy = std::isfinite(config.snr_db);
    const double snr_lin = noisy ? std::pow(10.0, config.snr_db / 10.0) : 0.0;

    Rng rng(config.seed);
    CsiDataset ds;
    ds.sc = sc;
    ds.label = label;
    ds.scenario_tag = tag;
    ds.frames.resize(n_frames, sc);

    std::vector<double> gain(np);
    std::vector<std::complex<double>> h(sc);
    for (int f = 0; f < n_frames; ++f) {
        for (int k = 0; k < np; ++k) {
            const double jitter_db = jitter ? config.movement_level * rng.normal() : 0.0;
            gain[k] = tap_amp[k] * std::pow(10.0, jitter_db / 20.0);
        }

        double power = 0.0;
        for (int s = 0; s < sc; ++s) {
            std::complex<double> acc{0.0, 0.0};
            for (int k = 0; k < np; ++k) acc += gain[k] * twiddle[static_cast<std::size_t>(s) * np + k];
            h[s] = acc;
            power += std::norm(acc);
        }
        power /= sc;

        if (noisy) {
            const double sigma = std::sqrt(power / snr_lin / 2.0);
            for (int s = 0; s < sc; ++s)
                h[s] += std::complex<double>(sigma * rng.normal(), sigma * rng.normal());
        }

        for (int s = 0; s < sc; ++s) ds.frames(f, s) = static_cast<float>(std::abs(h[s]));
    }
    return ds;
}

CsiDataset scenario_dataset(const ScenarioPreset& preset, int rotation_id, int n_frames,
                            std::uint64_t seed, const SimConfig& base) {
    SimConfig cfg = base;
    cfg.movement_level = preset.movement_level;
    cfg.antenna_orientation_deg = base.antenna_orientation_deg + rotation_offset_deg(rotation_id);
    cfg.seed = seed;
    const DatasetLabel label =
        rotation_id == 0 ? DatasetLabel::tamper_free() : DatasetLabel::rotation(rotation_id);
    std::string tag = scenario_name(preset.name);
    if (rotation_id != 0) tag += ",r" + std::to_string(rotation_id);
    return simulate_csi(cfg, n_frames, label, tag);
}

} // namespace csit
