#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace csit {

// Seeded random generator with fully specified output mappings.
//
// std::mt19937_64 produces a portable bit stream, but the standard
// distributions are implementation-defined, so uniform and normal variates
// are derived here by hand. Identical seeds give identical streams on any
// platform, which keeps generated datasets and initialized weights stable.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, 1): top 53 bits of the engine output.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Standard normal via Box-Muller (cosine branch only, so one engine
    // draw pair per variate and no hidden cache state).
    double normal() {
        const double u1 = 1.0 - uniform01(); // (0, 1], keeps log() finite
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    }

    // Uniform index in [0, n).
    std::size_t index(std::size_t n) {
        const auto i = static_cast<std::size_t>(uniform01() * static_cast<double>(n));
        return i < n ? i : n - 1;
    }

    std::uint64_t next_u64() { return engine_(); }

private:
    static constexpr double kPi = 3.14159265358979323846;
    std::mt19937_64 engine_;
};

} // namespace csit
