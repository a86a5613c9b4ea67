#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace latsec::rng {

// Counter-based generation: every random quantity is a pure function of
// (seed, trial, stream, slot), so trials can run on any schedule, in any
// order, and still reproduce bit for bit.

/// SplitMix64 finalizer; full-avalanche 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// One word of the keyed counter stream.
constexpr std::uint64_t word(std::uint64_t seed, std::uint64_t trial,
                             std::uint64_t stream, std::uint64_t slot) {
    std::uint64_t h = mix64(seed);
    h = mix64(h ^ trial);
    h = mix64(h ^ stream);
    h = mix64(h ^ slot);
    return h;
}

/// Uniform double in (0, 1] (never 0, safe under log).
inline double uniform01(std::uint64_t w) {
    return (static_cast<double>(w >> 11) + 1.0) * 0x1.0p-53;
}

/// Uniform integer in [lo, hi).
inline std::int64_t uniform_int(std::uint64_t w, std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<double>(hi - lo);
    auto offset = static_cast<std::int64_t>(uniform01(w) * span);
    if (offset >= hi - lo) {
        offset = hi - lo - 1;  // uniform01 can hit 1.0 exactly
    }
    return lo + offset;
}

/// Standard normal pair via Box-Muller from two stream words.
inline std::pair<double, double> gaussian_pair(std::uint64_t w1, std::uint64_t w2) {
    const double u1 = uniform01(w1);
    const double u2 = uniform01(w2);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

}  // namespace latsec::rng
