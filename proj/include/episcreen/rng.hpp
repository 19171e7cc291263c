#pragma once

#include <cmath>
#include <cstdint>
#include <random>

// Hand-rolled samplers over mt19937_64 raw output. The engine's bit stream is
// pinned by the standard; std::uniform_int_distribution and friends are not,
// so using them would break same-seed reproducibility across toolchains.
namespace episcreen::rng {

using Engine = std::mt19937_64;

// Uniform double in [0,1), 53 random bits.
inline double uniform01(Engine& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// Uniform integer in [lo, hi], inclusive. Rejection keeps it unbiased.
inline std::int64_t uniform_int(Engine& g, std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return lo + static_cast<std::int64_t>(g());  // full 64-bit range
    const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % span;
    std::uint64_t x;
    do {
        x = g();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
}

inline bool bernoulli(Engine& g, double p) {
    return uniform01(g) < p;
}

// Box-Muller, one value per call (two uniforms consumed, second output
// discarded). Slightly wasteful but keeps the consumption pattern trivial,
// which matters for replaying generator streams.
inline double normal(Engine& g, double mean, double stddev) {
    const double u1 = 1.0 - uniform01(g);  // (0,1], keeps log() finite
    const double u2 = uniform01(g);
    const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    return mean + stddev * z;
}

}  // namespace episcreen::rng
