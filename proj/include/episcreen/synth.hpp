#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "episcreen/core.hpp"

namespace episcreen {

// Benchmark generator config. Two patterns are planted into background noise:
// "abc" at consecutive timestamps and "defg" with random positive gaps. A
// high-frequency noise event X rides along, plus uniform filler letters.
struct SynConfig {
    int n = 10000;
    int plant_abc = 300;
    int plant_defg = 300;
    double gap_mean = 2.0;
    double gap_std = 2.0;
    double p_noise = 0.3;     // per-timestamp probability of the X event
    double fill_prob = 0.99;  // per-timestamp probability of one filler letter
    std::uint64_t seed = 1;
};

struct SynResult {
    EventSequence seq;
    std::vector<Episode> truth;            // over seq.alphabet ids
    std::vector<int> abc_starts;           // plant audit trail, for tests
    std::vector<std::array<int, 4>> defg_positions;
};

// Deterministic per seed: one RNG stream, fixed draw order (abc plants, defg
// plants, X per timestamp, filler per timestamp). Slots are sets, so
// colliding placements dedupe.
SynResult generate_syn(const SynConfig& cfg);

// All distinct subepisodes of length >= 2 of the given patterns, label order.
// For abc and defg that is 4 + 11 = 15 episodes.
std::vector<Episode> ground_truth(const std::vector<Episode>& patterns, const Alphabet& alphabet);

}  // namespace episcreen
