#include "episcreen/synth.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>

#include "episcreen/rng.hpp"

namespace episcreen {

namespace {

void insert_event(std::vector<std::vector<EventId>>& slots, int t, EventId e) {
    auto& slot = slots[static_cast<size_t>(t - 1)];
    if (std::find(slot.begin(), slot.end(), e) == slot.end()) slot.push_back(e);
}

// Positive integer gap: round a normal draw, redraw anything below 1.
int draw_gap(rng::Engine& gen, double mean, double std) {
    while (true) {
        const long long v = std::llround(rng::normal(gen, mean, std));
        if (v >= 1) return static_cast<int>(v);
    }
}

}  // namespace

SynResult generate_syn(const SynConfig& cfg) {
    if (cfg.n < 1) throw std::invalid_argument("n must be >= 1");
    if (cfg.plant_abc > 0 && cfg.n < 3) throw std::invalid_argument("n too small to fit an abc plant");
    if (cfg.plant_defg > 0 && cfg.n < 4) throw std::invalid_argument("n too small to fit a defg plant");
    if (cfg.p_noise < 0.0 || cfg.p_noise > 1.0) throw std::invalid_argument("p_noise must be in [0,1]");
    if (cfg.fill_prob < 0.0 || cfg.fill_prob > 1.0) throw std::invalid_argument("fill_prob must be in [0,1]");
    if (cfg.gap_std <= 0.0) throw std::invalid_argument("gap_std must be > 0");
    if (cfg.plant_abc < 0 || cfg.plant_defg < 0) throw std::invalid_argument("plant counts must be >= 0");

    SynResult result;
    EventSequence& seq = result.seq;
    seq.n = cfg.n;
    seq.slots.assign(static_cast<size_t>(cfg.n), {});

    // Fixed 52-letter alphabet, interned up front so ids never depend on data.
    for (char c = 'a'; c <= 'z'; ++c) seq.alphabet.intern(std::string(1, c));
    for (char c = 'A'; c <= 'Z'; ++c) seq.alphabet.intern(std::string(1, c));

    const EventId ea = *seq.alphabet.find("a");
    const EventId ex = *seq.alphabet.find("X");

    // Filler pool: everything outside the planted letters and the noise
    // event. That is 44 letters; the pool is derived, not hardcoded.
    std::vector<EventId> filler;
    for (EventId e = 0; e < seq.alphabet.size(); ++e) {
        const std::string& label = seq.alphabet.label(e);
        if (label.size() == 1 && label[0] >= 'a' && label[0] <= 'g') continue;
        if (e == ex) continue;
        filler.push_back(e);
    }

    rng::Engine gen(cfg.seed);

    // Draw order is part of the format contract: abc plants, defg plants,
    // then one X pass and one filler pass over the timestamps.
    for (int i = 0; i < cfg.plant_abc; ++i) {
        const int t = static_cast<int>(rng::uniform_int(gen, 1, cfg.n - 2));
        insert_event(seq.slots, t, ea);
        insert_event(seq.slots, t + 1, ea + 1);
        insert_event(seq.slots, t + 2, ea + 2);
        result.abc_starts.push_back(t);
    }
    for (int i = 0; i < cfg.plant_defg; ++i) {
        // The whole placement (start and gaps) is redrawn when it overruns n.
        while (true) {
            const int t0 = static_cast<int>(rng::uniform_int(gen, 1, cfg.n));
            const int g1 = draw_gap(gen, cfg.gap_mean, cfg.gap_std);
            const int g2 = draw_gap(gen, cfg.gap_mean, cfg.gap_std);
            const int g3 = draw_gap(gen, cfg.gap_mean, cfg.gap_std);
            const long long last = static_cast<long long>(t0) + g1 + g2 + g3;
            if (last > cfg.n) continue;
            const std::array<int, 4> pos{t0, t0 + g1, t0 + g1 + g2, static_cast<int>(last)};
            for (int p = 0; p < 4; ++p) insert_event(seq.slots, pos[static_cast<size_t>(p)], ea + 3 + p);
            result.defg_positions.push_back(pos);
            break;
        }
    }
    for (int t = 1; t <= cfg.n; ++t) {
        if (rng::bernoulli(gen, cfg.p_noise)) insert_event(seq.slots, t, ex);
    }
    for (int t = 1; t <= cfg.n; ++t) {
        if (rng::bernoulli(gen, cfg.fill_prob)) {
            const EventId e = filler[static_cast<size_t>(
                rng::uniform_int(gen, 0, static_cast<std::int64_t>(filler.size()) - 1))];
            insert_event(seq.slots, t, e);
        }
    }

    for (auto& slot : seq.slots) std::sort(slot.begin(), slot.end());

    std::vector<Episode> patterns;
    patterns.push_back(Episode::of({ea, ea + 1, ea + 2}));
    patterns.push_back(Episode::of({ea + 3, ea + 4, ea + 5, ea + 6}));
    result.truth = ground_truth(patterns, seq.alphabet);
    return result;
}

std::vector<Episode> ground_truth(const std::vector<Episode>& patterns, const Alphabet& alphabet) {
    // Distinct label sequences of every order-preserving selection of at
    // least two positions. std::set gives label order and dedupes overlaps.
    std::set<std::vector<std::string>> seen;
    for (const Episode& pattern : patterns) {
        const int k = pattern.length();
        if (k > 20) throw std::invalid_argument("pattern too long");
        for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
            if (std::popcount(mask) < 2) continue;
            std::vector<std::string> labels;
            for (int j = 0; j < k; ++j) {
                if ((mask >> j) & 1u) labels.push_back(alphabet.label(pattern.events[static_cast<size_t>(j)]));
            }
            seen.insert(std::move(labels));
        }
    }
    std::vector<Episode> out;
    for (const auto& labels : seen) {
        std::vector<EventId> events;
        for (const std::string& label : labels) events.push_back(*alphabet.find(label));
        out.push_back(Episode::of(std::move(events)));
    }
    return out;
}

}  // namespace episcreen
