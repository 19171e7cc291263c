#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "episcreen/core.hpp"

namespace episcreen {

// Split of an episode's distinct events into informative (occurrences fixed
// from the original sequence) and random (regenerated independently). Bit i
// of informative_mask refers to alphabet_of[i]. The all-informative split is
// representable for tests but never produced by enumerate_partitions.
struct DualPartition {
    std::uint32_t informative_mask = 0;
    int omega_size = 0;

    bool is_informative(int omega_index) const { return (informative_mask >> omega_index) & 1u; }
    bool is_full() const { return informative_mask == (1u << omega_size) - 1u; }
    int random_count() const;
    std::vector<EventId> informative_events(const Episode& alpha) const;

    friend bool operator==(const DualPartition&, const DualPartition&) = default;
};

// All 2^m - 1 proper informative subsets, ordered by random-set size
// ascending (cheap ones first; per-split cost grows with 2^|random|), ties by
// ascending informative bitmask. The all-random split is the independence
// baseline and comes last.
std::vector<DualPartition> enumerate_partitions(const Episode& alpha);

// Null model for one partition: informative events replayed exactly where
// the original sequence has them, each random event emitted independently at
// every timestamp with its empirical frequency sp(e)/n.
struct GenerativeModel {
    const EventSequence* seq;
    const Episode* alpha;
    DualPartition partition;
    std::vector<double> probs;  // per omega index; only random entries are used
};

GenerativeModel make_model(const EventSequence& seq, const Episode& alpha, DualPartition partition);

// P(event e occurs at t) under the model. e must be one of alpha's events.
double event_gen_prob(const GenerativeModel& model, EventId e, Timestamp t);

// P(the generated slot at t, restricted to the episode alphabet, is exactly
// eset). Zero whenever eset disagrees with the fixed informative events.
double eventset_gen_prob(const GenerativeModel& model, const std::vector<EventId>& eset, Timestamp t);
double eventset_gen_prob_mask(const GenerativeModel& model, std::uint32_t eset_mask, Timestamp t);

// P(a full restricted sequence), the product over its slots. candidate_masks
// holds one omega-subset mask per timestamp.
double random_sequence_prob(const GenerativeModel& model, const std::vector<std::uint32_t>& candidate_masks);

// Optional instrumentation for the exact engine. capture_t > 0 snapshots the
// state-set distribution and the accumulator right after that timestamp.
struct EngineStats {
    double max_mass_drift = 0.0;
    int capture_t = 0;
    std::vector<std::pair<std::uint32_t, double>> captured;  // (state-set mask, mass)
    double captured_accumulator = 0.0;
};

// Exact expected minimal-occurrence count of alpha under the model, with
// unbounded windows. Propagates a probability distribution over sets of
// automaton states; a sink arrival adds the branch mass to a compensated
// accumulator. Random events outside the states' trigger set are summed out
// analytically, so each step enumerates at most 2^|needed random| cases.
double expected_support_exact(const Episode& alpha, const GenerativeModel& model,
                              EngineStats* stats = nullptr);

// Monte Carlo estimate of the same quantity: sample restricted sequences from
// the model and count minimal occurrences. The only mode that can impose a
// window bound on the null side; delta empty means unbounded.
struct McResult {
    double estimate;
    double se;
};
McResult expected_support_mc(const Episode& alpha, const GenerativeModel& model, long long samples,
                             std::uint64_t seed, std::optional<int> delta = std::nullopt);

enum class ScreenMode { Full, EarlyExit };

struct ScreeningRecord {
    Episode episode;
    long long support = 0;
    double exp_sup = 0.0;  // max expectation over evaluated partitions
    double lift = 0.0;     // support / exp_sup; +inf when exp_sup is 0 with support > 0
    bool kept = false;
    std::optional<DualPartition> best_partition;
    std::optional<DualPartition> witness_partition;  // set when screened by early exit
    bool fully_enumerated = false;
};

// Verdict for a single episode. observed_support empty recomputes the
// delta-bounded support from the sequence. Early-exit mode stops at the first
// partition whose expectation E has support/E < min_lift; the final lift can
// only be smaller, so the verdict matches full enumeration.
ScreeningRecord exp_sup(const EventSequence& seq, const Episode& alpha,
                        std::optional<long long> observed_support, int delta, double min_lift,
                        ScreenMode mode);

struct ScreenOptions {
    double min_lift = 1.0;
    int delta = 12;
    int workers = 1;
    ScreenMode mode = ScreenMode::EarlyExit;
    bool ind_baseline = false;  // evaluate only the all-random partition
};

// Verdicts for a whole candidate set. Kept records come first sorted by lift
// descending (ties: support descending, then label order), screened records
// follow under the same key. Episodes are distributed across workers; each
// record is computed identically regardless of schedule, so the output does
// not depend on the worker count.
std::vector<ScreeningRecord> screen(const EventSequence& seq, const std::vector<EpisodeEntry>& episodes,
                                    const ScreenOptions& opts);

}  // namespace episcreen
