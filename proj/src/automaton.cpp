#include "episcreen/automaton.hpp"

#include <algorithm>
#include <stdexcept>

namespace episcreen {

namespace {

inline bool has_event(const std::vector<EventId>& slot, EventId e) {
    return std::binary_search(slot.begin(), slot.end(), e);
}

// One timestamp of the minimal-occurrence scan. starts[j] is the source-exit
// time of the single tracked instance now in state j (-1 when vacant); per
// state only the latest start is kept, which is exactly what minimality needs.
// States run high to low so an instance advances at most once per timestamp.
template <typename Emit>
inline void scan_step(const EventSequence& seq, const Episode& alpha, int delta, Timestamp t,
                      std::vector<Timestamp>& starts, Emit&& emit) {
    const int k = alpha.length();
    const auto& slot = seq.slot(t);
    for (int j = k - 1; j >= 1; --j) {
        if (starts[static_cast<size_t>(j)] < 0) continue;
        if (!has_event(slot, alpha.events[static_cast<size_t>(j)])) continue;
        const Timestamp s = starts[static_cast<size_t>(j)];
        starts[static_cast<size_t>(j)] = -1;
        if (t - s >= delta) continue;  // expired: no completion can satisfy e-s < delta
        if (j + 1 == k) {
            emit(Window{s, t});  // complete and die; the next window needs a later start
        } else {
            starts[static_cast<size_t>(j + 1)] = s;  // displaces an older occupant, if any
        }
    }
    if (has_event(slot, alpha.events[0])) {
        if (k == 1) {
            emit(Window{t, t});
        } else {
            starts[1] = t;  // fresh instance, always the latest start in its state
        }
    }
}

}  // namespace

int EpisodeAutomaton::transition(int state, const std::vector<EventId>& eset) const {
    if (state < 0 || state >= sink()) throw std::logic_error("transition called on sink or bad state");
    if (has_event(eset, episode->events[static_cast<size_t>(state)])) return state + 1;
    return state;
}

std::vector<Window> minimal_occurrences(const EventSequence& seq, const Episode& alpha, int delta) {
    if (delta < 1) throw std::invalid_argument("delta must be >= 1");
    std::vector<Window> out;
    if (alpha.empty()) return out;
    std::vector<Timestamp> starts(static_cast<size_t>(alpha.length()), -1);
    for (Timestamp t = 1; t <= seq.n; ++t) {
        if (seq.slot(t).empty()) continue;
        scan_step(seq, alpha, delta, t, starts, [&](Window w) { out.push_back(w); });
    }
    return out;
}

PostingIndex::PostingIndex(const EventSequence& seq) {
    by_event.resize(static_cast<size_t>(seq.alphabet.size()));
    for (Timestamp t = 1; t <= seq.n; ++t) {
        for (EventId e : seq.slot(t)) by_event[static_cast<size_t>(e)].push_back(t);
    }
}

long long support_via_postings(const EventSequence& seq, const PostingIndex& index,
                               const Episode& alpha, int delta) {
    if (delta < 1) throw std::invalid_argument("delta must be >= 1");
    if (alpha.empty()) return 0;

    // Only timestamps holding one of the episode's events can change scan
    // state (advances, completions and expiry checks all happen on a match).
    std::vector<Timestamp> candidates;
    for (EventId e : alpha.alphabet_of) {
        if (e >= 0 && static_cast<size_t>(e) < index.by_event.size()) {
            const auto& p = index.by_event[static_cast<size_t>(e)];
            candidates.insert(candidates.end(), p.begin(), p.end());
        }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    long long count = 0;
    std::vector<Timestamp> starts(static_cast<size_t>(alpha.length()), -1);
    for (Timestamp t : candidates) {
        scan_step(seq, alpha, delta, t, starts, [&](Window) { ++count; });
    }
    return count;
}

}  // namespace episcreen
