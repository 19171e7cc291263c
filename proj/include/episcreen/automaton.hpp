#pragma once

#include <vector>

#include "episcreen/core.hpp"

namespace episcreen {

// Prefix automaton of a serial episode of length k. States 0..k; state j
// means "first j events matched". Source = 0, sink = k. A state advances at
// most once per timestamp, so occurrence timestamps are strictly increasing.
struct EpisodeAutomaton {
    const Episode* episode;

    explicit EpisodeAutomaton(const Episode& ep) : episode(&ep) {}

    int sink() const { return episode->length(); }

    // Returns state+1 when the event needed next is in eset (sorted ids),
    // else state unchanged. Calling on the sink is a logic error.
    int transition(int state, const std::vector<EventId>& eset) const;
};

// All minimal occurrence windows [s,e] with e-s < delta, sorted by end time.
// A window is minimal when it contains an occurrence and no proper sub-window
// does. The count of this list is the observed support sp(alpha).
std::vector<Window> minimal_occurrences(const EventSequence& seq, const Episode& alpha, int delta);

// Per-event occurrence lists, built once and shared by the miner so repeated
// support counts skip timestamps with no relevant events.
struct PostingIndex {
    std::vector<std::vector<Timestamp>> by_event;

    explicit PostingIndex(const EventSequence& seq);
};

// Same result as minimal_occurrences(...).size() but scans only timestamps
// holding events of alpha. Kept separate so tests can pit the two paths
// against each other.
long long support_via_postings(const EventSequence& seq, const PostingIndex& index,
                               const Episode& alpha, int delta);

}  // namespace episcreen
