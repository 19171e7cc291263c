#pragma once

#include <vector>

#include "episcreen/automaton.hpp"
#include "episcreen/core.hpp"

namespace episcreen {

struct MinedEpisode {
    Episode episode;
    long long support;
};

// Depth-first enumeration of frequent serial episodes under delta-bounded
// minimal-occurrence support. Output keeps episodes with sp >= min_sup,
// length in [2, max_len] and more than one distinct event; single events are
// extension seeds only. Sorted lexicographically by label sequence.
//
// Pruning: a prefix below min_sup is not extended. Extending a prefix never
// raises support (each extended window contains a window of the prefix), and
// sp(alpha+e) <= sp(e), so extension candidates are the frequent events.
std::vector<MinedEpisode> mine_frequent(const EventSequence& seq, long long min_sup, int delta,
                                        int max_len);

// The k most frequent episodes, ties broken lexicographically by label.
std::vector<MinedEpisode> top_k_by_support(const EventSequence& seq,
                                           const std::vector<MinedEpisode>& mined, int k);

}  // namespace episcreen
