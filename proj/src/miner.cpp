#include "episcreen/miner.hpp"

#include <algorithm>

namespace episcreen {

namespace {

struct DfsState {
    const EventSequence* seq;
    const PostingIndex* index;
    long long min_sup;
    int delta;
    int max_len;
    std::vector<EventId> frequent_events;  // extension candidates, label order
    std::vector<MinedEpisode>* out;
};

void extend(DfsState& st, std::vector<EventId>& current) {
    if (static_cast<int>(current.size()) >= st.max_len) return;
    for (EventId e : st.frequent_events) {
        current.push_back(e);
        Episode candidate = Episode::of(current);
        const long long sup = support_via_postings(*st.seq, *st.index, candidate, st.delta);
        if (sup >= st.min_sup) {
            if (candidate.length() >= 2 && candidate.alphabet_of.size() > 1) {
                st.out->push_back({candidate, sup});
            }
            extend(st, current);
        }
        current.pop_back();
    }
}

}  // namespace

std::vector<MinedEpisode> mine_frequent(const EventSequence& seq, long long min_sup, int delta,
                                        int max_len) {
    if (min_sup < 1) throw std::invalid_argument("min_sup must be >= 1");
    if (delta < 1) throw std::invalid_argument("delta must be >= 1");
    if (max_len < 2) throw std::invalid_argument("max_len must be >= 2");

    PostingIndex index(seq);

    // Frequent single events seed the search. For a 1-episode every occurrence
    // timestamp is its own minimal window, so support is the event support.
    std::vector<EventId> frequent;
    for (EventId e = 0; e < seq.alphabet.size(); ++e) {
        if (event_support(seq, e) >= min_sup) frequent.push_back(e);
    }
    std::sort(frequent.begin(), frequent.end(), [&](EventId x, EventId y) {
        return seq.alphabet.label(x) < seq.alphabet.label(y);
    });

    std::vector<MinedEpisode> out;
    DfsState st{&seq, &index, min_sup, delta, max_len, frequent, &out};
    std::vector<EventId> current;
    for (EventId e : frequent) {
        current.push_back(e);
        extend(st, current);
        current.pop_back();
    }

    std::sort(out.begin(), out.end(), [&](const MinedEpisode& x, const MinedEpisode& y) {
        return episode_label_less(x.episode, y.episode, seq.alphabet);
    });
    return out;
}

std::vector<MinedEpisode> top_k_by_support(const EventSequence& seq,
                                           const std::vector<MinedEpisode>& mined, int k) {
    if (k < 0) throw std::invalid_argument("k must be >= 0");
    std::vector<MinedEpisode> sorted = mined;
    std::sort(sorted.begin(), sorted.end(), [&](const MinedEpisode& x, const MinedEpisode& y) {
        if (x.support != y.support) return x.support > y.support;
        return episode_label_less(x.episode, y.episode, seq.alphabet);
    });
    if (static_cast<size_t>(k) < sorted.size()) sorted.resize(static_cast<size_t>(k));
    return sorted;
}

}  // namespace episcreen
