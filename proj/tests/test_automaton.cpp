#include <doctest.h>

#include <stdexcept>

#include "episcreen/automaton.hpp"
#include "episcreen/core.hpp"
#include "episcreen/rng.hpp"
#include "oracles.hpp"

using namespace episcreen;

namespace {

const char* kTiny =
    "# length=5\n"
    "1\ta\n"
    "2\tb\n"
    "3\ta,c\n"
    "4\tb\n"
    "5\tc\n";

const char* kRef =
    "# length=10\n"
    "1\ta\n"
    "2\ta,b\n"
    "3\tb,d\n"
    "4\tc\n"
    "5\tc,d\n"
    "6\tc\n"
    "7\ta,c\n"
    "8\tb,d\n"
    "10\tc\n";

}  // namespace

TEST_CASE("transition advances only on the event needed next") {
    Alphabet a;
    const Episode ab = parse_episode("a->b", a);
    const EpisodeAutomaton m(ab);
    CHECK(m.sink() == 2);
    CHECK(m.transition(0, {0}) == 1);       // a
    CHECK(m.transition(0, {1}) == 0);       // b alone does not start
    CHECK(m.transition(1, {0}) == 1);       // repeated a keeps waiting for b
    CHECK(m.transition(1, {0, 1}) == 2);    // b completes
    CHECK(m.transition(0, {}) == 0);
    CHECK_THROWS_AS((void)m.transition(2, {0}), std::logic_error);
    CHECK_THROWS_AS((void)m.transition(-1, {0}), std::logic_error);
}

TEST_CASE("transition on a repeated-event episode") {
    Alphabet al;
    const Episode aab = parse_episode("a->a->b", al);
    const EpisodeAutomaton m(aab);
    // after one a, the next a advances even when b arrives in the same slot
    CHECK(m.transition(1, {0, 1}) == 2);
    CHECK(m.transition(2, {0, 1}) == 3);
    CHECK(m.transition(2, {0}) == 2);
}

TEST_CASE("minimal windows on the worked examples") {
    EventSequence tiny = parse_sequence(kTiny);
    EventSequence ref = parse_sequence(kRef);
    const Episode ab = parse_episode("a->b", tiny.alphabet);
    CHECK(minimal_occurrences(tiny, ab, 5) == std::vector<Window>{{1, 2}, {3, 4}});
    const Episode abc = parse_episode("a->b->c", ref.alphabet);
    CHECK(minimal_occurrences(ref, abc, 4) == std::vector<Window>{{2, 4}, {7, 10}});
}

TEST_CASE("minimal window edge cases") {
    EventSequence tiny = parse_sequence(kTiny);
    const Episode ab = parse_episode("a->b", tiny.alphabet);
    CHECK_THROWS_AS((void)minimal_occurrences(tiny, ab, 0), std::invalid_argument);
    CHECK(minimal_occurrences(tiny, Episode::of({}), 5).empty());
    // delta = 1 demands same-timestamp completion, impossible for k >= 2
    CHECK(minimal_occurrences(tiny, ab, 1).empty());
    // single-event episodes: one window per containing slot
    const Episode just_a = parse_episode("a", tiny.alphabet);
    CHECK(minimal_occurrences(tiny, just_a, 1) == std::vector<Window>{{1, 1}, {3, 3}});
}

TEST_CASE("single-event support equals event support at any delta") {
    rng::Engine g(11);
    for (int it = 0; it < 50; ++it) {
        const EventSequence seq = oracle::random_sequence(g, rng::uniform_int(g, 1, 12), 3, 0.4);
        const Episode single = Episode::of({static_cast<EventId>(rng::uniform_int(g, 0, 2))});
        const int delta = rng::uniform_int(g, 1, 14);
        CHECK(static_cast<int>(minimal_occurrences(seq, single, delta).size()) ==
              event_support(seq, single.events[0]));
    }
}

TEST_CASE("scan matches the all-windows oracle on random instances") {
    rng::Engine g(12);
    for (int it = 0; it < 200; ++it) {
        const int n = rng::uniform_int(g, 1, 12);
        const EventSequence seq = oracle::random_sequence(g, n, 3, 0.5);
        const Episode alpha = oracle::random_episode(g, 3, rng::uniform_int(g, 1, 3));
        const int delta = rng::uniform_int(g, 1, n + 2);
        CAPTURE(it);
        CHECK(minimal_occurrences(seq, alpha, delta) == oracle::brute_minimal_occurrences(seq, alpha, delta));
    }
}

TEST_CASE("minimal windows never nest and starts strictly increase") {
    rng::Engine g(13);
    for (int it = 0; it < 80; ++it) {
        const EventSequence seq = oracle::random_sequence(g, rng::uniform_int(g, 2, 14), 3, 0.5);
        const Episode alpha = oracle::random_episode(g, 3, rng::uniform_int(g, 2, 3));
        const auto wins = minimal_occurrences(seq, alpha, rng::uniform_int(g, 1, 16));
        for (size_t i = 1; i < wins.size(); ++i) {
            CHECK(wins[i - 1].start < wins[i].start);
            CHECK(wins[i - 1].end < wins[i].end);
        }
    }
}

TEST_CASE("support is monotone in the window bound") {
    rng::Engine g(14);
    for (int it = 0; it < 60; ++it) {
        const EventSequence seq = oracle::random_sequence(g, rng::uniform_int(g, 2, 14), 3, 0.5);
        const Episode alpha = oracle::random_episode(g, 3, 2);
        size_t prev = 0;
        for (int delta = 1; delta <= 15; ++delta) {
            const size_t sp = minimal_occurrences(seq, alpha, delta).size();
            CHECK(sp >= prev);
            prev = sp;
        }
    }
}

TEST_CASE("posting index lists exactly the containing timestamps") {
    const EventSequence ref = parse_sequence(kRef);
    const PostingIndex index(ref);
    const EventId d = *ref.alphabet.find("d");
    CHECK(index.by_event[static_cast<size_t>(d)] == std::vector<Timestamp>{3, 5, 8});
    const EventId c = *ref.alphabet.find("c");
    CHECK(index.by_event[static_cast<size_t>(c)].size() == 5);
}

TEST_CASE("posting-list support agrees with the full scan") {
    rng::Engine g(15);
    for (int it = 0; it < 150; ++it) {
        const int n = rng::uniform_int(g, 1, 16);
        const EventSequence seq = oracle::random_sequence(g, n, 4, 0.3);
        const PostingIndex index(seq);
        const Episode alpha = oracle::random_episode(g, 4, rng::uniform_int(g, 1, 3));
        const int delta = rng::uniform_int(g, 1, n + 2);
        CHECK(support_via_postings(seq, index, alpha, delta) ==
              static_cast<long long>(minimal_occurrences(seq, alpha, delta).size()));
    }
}
