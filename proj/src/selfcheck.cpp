#include "episcreen/selfcheck.hpp"

#include <cmath>
#include <cstdio>

#include "episcreen/automaton.hpp"
#include "episcreen/core.hpp"
#include "episcreen/edp.hpp"

namespace episcreen {

namespace {

// Five-slot warmup sequence: a b ac b c.
constexpr const char* kTinySeq = "# length=5\n1\ta\n2\tb\n3\ta,c\n4\tb\n5\tc\n";

// Ten-slot reference sequence with one empty slot; all constants below were
// verified by hand against a full window scan.
constexpr const char* kRefSeq =
    "# length=10\n1\ta\n2\ta,b\n3\tb,d\n4\tc\n5\tc,d\n6\tc\n7\ta,c\n8\tb,d\n10\tc\n";

struct Checker {
    std::string* log;
    int failures = 0;

    void expect(bool ok, const std::string& what) {
        *log += ok ? "ok   " : "FAIL ";
        *log += what;
        *log += '\n';
        if (!ok) ++failures;
    }

    void expect_near(double got, double want, double tol, const std::string& what) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%s (got %.12g, want %.12g)", what.c_str(), got, want);
        expect(std::abs(got - want) <= tol, buf);
    }
};

}  // namespace

int run_selfcheck(std::string& log, double perturb) {
    Checker c{&log};
    constexpr double kTol = 1e-9;

    EventSequence tiny = parse_sequence(kTinySeq);
    Alphabet& ta = tiny.alphabet;
    const Episode ab = Episode::of({*ta.find("a"), *ta.find("b")});

    const auto windows = minimal_occurrences(tiny, ab, 5);
    c.expect(windows == std::vector<Window>{{1, 2}, {3, 4}}, "a->b minimal windows at delta=5 are [1,2],[3,4]");

    // Frozen expectations for a->b, cross-checked by exhaustive enumeration
    // over all placements of the regenerated events.
    const DualPartition i_a{0b01u, 2};
    const DualPartition i_b{0b10u, 2};
    const DualPartition i_none{0b00u, 2};
    EngineStats stats;
    const double e_a = expected_support_exact(ab, make_model(tiny, ab, i_a), &stats) + perturb;
    const double e_b = expected_support_exact(ab, make_model(tiny, ab, i_b), &stats) + perturb;
    const double e_none = expected_support_exact(ab, make_model(tiny, ab, i_none), &stats) + perturb;
    c.expect_near(e_a, 1.28, kTol, "expectation with a fixed");
    c.expect_near(e_b, 1.04, kTol, "expectation with b fixed");
    c.expect_near(e_none, 0.86173696, kTol, "expectation with all events random");
    c.expect(stats.max_mass_drift < 1e-9, "state distribution mass stays at 1");

    ScreeningRecord rec = exp_sup(tiny, ab, std::nullopt, 5, 1.0, ScreenMode::Full);
    c.expect(rec.support == 2, "observed support of a->b is 2");
    c.expect_near(rec.exp_sup + perturb, 1.28, kTol, "max expectation over proper splits");
    c.expect_near(rec.lift, 1.5625, kTol, "lift of a->b");
    c.expect(rec.kept && rec.fully_enumerated, "a->b is kept at min_lift=1");
    c.expect(rec.best_partition && rec.best_partition->informative_mask == 0b01u,
             "best split keeps a informative");

    // Slot distributions must sum to one for every split and timestamp.
    double worst = 0.0;
    for (const DualPartition& p : enumerate_partitions(ab)) {
        const GenerativeModel model = make_model(tiny, ab, p);
        for (Timestamp t = 1; t <= tiny.n; ++t) {
            double total = 0.0;
            for (std::uint32_t mask = 0; mask < 4u; ++mask) total += eventset_gen_prob_mask(model, mask, t);
            worst = std::max(worst, std::abs(total - 1.0));
        }
    }
    c.expect(worst < 1e-9, "event-set probabilities normalize per timestamp");

    EventSequence ref = parse_sequence(kRefSeq);
    Alphabet& ra = ref.alphabet;
    c.expect(event_support(ref, *ra.find("c")) == 5, "reference sequence has sp(c)=5");
    c.expect(std::abs(p_ind(ref, *ra.find("c")) - 0.5) < kTol, "reference sequence has p_ind(c)=0.5");

    const Episode abc = Episode::of({*ra.find("a"), *ra.find("b"), *ra.find("c")});
    const auto ref_windows = minimal_occurrences(ref, abc, 4);
    c.expect(ref_windows == std::vector<Window>{{2, 4}, {7, 10}},
             "a->b->c minimal windows at delta=4 are [2,4],[7,10]");

    // With a and b fixed, c is generated with probability 0.5 everywhere.
    const DualPartition i_ab{0b011u, 3};
    const GenerativeModel m_ab = make_model(ref, abc, i_ab);
    c.expect_near(eventset_gen_prob(m_ab, {*ra.find("a"), *ra.find("c")}, 7), 0.5, kTol,
                  "P({a,c} at t=7 | a,b fixed)");
    c.expect_near(eventset_gen_prob(m_ab, {*ra.find("c")}, 9), 0.5, kTol, "P({c} at t=9 | a,b fixed)");

    // After the third timestamp the engine must have banked exactly the mass
    // of the one completing branch and collapsed to a single state set
    // {source, 2-of-3 matched}.
    EngineStats trace;
    trace.capture_t = 3;
    (void)expected_support_exact(abc, m_ab, &trace);
    c.expect_near(trace.captured_accumulator, 0.5, kTol, "completion mass banked after t=3");
    c.expect(trace.captured.size() == 1 && trace.captured[0].first == 0b10u,
             "single live state set {source, state 2} after t=3");
    if (!trace.captured.empty()) {
        c.expect_near(trace.captured[0].second, 1.0, kTol, "live state set carries mass 1 after t=3");
    }

    return c.failures;
}

}  // namespace episcreen
