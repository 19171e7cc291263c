#include "episcreen/edp.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "episcreen/automaton.hpp"
#include "episcreen/rng.hpp"

namespace episcreen {

int DualPartition::random_count() const {
    return omega_size - std::popcount(informative_mask);
}

std::vector<EventId> DualPartition::informative_events(const Episode& alpha) const {
    std::vector<EventId> out;
    for (int i = 0; i < omega_size; ++i) {
        if (is_informative(i)) out.push_back(alpha.alphabet_of[i]);
    }
    return out;
}

std::vector<DualPartition> enumerate_partitions(const Episode& alpha) {
    const int m = static_cast<int>(alpha.alphabet_of.size());
    if (m < 1) throw std::invalid_argument("episode alphabet is empty");
    if (m > 20) throw std::invalid_argument("episode alphabet too large to enumerate partitions");
    const std::uint32_t full = (1u << m) - 1u;
    std::vector<DualPartition> out;
    out.reserve(full);
    for (int informative_count = m - 1; informative_count >= 0; --informative_count) {
        for (std::uint32_t mask = 0; mask < full; ++mask) {
            if (std::popcount(mask) == informative_count) out.push_back({mask, m});
        }
    }
    return out;
}

GenerativeModel make_model(const EventSequence& seq, const Episode& alpha, DualPartition partition) {
    if (static_cast<int>(alpha.alphabet_of.size()) != partition.omega_size) {
        throw std::invalid_argument("partition does not match the episode alphabet");
    }
    GenerativeModel model{&seq, &alpha, partition, {}};
    model.probs.resize(alpha.alphabet_of.size(), 0.0);
    for (int i = 0; i < partition.omega_size; ++i) {
        if (!partition.is_informative(i)) {
            model.probs[static_cast<size_t>(i)] = p_ind(seq, alpha.alphabet_of[static_cast<size_t>(i)]);
        }
    }
    return model;
}

namespace {

int omega_index_of(const Episode& alpha, EventId e) {
    const auto& omega = alpha.alphabet_of;
    const auto it = std::find(omega.begin(), omega.end(), e);
    if (it == omega.end()) throw std::invalid_argument("event is not part of the episode alphabet");
    return static_cast<int>(it - omega.begin());
}

// P(event with omega index i is generated at t).
double member_prob(const GenerativeModel& model, int i, Timestamp t) {
    const EventId e = model.alpha->alphabet_of[static_cast<size_t>(i)];
    if (model.partition.is_informative(i)) {
        return model.seq->contains(t, e) ? 1.0 : 0.0;
    }
    return model.probs[static_cast<size_t>(i)];
}

}  // namespace

double event_gen_prob(const GenerativeModel& model, EventId e, Timestamp t) {
    if (t < 1 || t > model.seq->n) throw std::out_of_range("timestamp out of range");
    return member_prob(model, omega_index_of(*model.alpha, e), t);
}

double eventset_gen_prob_mask(const GenerativeModel& model, std::uint32_t eset_mask, Timestamp t) {
    const int m = static_cast<int>(model.alpha->alphabet_of.size());
    double p = 1.0;
    for (int i = 0; i < m; ++i) {
        const double pi = member_prob(model, i, t);
        p *= ((eset_mask >> i) & 1u) ? pi : 1.0 - pi;
    }
    return p;
}

double eventset_gen_prob(const GenerativeModel& model, const std::vector<EventId>& eset, Timestamp t) {
    std::uint32_t mask = 0;
    for (EventId e : eset) mask |= 1u << omega_index_of(*model.alpha, e);
    return eventset_gen_prob_mask(model, mask, t);
}

double random_sequence_prob(const GenerativeModel& model, const std::vector<std::uint32_t>& candidate_masks) {
    if (static_cast<int>(candidate_masks.size()) != model.seq->n) {
        throw std::invalid_argument("candidate length differs from the sequence length");
    }
    double p = 1.0;
    for (Timestamp t = 1; t <= model.seq->n; ++t) {
        p *= eventset_gen_prob_mask(model, candidate_masks[static_cast<size_t>(t - 1)], t);
    }
    return p;
}

double expected_support_exact(const Episode& alpha, const GenerativeModel& model, EngineStats* stats) {
    const EventSequence& seq = *model.seq;
    const int k = alpha.length();
    if (k == 0) return 0.0;
    const int m = static_cast<int>(alpha.alphabet_of.size());

    if (k == 1) {
        // Every generated occurrence of a single event is its own minimal
        // window, so the expectation is just the expected occurrence count.
        if (model.partition.is_informative(0)) return event_support(seq, alpha.events[0]);
        return static_cast<double>(seq.n) * model.probs[0];
    }
    if (k - 1 > 20) throw std::invalid_argument("episode too long for the exact engine");

    // State j in 1..k-1 is bit j-1 of a set mask; the source is implicit and
    // the sink is never tracked (reaching it scores and dies).
    std::vector<int> need(static_cast<size_t>(k));
    for (int j = 0; j < k; ++j) need[static_cast<size_t>(j)] = omega_index_of(alpha, alpha.events[static_cast<size_t>(j)]);

    const std::uint32_t nsets = 1u << (k - 1);
    std::vector<double> dist(nsets, 0.0), next(nsets, 0.0);
    dist[0] = 1.0;

    // Events the occupied states (plus the always-live source) listen to.
    std::vector<std::uint32_t> need_mask(nsets);
    for (std::uint32_t L = 0; L < nsets; ++L) {
        std::uint32_t nm = 1u << need[0];
        for (int j = 1; j < k; ++j) {
            if ((L >> (j - 1)) & 1u) nm |= 1u << need[static_cast<size_t>(j)];
        }
        need_mask[L] = nm;
    }

    const std::uint32_t info_mask = model.partition.informative_mask;
    const std::uint32_t rand_mask = ((1u << m) - 1u) & ~info_mask;

    double acc = 0.0, acc_comp = 0.0;  // compensated: up to n * 2^(|random|+k) tiny additions
    const auto add_acc = [&](double v) {
        const double y = v - acc_comp;
        const double t2 = acc + y;
        acc_comp = (t2 - acc) - y;
        acc = t2;
    };

    for (Timestamp t = 1; t <= seq.n; ++t) {
        std::uint32_t info = 0;
        for (int i = 0; i < m; ++i) {
            if (((info_mask >> i) & 1u) && seq.contains(t, alpha.alphabet_of[static_cast<size_t>(i)])) {
                info |= 1u << i;
            }
        }
        std::fill(next.begin(), next.end(), 0.0);
        for (std::uint32_t L = 0; L < nsets; ++L) {
            const double mass = dist[L];
            if (mass == 0.0) continue;
            // Random events nobody listens to sum out to a factor of 1, so
            // only combinations over this trigger set need enumerating.
            const std::uint32_t rel = need_mask[L] & rand_mask;
            std::uint32_t s = rel;
            while (true) {
                double pr = mass;
                for (std::uint32_t bits = rel; bits; bits &= bits - 1) {
                    const int i = std::countr_zero(bits);
                    pr *= ((s >> i) & 1u) ? model.probs[static_cast<size_t>(i)]
                                          : 1.0 - model.probs[static_cast<size_t>(i)];
                }
                if (pr != 0.0) {
                    const std::uint32_t present = info | s;
                    std::uint32_t new_l = 0;
                    bool sink = false;
                    for (int j = k - 1; j >= 1; --j) {
                        if (!((L >> (j - 1)) & 1u)) continue;
                        if ((present >> need[static_cast<size_t>(j)]) & 1u) {
                            if (j + 1 == k) {
                                sink = true;  // scored below; the instance dies
                            } else {
                                new_l |= 1u << j;  // advanced copy displaces any occupant
                            }
                        } else {
                            new_l |= 1u << (j - 1);
                        }
                    }
                    if ((present >> need[0]) & 1u) new_l |= 1u;  // source respawn
                    next[new_l] += pr;
                    if (sink) add_acc(pr);
                }
                if (s == 0) break;
                s = (s - 1) & rel;
            }
        }
        std::swap(dist, next);
        if (stats) {
            double total = 0.0;
            for (double v : dist) total += v;
            stats->max_mass_drift = std::max(stats->max_mass_drift, std::abs(1.0 - total));
            if (stats->capture_t == t) {
                stats->captured.clear();
                for (std::uint32_t L = 0; L < nsets; ++L) {
                    if (dist[L] != 0.0) stats->captured.emplace_back(L, dist[L]);
                }
                stats->captured_accumulator = acc;
            }
        }
    }
    return acc;
}

McResult expected_support_mc(const Episode& alpha, const GenerativeModel& model, long long samples,
                             std::uint64_t seed, std::optional<int> delta) {
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    const EventSequence& seq = *model.seq;
    const int n = seq.n;
    const int m = static_cast<int>(alpha.alphabet_of.size());
    const int delta_eff = delta ? *delta : n + 1;  // any window fits when unbounded

    // Informative members replay their original positions in every sample.
    std::vector<std::vector<EventId>> skeleton(static_cast<size_t>(n));
    for (Timestamp t = 1; t <= n; ++t) {
        for (int i = 0; i < m; ++i) {
            const EventId e = alpha.alphabet_of[static_cast<size_t>(i)];
            if (model.partition.is_informative(i) && seq.contains(t, e)) {
                skeleton[static_cast<size_t>(t - 1)].push_back(e);
            }
        }
        std::sort(skeleton[static_cast<size_t>(t - 1)].begin(), skeleton[static_cast<size_t>(t - 1)].end());
    }
    std::vector<int> random_members;
    for (int i = 0; i < m; ++i) {
        if (!model.partition.is_informative(i)) random_members.push_back(i);
    }

    rng::Engine gen(seed);
    EventSequence sample;
    sample.n = n;

    double sum = 0.0, sumsq = 0.0;
    for (long long it = 0; it < samples; ++it) {
        sample.slots = skeleton;
        for (Timestamp t = 1; t <= n; ++t) {
            auto& slot = sample.slots[static_cast<size_t>(t - 1)];
            bool dirty = false;
            for (int i : random_members) {
                if (rng::bernoulli(gen, model.probs[static_cast<size_t>(i)])) {
                    slot.push_back(alpha.alphabet_of[static_cast<size_t>(i)]);
                    dirty = true;
                }
            }
            if (dirty) std::sort(slot.begin(), slot.end());
        }
        const double count = static_cast<double>(minimal_occurrences(sample, alpha, delta_eff).size());
        sum += count;
        sumsq += count * count;
    }
    const double nd = static_cast<double>(samples);
    const double mean = sum / nd;
    double se = 0.0;
    if (samples > 1) {
        const double var = std::max(0.0, (sumsq - nd * mean * mean) / (nd - 1.0));
        se = std::sqrt(var / nd);
    }
    return {mean, se};
}

namespace {

ScreeningRecord evaluate_episode(const EventSequence& seq, const Episode& alpha, long long sp,
                                 const std::vector<DualPartition>& partitions, double min_lift,
                                 ScreenMode mode) {
    ScreeningRecord rec;
    rec.episode = alpha;
    rec.support = sp;
    if (sp == 0) {
        // Nothing observed: screened without touching the null models.
        rec.lift = 0.0;
        return rec;
    }
    double best = -1.0;
    DualPartition best_partition;
    for (const DualPartition& p : partitions) {
        const double e = expected_support_exact(alpha, make_model(seq, alpha, p));
        if (e > best) {
            best = e;
            best_partition = p;
        }
        if (mode == ScreenMode::EarlyExit && e > 0.0 && static_cast<double>(sp) / e < min_lift) {
            // The maximum over all partitions is at least e, so the final
            // lift is provably below min_lift; stop here.
            rec.exp_sup = best;
            rec.lift = static_cast<double>(sp) / best;
            rec.best_partition = best_partition;
            rec.witness_partition = p;
            return rec;
        }
    }
    rec.exp_sup = best;
    rec.best_partition = best_partition;
    rec.lift = best > 0.0 ? static_cast<double>(sp) / best : std::numeric_limits<double>::infinity();
    rec.kept = rec.lift >= min_lift;
    rec.fully_enumerated = true;
    return rec;
}

}  // namespace

ScreeningRecord exp_sup(const EventSequence& seq, const Episode& alpha,
                        std::optional<long long> observed_support, int delta, double min_lift,
                        ScreenMode mode) {
    if (alpha.empty()) throw std::invalid_argument("empty episode");
    const long long sp = observed_support
                             ? *observed_support
                             : static_cast<long long>(minimal_occurrences(seq, alpha, delta).size());
    return evaluate_episode(seq, alpha, sp, enumerate_partitions(alpha), min_lift, mode);
}

std::vector<ScreeningRecord> screen(const EventSequence& seq, const std::vector<EpisodeEntry>& episodes,
                                    const ScreenOptions& opts) {
    if (opts.min_lift <= 0.0) throw std::invalid_argument("min_lift must be > 0");
    if (opts.delta < 1) throw std::invalid_argument("delta must be >= 1");
    if (opts.workers < 1) throw std::invalid_argument("workers must be >= 1");
    for (const EpisodeEntry& entry : episodes) {
        for (EventId e : entry.episode.events) {
            if (e < 0 || e >= seq.alphabet.size()) {
                throw std::invalid_argument("episode references an event absent from the sequence alphabet");
            }
        }
    }

    std::vector<ScreeningRecord> records(episodes.size());
    std::atomic<size_t> cursor{0};
    const auto worker = [&]() {
        while (true) {
            const size_t i = cursor.fetch_add(1);
            if (i >= episodes.size()) break;
            const EpisodeEntry& entry = episodes[i];
            const long long sp =
                entry.support ? *entry.support
                              : static_cast<long long>(minimal_occurrences(seq, entry.episode, opts.delta).size());
            std::vector<DualPartition> partitions;
            if (opts.ind_baseline) {
                partitions.push_back({0u, static_cast<int>(entry.episode.alphabet_of.size())});
            } else {
                partitions = enumerate_partitions(entry.episode);
            }
            records[i] = evaluate_episode(seq, entry.episode, sp, partitions, opts.min_lift, opts.mode);
        }
    };

    const int nthreads = static_cast<int>(std::min<size_t>(static_cast<size_t>(opts.workers), episodes.size()));
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(nthreads));
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    // Kept block first, each block ranked by lift, then support, then label.
    // stable_sort keeps input order for full duplicates.
    std::stable_sort(records.begin(), records.end(), [&](const ScreeningRecord& x, const ScreeningRecord& y) {
        if (x.kept != y.kept) return x.kept;
        if (x.lift != y.lift) return x.lift > y.lift;
        if (x.support != y.support) return x.support > y.support;
        return episode_label_less(x.episode, y.episode, seq.alphabet);
    });
    return records;
}

}  // namespace episcreen
