#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "episcreen/automaton.hpp"
#include "episcreen/core.hpp"
#include "episcreen/edp.hpp"
#include "episcreen/eval.hpp"
#include "episcreen/miner.hpp"
#include "episcreen/selfcheck.hpp"
#include "episcreen/synth.hpp"

namespace {

using namespace episcreen;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

nlohmann::ordered_json partition_json(const std::optional<DualPartition>& partition,
                                      const Episode& episode, const Alphabet& alphabet) {
    if (!partition) return nullptr;
    nlohmann::ordered_json obj;
    auto labels = nlohmann::ordered_json::array();
    for (EventId e : partition->informative_events(episode)) labels.push_back(alphabet.label(e));
    obj["informative"] = labels;
    return obj;
}

int cmd_synth(const SynConfig& cfg, const std::string& out, const std::string& truth_out) {
    const SynResult result = generate_syn(cfg);
    write_file(out, serialize_sequence(result.seq));
    if (!truth_out.empty()) {
        std::vector<EpisodeEntry> entries;
        for (const Episode& ep : result.truth) entries.push_back({ep, std::nullopt});
        write_file(truth_out, serialize_episode_list(entries, result.seq.alphabet));
    }
    std::cerr << "wrote " << out << " (n=" << cfg.n << ", seed=" << cfg.seed << ")\n";
    return 0;
}

int cmd_mine(const std::string& input, long long min_sup, int delta, int max_len, int top_k,
             const std::string& out) {
    EventSequence seq = parse_sequence(read_file(input));
    std::vector<MinedEpisode> mined = mine_frequent(seq, min_sup, delta, max_len);
    if (top_k > 0) mined = top_k_by_support(seq, mined, top_k);
    std::vector<EpisodeEntry> entries;
    for (const MinedEpisode& m : mined) entries.push_back({m.episode, m.support});
    write_file(out, serialize_episode_list(entries, seq.alphabet));
    std::cerr << "mined " << entries.size() << " episodes\n";
    return 0;
}

int cmd_screen(const std::string& input, const std::string& episodes_path, const ScreenOptions& opts,
               long long mc_check, const std::string& out) {
    EventSequence seq = parse_sequence(read_file(input));
    const int known_events = seq.alphabet.size();
    std::vector<EpisodeEntry> episodes = parse_episode_list(read_file(episodes_path), seq.alphabet);
    for (const EpisodeEntry& entry : episodes) {
        for (EventId e : entry.episode.events) {
            if (e >= known_events) {
                throw std::runtime_error("episode event '" + seq.alphabet.label(e) +
                                         "' does not occur in the sequence alphabet");
            }
        }
    }

    const std::vector<ScreeningRecord> records = screen(seq, episodes, opts);

    std::string report;
    for (size_t i = 0; i < records.size(); ++i) {
        const ScreeningRecord& rec = records[i];
        nlohmann::ordered_json line;
        line["episode"] = rec.episode.to_string(seq.alphabet);
        line["support"] = rec.support;
        line["exp_sup"] = rec.exp_sup;
        line["lift"] = rec.lift;  // infinity serializes as null
        line["kept"] = rec.kept;
        line["best_partition"] = partition_json(rec.best_partition, rec.episode, seq.alphabet);
        line["witness_partition"] = partition_json(rec.witness_partition, rec.episode, seq.alphabet);
        line["fully_enumerated"] = rec.fully_enumerated;
        if (mc_check > 0) {
            if (rec.best_partition) {
                // Seeded by rank so the check never depends on worker count.
                const GenerativeModel model = make_model(seq, rec.episode, *rec.best_partition);
                const McResult mc = expected_support_mc(rec.episode, model, mc_check,
                                                        0x5eed0000u + static_cast<std::uint64_t>(i));
                line["mc_estimate"] = mc.estimate;
                line["mc_se"] = mc.se;
            } else {
                line["mc_estimate"] = nullptr;
                line["mc_se"] = nullptr;
            }
        }
        report += line.dump();
        report += '\n';
    }
    write_file(out, report);

    size_t kept = 0;
    for (const auto& rec : records) kept += rec.kept ? 1 : 0;
    std::cerr << "screened " << records.size() << " episodes, kept " << kept << "\n";
    return 0;
}

std::vector<std::vector<std::string>> split_labels(const std::string& arrow_text) {
    // helper for one episode string; returns a single label sequence
    std::vector<std::string> labels;
    size_t pos = 0;
    while (true) {
        const size_t arrow = arrow_text.find("->", pos);
        if (arrow == std::string::npos) {
            labels.push_back(arrow_text.substr(pos));
            break;
        }
        labels.push_back(arrow_text.substr(pos, arrow - pos));
        pos = arrow + 2;
    }
    return {labels};
}

int cmd_eval(const std::vector<std::string>& report_specs, const std::string& truth_path, int k_max,
             const std::string& out) {
    std::vector<MethodRanking> rankings;
    for (const std::string& spec : report_specs) {
        MethodRanking ranking;
        std::string path = spec;
        const size_t eq = spec.find('=');
        if (eq != std::string::npos) {
            ranking.name = spec.substr(0, eq);
            path = spec.substr(eq + 1);
        } else {
            const size_t slash = spec.find_last_of('/');
            ranking.name = (slash == std::string::npos) ? spec : spec.substr(slash + 1);
        }
        std::istringstream in(read_file(path));
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const nlohmann::json rec = nlohmann::json::parse(line);
            if (!rec.value("kept", false)) continue;
            ranking.ranked_labels.push_back(split_labels(rec.at("episode").get<std::string>())[0]);
        }
        rankings.push_back(std::move(ranking));
    }

    Alphabet scratch;
    std::vector<std::vector<std::string>> truth_labels;
    for (const EpisodeEntry& entry : parse_episode_list(read_file(truth_path), scratch)) {
        std::vector<std::string> labels;
        for (EventId e : entry.episode.events) labels.push_back(scratch.label(e));
        truth_labels.push_back(std::move(labels));
    }

    const ComparisonTable table = compare_methods(rankings, truth_labels, k_max);
    std::cout << render_table(table);
    if (!out.empty()) write_file(out, table_to_json(table));
    return 0;
}

int cmd_selfcheck(double perturb) {
    std::string log;
    const int failures = run_selfcheck(log, perturb);
    std::cout << log;
    if (failures > 0) {
        std::cout << failures << " check(s) failed\n";
        return 1;
    }
    std::cout << "all checks passed\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mines frequent serial episodes and screens free-riders against dual-partition null models"};
    app.require_subcommand(1);
    app.set_config("--config");

    // synth
    SynConfig syn_cfg;
    std::string syn_out, syn_truth_out;
    CLI::App* synth = app.add_subcommand("synth", "generate a benchmark sequence with planted patterns");
    synth->add_option("--n", syn_cfg.n, "sequence length")->capture_default_str();
    synth->add_option("--seed", syn_cfg.seed, "RNG seed")->capture_default_str();
    synth->add_option("--p-noise", syn_cfg.p_noise, "per-timestamp probability of noise event X")
        ->capture_default_str();
    synth->add_option("--plant-abc", syn_cfg.plant_abc, "number of abc plants")->capture_default_str();
    synth->add_option("--plant-defg", syn_cfg.plant_defg, "number of defg plants")->capture_default_str();
    synth->add_option("--fill-prob", syn_cfg.fill_prob, "per-timestamp probability of a filler letter")
        ->capture_default_str();
    synth->add_option("--gap-mean", syn_cfg.gap_mean, "mean of the defg gap distribution")
        ->capture_default_str();
    synth->add_option("--gap-std", syn_cfg.gap_std, "stddev of the defg gap distribution")
        ->capture_default_str();
    synth->add_option("--out", syn_out, "sequence output path")->required();
    synth->add_option("--truth-out", syn_truth_out, "planted-pattern list output path");

    // mine
    std::string mine_in, mine_out;
    long long mine_min_sup = 200;
    int mine_delta = 12, mine_max_len = 6, mine_top_k = 0;
    CLI::App* mine = app.add_subcommand("mine", "mine frequent episodes by minimal-occurrence support");
    mine->add_option("--input", mine_in, "sequence file")->required();
    mine->add_option("--min-sup", mine_min_sup, "minimum support")->capture_default_str();
    mine->add_option("--max-window", mine_delta, "occurrence window bound (strict)")->capture_default_str();
    mine->add_option("--max-len", mine_max_len, "maximum episode length")->capture_default_str();
    mine->add_option("--top-k", mine_top_k, "keep only the k most frequent (0 = all)")
        ->capture_default_str();
    mine->add_option("--out", mine_out, "episode list output path")->required();

    // screen
    std::string screen_in, screen_eps, screen_out, screen_mode = "early-exit", screen_baseline;
    ScreenOptions screen_opts;
    long long screen_mc = 0;
    CLI::App* scr = app.add_subcommand("screen", "rank episodes by lift against null-model expectations");
    scr->add_option("--input", screen_in, "sequence file")->required();
    scr->add_option("--episodes", screen_eps, "episode list file")->required();
    scr->add_option("--min-lift", screen_opts.min_lift, "keep threshold on lift")->capture_default_str();
    scr->add_option("--max-window", screen_opts.delta, "window bound for recomputing missing supports")
        ->capture_default_str();
    scr->add_option("--workers", screen_opts.workers, "worker thread count")->capture_default_str();
    scr->add_option("--mode", screen_mode, "full or early-exit")->capture_default_str();
    scr->add_option("--baseline", screen_baseline, "'ind' evaluates only the all-random split");
    scr->add_option("--mc-check", screen_mc, "per-episode Monte Carlo replay sample count (0 = off)")
        ->capture_default_str();
    scr->add_option("--out", screen_out, "report output path (JSON lines)")->required();

    // eval
    std::vector<std::string> eval_reports;
    std::string eval_truth, eval_out;
    int eval_k_max = 15;
    CLI::App* eval = app.add_subcommand("eval", "precision@k of ranked reports against ground truth");
    eval->add_option("--report", eval_reports, "report file, optionally NAME=PATH (repeatable)")
        ->required();
    eval->add_option("--truth", eval_truth, "ground-truth episode list")->required();
    eval->add_option("--k-max", eval_k_max, "largest k to report")->capture_default_str();
    eval->add_option("--out", eval_out, "metrics JSON output path");

    // selfcheck
    double selfcheck_perturb = 0.0;
    CLI::App* selfcheck = app.add_subcommand("selfcheck", "run built-in correctness checks");
    selfcheck->add_option("--perturb", selfcheck_perturb, "bias added to computed expectations (testing)")
        ->group("");  // hidden

    if (argc <= 1) {
        std::cerr << app.help();
        return 1;
    }
    CLI11_PARSE(app, argc, argv);

    try {
        if (*synth) return cmd_synth(syn_cfg, syn_out, syn_truth_out);
        if (*mine) return cmd_mine(mine_in, mine_min_sup, mine_delta, mine_max_len, mine_top_k, mine_out);
        if (*scr) {
            if (screen_mode == "full") {
                screen_opts.mode = ScreenMode::Full;
            } else if (screen_mode == "early-exit") {
                screen_opts.mode = ScreenMode::EarlyExit;
            } else {
                throw std::runtime_error("unknown mode '" + screen_mode + "' (use full or early-exit)");
            }
            if (!screen_baseline.empty()) {
                if (screen_baseline != "ind") throw std::runtime_error("unknown baseline '" + screen_baseline + "'");
                screen_opts.ind_baseline = true;
            }
            return cmd_screen(screen_in, screen_eps, screen_opts, screen_mc, screen_out);
        }
        if (*eval) return cmd_eval(eval_reports, eval_truth, eval_k_max, eval_out);
        if (*selfcheck) return cmd_selfcheck(selfcheck_perturb);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
