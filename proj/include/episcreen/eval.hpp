#pragma once

#include <string>
#include <vector>

#include "episcreen/core.hpp"

namespace episcreen {

// Ranked episodes are matched against the truth set by exact label-sequence
// identity; a subepisode of a true pattern does not count. When fewer than k
// episodes were ranked the missing slots count as misses.
double precision_at_k(const std::vector<std::vector<std::string>>& ranked_labels,
                      const std::vector<std::vector<std::string>>& truth_labels, int k);

struct MethodRanking {
    std::string name;
    std::vector<std::vector<std::string>> ranked_labels;
};

struct ComparisonTable {
    int k_max = 0;
    std::vector<std::string> methods;
    std::vector<std::vector<double>> precision;  // [method][k-1]
};

ComparisonTable compare_methods(const std::vector<MethodRanking>& rankings,
                                const std::vector<std::vector<std::string>>& truth_labels, int k_max);

// Aligned text rows, one per method, for terminal output.
std::string render_table(const ComparisonTable& table);

// Same data as a JSON document, plot-ready.
std::string table_to_json(const ComparisonTable& table);

}  // namespace episcreen
