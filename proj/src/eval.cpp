#include "episcreen/eval.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace episcreen {

double precision_at_k(const std::vector<std::vector<std::string>>& ranked_labels,
                      const std::vector<std::vector<std::string>>& truth_labels, int k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    const std::set<std::vector<std::string>> truth(truth_labels.begin(), truth_labels.end());
    int hits = 0;
    const size_t limit = std::min(static_cast<size_t>(k), ranked_labels.size());
    for (size_t i = 0; i < limit; ++i) {
        if (truth.count(ranked_labels[i])) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(k);
}

ComparisonTable compare_methods(const std::vector<MethodRanking>& rankings,
                                const std::vector<std::vector<std::string>>& truth_labels, int k_max) {
    if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
    ComparisonTable table;
    table.k_max = k_max;
    for (const MethodRanking& ranking : rankings) {
        table.methods.push_back(ranking.name);
        std::vector<double> row;
        row.reserve(static_cast<size_t>(k_max));
        for (int k = 1; k <= k_max; ++k) {
            row.push_back(precision_at_k(ranking.ranked_labels, truth_labels, k));
        }
        table.precision.push_back(std::move(row));
    }
    return table;
}

std::string render_table(const ComparisonTable& table) {
    size_t name_width = 6;
    for (const auto& name : table.methods) name_width = std::max(name_width, name.size());

    std::ostringstream out;
    out << std::string(name_width, ' ') << "  ";
    for (int k = 1; k <= table.k_max; ++k) {
        std::string head = "p@" + std::to_string(k);
        out << std::string(head.size() < 7 ? 7 - head.size() : 1, ' ') << head;
    }
    out << '\n';
    for (size_t i = 0; i < table.methods.size(); ++i) {
        out << table.methods[i] << std::string(name_width - table.methods[i].size(), ' ') << "  ";
        for (double p : table.precision[i]) {
            char buf[16];
            std::snprintf(buf, sizeof(buf), "%7.3f", p);
            out << buf;
        }
        out << '\n';
    }
    return out.str();
}

std::string table_to_json(const ComparisonTable& table) {
    nlohmann::ordered_json doc;
    doc["k_max"] = table.k_max;
    doc["methods"] = nlohmann::ordered_json::array();
    for (size_t i = 0; i < table.methods.size(); ++i) {
        nlohmann::ordered_json entry;
        entry["name"] = table.methods[i];
        entry["precision_at_k"] = table.precision[i];
        doc["methods"].push_back(entry);
    }
    return doc.dump(2) + "\n";
}

}  // namespace episcreen
