#pragma once

#include "vchain/dsl.hpp"
#include "vchain/report.hpp"

#include <string>
#include <vector>

namespace vchain::test {

/// scores.csv holds one matrix block per process, blocks separated by a blank line.
inline std::vector<std::string> split_blocks(const std::string& scores_csv) {
    std::vector<std::string> blocks;
    std::size_t start = 0;
    for (;;) {
        const auto gap = scores_csv.find("\n\n", start);
        blocks.push_back(scores_csv.substr(start, gap == std::string::npos ? std::string::npos : gap + 1 - start));
        if (gap == std::string::npos) break;
        start = gap + 2;
    }
    return blocks;
}

/// True when every process of the model comes back with identical step
/// names, order and scores from the exported scores.csv.
inline bool csv_round_trips(const ValueChainModel& m, std::string* why = nullptr) {
    const auto files = export_csv(build_bundle(m, DecisionTree{"none", {}, DecisionNode::leaf()}));
    const auto blocks = split_blocks(files.at("scores.csv"));
    if (blocks.size() != m.processes.size()) {
        if (why) *why = "block count " + std::to_string(blocks.size());
        return false;
    }
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const auto& p = m.processes[i];
        auto r = import_matrix_csv(blocks[i], p.name, m.catalog);
        if (!r.ok()) {
            if (why) *why = r.diagnostics.front().message;
            return false;
        }
        if (r.value->steps.size() != p.steps.size()) return false;
        for (std::size_t j = 0; j < p.steps.size(); ++j) {
            if (r.value->steps[j].name != p.steps[j].name || r.value->steps[j].scores != p.steps[j].scores) {
                if (why) *why = "step " + p.steps[j].name + " differs";
                return false;
            }
        }
    }
    return true;
}

inline ValueChainModel scale_weights(ValueChainModel m, const Rational& c) {
    for (auto& [id, w] : m.weights) w *= c;
    return m;
}

} // namespace vchain::test
