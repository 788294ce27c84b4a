#pragma once

#include "vchain/model.hpp"

#include <array>
#include <fstream>
#include <sstream>
#include <string>

namespace vchain::test {

inline const std::array<std::string, 6> kOtcSteps = {
    "Specification", "Selection", "Negotiation", "Order", "Fulfillment", "Payment"};

inline const std::array<std::string, 5> kOtcIndicators = {
    "interfaces", "business_relevance", "compliance", "roles", "asset"};

// Order-to-cash scores (indicator rows x step columns).
inline constexpr int kOtcScores[5][6] = {
    {1, 5, 5, 3, 2, 4},
    {1, 1, 1, 4, 5, 3},
    {2, 4, 5, 1, 3, 2},
    {1, 2, 2, 3, 2, 2},
    {1, 2, 2, 2, 4, 5},
};

// ME21N in-house vs cloud, same indicator order.
inline constexpr int kMe21nInhouse[5] = {2, 3, 3, 4, 2};
inline constexpr int kMe21nCloud[5] = {5, 3, 3, 3, 2};

inline EndToEndProcess otc_process() {
    EndToEndProcess p;
    p.name = "Order-to-Cash";
    for (std::size_t j = 0; j < kOtcSteps.size(); ++j) {
        ProcessStep s;
        s.name = kOtcSteps[j];
        for (std::size_t i = 0; i < kOtcIndicators.size(); ++i) s.scores[kOtcIndicators[i]] = kOtcScores[i][j];
        p.steps.push_back(s);
    }
    return p;
}

inline DeploymentBinding me21n_binding() {
    DeploymentBinding b;
    b.step_ref = "ME21N";
    b.inhouse_id = "SAP transaction ME21N (create order)";
    b.cloud_id = "Corresponding cloud service";
    for (std::size_t i = 0; i < kOtcIndicators.size(); ++i) {
        b.inhouse_scores[kOtcIndicators[i]] = kMe21nInhouse[i];
        b.cloud_scores[kOtcIndicators[i]] = kMe21nCloud[i];
    }
    return b;
}

inline ValueChainModel otc_model() {
    ValueChainModel m;
    m.name = "Order-to-Cash";
    m.catalog = default_catalog();
    m.weights = uniform_weights(m.catalog);
    m.processes.push_back(otc_process());
    return m;
}

inline ProcessStep uniform_step(const std::string& name, int score, const Catalog& catalog = default_catalog()) {
    ProcessStep s;
    s.name = name;
    for (const auto& ind : catalog) s.scores[ind.id] = score;
    return s;
}

inline std::string read_data(const std::string& name) {
    std::ifstream in(std::string(VCHAIN_DATA_DIR) + "/" + name, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string data_path(const std::string& name) {
    return std::string(VCHAIN_DATA_DIR) + "/" + name;
}

} // namespace vchain::test
