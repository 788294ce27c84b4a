#pragma once

#include "vchain/delta.hpp"
#include "vchain/gate.hpp"
#include "vchain/model.hpp"
#include "vchain/scoring.hpp"

#include <map>
#include <string>
#include <vector>

namespace vchain {

struct FraudEntry {
    std::string scenario;
    std::string step_ref;
    int probability = 1;
    int damage = 1;
    RiskScore risk;
};

struct ReportBundle {
    std::string model_name;
    Catalog catalog;
    std::vector<EndToEndProcess> processes;
    std::vector<ProcessProfile> profiles;
    std::vector<DeltaReport> deltas;
    std::vector<AffinityResult> ranking;
    std::vector<FraudEntry> fraud_register;
    std::vector<GateEntry> obligations;
    std::string format_version = "1";
};

/// Assembles everything for a validated model. The tree is used for the
/// obligations section.
ReportBundle build_bundle(const ValueChainModel& model, const DecisionTree& tree);

std::string render_matrix_text(const EndToEndProcess& process, const Catalog& catalog);
/// Importable matrix block (`indicator,<steps...>`).
std::string render_matrix_csv(const EndToEndProcess& process, const Catalog& catalog);
std::string render_profile_text(const ProcessProfile& profile);
std::string render_affinity_text(const AffinityResult& result);
std::string render_delta_text(const DeltaReport& report);

/// JSON with lexicographically ordered keys and 2-space indentation.
std::string export_structured(const ReportBundle& bundle);

/// scores.csv, deltas.csv, ranking.csv, fraud.csv, obligations.csv.
std::map<std::string, std::string> export_csv(const ReportBundle& bundle);

} // namespace vchain
