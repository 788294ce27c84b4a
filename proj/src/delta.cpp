#include "vchain/delta.hpp"
#include "vchain/error.hpp"

#include <algorithm>

namespace vchain {

const char* label(RiskCategory c) {
    switch (c) {
    case RiskCategory::SignificantlyLower: return "SIGNIFICANTLY LOWER";
    case RiskCategory::Lower: return "LOWER";
    case RiskCategory::NoAdditionalRisk: return "NO ADDITIONAL RISK";
    case RiskCategory::Higher: return "HIGHER";
    case RiskCategory::SignificantlyHigher: return "SIGNIFICANTLY HIGHER";
    }
    return "?";
}

const char* to_identifier(RiskCategory c) {
    switch (c) {
    case RiskCategory::SignificantlyLower: return "SIGNIFICANTLY_LOWER";
    case RiskCategory::Lower: return "LOWER";
    case RiskCategory::NoAdditionalRisk: return "NO_ADDITIONAL_RISK";
    case RiskCategory::Higher: return "HIGHER";
    case RiskCategory::SignificantlyHigher: return "SIGNIFICANTLY_HIGHER";
    }
    return "?";
}

std::optional<RiskCategory> risk_category_from_identifier(std::string_view s) {
    for (auto c : {RiskCategory::SignificantlyLower, RiskCategory::Lower, RiskCategory::NoAdditionalRisk,
                   RiskCategory::Higher, RiskCategory::SignificantlyHigher})
        if (s == to_identifier(c)) return c;
    return std::nullopt;
}

const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::Clear: return "CLEAR";
    case Verdict::Conditional: return "CONDITIONAL";
    case Verdict::Hold: return "HOLD";
    }
    return "?";
}

const DeltaRow* DeltaReport::find(std::string_view indicator) const {
    for (const auto& r : rows)
        if (r.indicator == indicator) return &r;
    return nullptr;
}

RiskCategory categorize_delta(int inhouse, int cloud) {
    if (!in_scale(inhouse) || !in_scale(cloud))
        throw Error(ErrorCode::InvalidArgument, "delta scores must be in 1..5");
    const int d = cloud - inhouse;
    if (d <= -3) return RiskCategory::SignificantlyLower;
    if (d < 0) return RiskCategory::Lower;
    if (d == 0) return RiskCategory::NoAdditionalRisk;
    if (d < 3) return RiskCategory::Higher;
    return RiskCategory::SignificantlyHigher;
}

Verdict verdict_for(std::span<const DeltaRow> rows) {
    auto any = [&](RiskCategory c) {
        return std::any_of(rows.begin(), rows.end(), [c](const DeltaRow& r) { return r.category == c; });
    };
    if (any(RiskCategory::SignificantlyHigher)) return Verdict::Hold;
    if (any(RiskCategory::Higher)) return Verdict::Conditional;
    return Verdict::Clear;
}

DeltaReport compare_binding(const DeploymentBinding& binding, const Catalog& catalog) {
    DeltaReport report;
    report.binding = binding.step_ref;
    report.inhouse_id = binding.inhouse_id;
    report.cloud_id = binding.cloud_id;
    for (const auto& ind : catalog) {
        auto in = binding.inhouse_scores.find(ind.id);
        auto cl = binding.cloud_scores.find(ind.id);
        if (in == binding.inhouse_scores.end() || cl == binding.cloud_scores.end())
            throw Error(ErrorCode::InvalidArgument,
                        "binding '" + binding.step_ref + "' lacks a score for '" + ind.id + "'");
        report.rows.push_back({ind.id, ind.display_name, in->second, cl->second, cl->second - in->second,
                               categorize_delta(in->second, cl->second)});
    }
    report.verdict = verdict_for(report.rows);
    return report;
}

std::vector<DeltaReport> compare_all(const ValueChainModel& model) {
    std::vector<DeltaReport> reports;
    reports.reserve(model.bindings.size());
    for (const auto& b : model.bindings) reports.push_back(compare_binding(b, model.catalog));
    return reports;
}

} // namespace vchain
