#pragma once

#include "vchain/model.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vchain {

/// Ordered from most favourable to least favourable for a cloud move.
enum class RiskCategory {
    SignificantlyLower,
    Lower,
    NoAdditionalRisk,
    Higher,
    SignificantlyHigher,
};

/// Table label with spaces, e.g. "NO ADDITIONAL RISK".
const char* label(RiskCategory c);
/// Identifier form, e.g. "NO_ADDITIONAL_RISK".
const char* to_identifier(RiskCategory c);
std::optional<RiskCategory> risk_category_from_identifier(std::string_view s);

enum class Verdict { Clear, Conditional, Hold };

const char* to_string(Verdict v);

struct DeltaRow {
    std::string indicator;
    std::string display_name;
    int inhouse = 1;
    int cloud = 1;
    int delta = 0;
    RiskCategory category = RiskCategory::NoAdditionalRisk;

    friend bool operator==(const DeltaRow&, const DeltaRow&) = default;
};

struct DeltaReport {
    std::string binding;
    std::string inhouse_id;
    std::string cloud_id;
    std::vector<DeltaRow> rows;
    Verdict verdict = Verdict::Clear;

    const DeltaRow* find(std::string_view indicator) const;

    friend bool operator==(const DeltaReport&, const DeltaReport&) = default;
};

/// d = cloud - inhouse: d <= -3 significantly lower, -2..-1 lower, 0 none,
/// 1..2 higher, d >= 3 significantly higher. Throws InvalidArgument when a
/// score is outside 1..5.
RiskCategory categorize_delta(int inhouse, int cloud);

/// Any SIGNIFICANTLY_HIGHER holds the move; otherwise any HIGHER makes it
/// conditional; otherwise clear.
Verdict verdict_for(std::span<const DeltaRow> rows);

DeltaReport compare_binding(const DeploymentBinding& binding, const Catalog& catalog);

/// One report per binding, in declaration order.
std::vector<DeltaReport> compare_all(const ValueChainModel& model);

} // namespace vchain
