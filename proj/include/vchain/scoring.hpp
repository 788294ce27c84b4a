#pragma once

#include "vchain/model.hpp"
#include "vchain/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace vchain {

enum class RiskClass { Low, Medium, High, Critical };

const char* to_string(RiskClass c);

struct RiskScore {
    int value = 1;
    RiskClass risk_class = RiskClass::Low;

    friend bool operator==(const RiskScore&, const RiskScore&) = default;
};

/// Bands on a 1..25 product: 1-4 low, 5-9 medium, 10-14 high, 15-25 critical.
RiskClass classify_risk(int value);

/// probability x damage. Throws InvalidArgument outside 1..5.
RiskScore fraud_risk(int probability, int damage);

/// True when the category has at least one catalog indicator with weight > 0.
bool category_scored(const Catalog& catalog, const Weights& weights, IndicatorCategory category);
bool category_present(const Catalog& catalog, IndicatorCategory category);

/// Weighted mean sum(w*s)/sum(w) over the category's indicators.
/// Throws Error{EmptyCategory} when no indicator of the category has weight > 0.
Rational step_category_score(const ProcessStep& step, IndicatorCategory category,
                             const Catalog& catalog, const Weights& weights);

using CategoryScores = std::map<IndicatorCategory, Rational>;

struct StepProfile {
    std::string step;
    CategoryScores category_scores;
};

struct CategoryAggregate {
    Rational mean;
    Rational max;
    std::string max_step;   // first step reaching the max
};

struct ProcessProfile {
    std::string process;
    std::vector<StepProfile> steps;
    std::map<IndicatorCategory, CategoryAggregate> aggregate;
};

/// Profiles every category present in the catalog.
ProcessProfile process_profile(const EndToEndProcess& process, const Catalog& catalog,
                               const Weights& weights);

struct AffinityResult {
    std::string process;
    Rational value_component;
    Rational risk_component;
    Rational affinity;
};

/// value = (mean RESULT - 1)/4, risk = (mean SECURITY - 1)/4,
/// affinity = value - risk. COST does not participate.
AffinityResult cloud_affinity(const EndToEndProcess& process, const Catalog& catalog,
                              const Weights& weights);

/// Descending affinity; ties by ascending risk, then declaration order.
std::vector<AffinityResult> rank_processes(const ValueChainModel& model);

} // namespace vchain
