#include "vchain/scoring.hpp"
#include "vchain/error.hpp"

#include <algorithm>
#include <numeric>

namespace vchain {

const char* to_string(RiskClass c) {
    switch (c) {
    case RiskClass::Low: return "LOW";
    case RiskClass::Medium: return "MEDIUM";
    case RiskClass::High: return "HIGH";
    case RiskClass::Critical: return "CRITICAL";
    }
    return "?";
}

RiskClass classify_risk(int value) {
    if (value <= 4) return RiskClass::Low;
    if (value <= 9) return RiskClass::Medium;
    if (value <= 14) return RiskClass::High;
    return RiskClass::Critical;
}

RiskScore fraud_risk(int probability, int damage) {
    if (!in_scale(probability) || !in_scale(damage))
        throw Error(ErrorCode::InvalidArgument, "fraud probability and damage must be in 1..5");
    const int value = probability * damage;
    return {value, classify_risk(value)};
}

bool category_present(const Catalog& catalog, IndicatorCategory category) {
    return std::any_of(catalog.begin(), catalog.end(),
                       [&](const Indicator& i) { return i.category == category; });
}

bool category_scored(const Catalog& catalog, const Weights& weights, IndicatorCategory category) {
    for (const auto& ind : catalog) {
        if (ind.category != category) continue;
        auto it = weights.find(ind.id);
        if (it != weights.end() && it->second > 0) return true;
    }
    return false;
}

Rational step_category_score(const ProcessStep& step, IndicatorCategory category,
                             const Catalog& catalog, const Weights& weights) {
    Rational weighted_sum = 0;
    Rational weight_total = 0;
    for (const auto& ind : catalog) {
        if (ind.category != category) continue;
        auto w = weights.find(ind.id);
        if (w == weights.end() || w->second <= 0) continue;
        auto s = step.scores.find(ind.id);
        if (s == step.scores.end())
            throw Error(ErrorCode::InvalidArgument,
                        "step '" + step.name + "' has no score for '" + ind.id + "'");
        weighted_sum += w->second * s->second;
        weight_total += w->second;
    }
    if (weight_total == 0)
        throw Error(ErrorCode::EmptyCategory,
                    std::string("no weighted indicator in category ") + to_string(category));
    return weighted_sum / weight_total;
}

ProcessProfile process_profile(const EndToEndProcess& process, const Catalog& catalog,
                               const Weights& weights) {
    ProcessProfile profile;
    profile.process = process.name;
    for (const auto& step : process.steps) {
        StepProfile sp;
        sp.step = step.name;
        for (auto cat : kAllCategories)
            if (category_present(catalog, cat))
                sp.category_scores[cat] = step_category_score(step, cat, catalog, weights);
        profile.steps.push_back(std::move(sp));
    }
    if (profile.steps.empty()) return profile;

    for (auto cat : kAllCategories) {
        if (!category_present(catalog, cat)) continue;
        CategoryAggregate agg;
        Rational sum = 0;
        bool first = true;
        for (const auto& sp : profile.steps) {
            const Rational& v = sp.category_scores.at(cat);
            sum += v;
            if (first || v > agg.max) {
                agg.max = v;
                agg.max_step = sp.step;
                first = false;
            }
        }
        agg.mean = sum / static_cast<long long>(profile.steps.size());
        profile.aggregate[cat] = std::move(agg);
    }
    return profile;
}

AffinityResult cloud_affinity(const EndToEndProcess& process, const Catalog& catalog,
                              const Weights& weights) {
    for (auto cat : {IndicatorCategory::Result, IndicatorCategory::Security})
        if (!category_scored(catalog, weights, cat))
            throw Error(ErrorCode::EmptyCategory,
                        std::string("affinity needs a weighted ") + to_string(cat) + " indicator");
    if (process.steps.empty())
        throw Error(ErrorCode::InvalidArgument, "process '" + process.name + "' has no steps");

    Rational result_sum = 0;
    Rational security_sum = 0;
    for (const auto& step : process.steps) {
        result_sum += step_category_score(step, IndicatorCategory::Result, catalog, weights);
        security_sum += step_category_score(step, IndicatorCategory::Security, catalog, weights);
    }
    const auto n = static_cast<long long>(process.steps.size());
    AffinityResult r;
    r.process = process.name;
    r.value_component = (result_sum / n - 1) / 4;
    r.risk_component = (security_sum / n - 1) / 4;
    r.affinity = r.value_component - r.risk_component;
    return r;
}

std::vector<AffinityResult> rank_processes(const ValueChainModel& model) {
    std::vector<AffinityResult> results;
    results.reserve(model.processes.size());
    for (const auto& p : model.processes) results.push_back(cloud_affinity(p, model.catalog, model.weights));

    // stable_sort keeps declaration order for full ties
    std::stable_sort(results.begin(), results.end(), [](const AffinityResult& a, const AffinityResult& b) {
        if (a.affinity != b.affinity) return a.affinity > b.affinity;
        return a.risk_component < b.risk_component;
    });
    return results;
}

} // namespace vchain
