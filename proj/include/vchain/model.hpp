#pragma once

#include "vchain/diagnostic.hpp"
#include "vchain/rational.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vchain {

inline constexpr int kScoreMin = 1;
inline constexpr int kScoreMax = 5;

constexpr bool in_scale(int v) { return v >= kScoreMin && v <= kScoreMax; }

enum class IndicatorCategory { Result, Cost, Security };

inline constexpr std::array<IndicatorCategory, 3> kAllCategories = {
    IndicatorCategory::Result, IndicatorCategory::Cost, IndicatorCategory::Security};

/// Lower-case DSL spelling: "result", "cost", "security".
const char* to_string(IndicatorCategory c);
std::optional<IndicatorCategory> category_from_string(std::string_view s);

struct Indicator {
    std::string id;
    std::string display_name;
    IndicatorCategory category = IndicatorCategory::Security;

    friend bool operator==(const Indicator&, const Indicator&) = default;
};

using Catalog = std::vector<Indicator>;

/// indicator id -> 1..5 score. Out-of-range values are representable so that
/// validate() can report them; scored models are always validated first.
using ScoreMap = std::map<std::string, int>;

/// indicator id -> non-negative weight.
using Weights = std::map<std::string, Rational>;

struct StepAttributes {
    bool sensitive_data = false;
    long long org_units_involved = 0;
    long long systems_involved = 0;
    long long jurisdictions = 0;

    friend bool operator==(const StepAttributes&, const StepAttributes&) = default;
};

/// True for ASCII identifiers [a-z_][a-z0-9_]*.
bool is_identifier(std::string_view s);

/// Attribute names reserved in step blocks; they can never be indicator ids.
bool is_attribute_name(std::string_view name);
bool is_counter_attribute(std::string_view name);

/// Reads a counter attribute by name; nullopt for anything else.
std::optional<long long> counter_value(const StepAttributes& attrs, std::string_view name);

struct ProcessStep {
    std::string name;
    ScoreMap scores;
    StepAttributes attributes;

    friend bool operator==(const ProcessStep&, const ProcessStep&) = default;
};

enum class ProcessKind { Core, Enabler };

const char* to_string(ProcessKind k);

struct EndToEndProcess {
    std::string name;
    ProcessKind kind = ProcessKind::Core;
    std::vector<ProcessStep> steps;

    friend bool operator==(const EndToEndProcess&, const EndToEndProcess&) = default;
};

/// In-house implementation paired with a candidate cloud service. step_ref
/// names the binding: either "process.step" or a free transaction id.
struct DeploymentBinding {
    std::string step_ref;
    std::string inhouse_id;
    std::string cloud_id;
    ScoreMap inhouse_scores;
    ScoreMap cloud_scores;

    friend bool operator==(const DeploymentBinding&, const DeploymentBinding&) = default;
};

struct FraudScenario {
    std::string name;
    std::string step_ref;
    int probability = 1;
    int damage = 1;

    friend bool operator==(const FraudScenario&, const FraudScenario&) = default;
};

struct ValueChainModel {
    std::string name;
    Catalog catalog;
    Weights weights;
    std::vector<EndToEndProcess> processes;
    std::vector<DeploymentBinding> bindings;
    std::vector<FraudScenario> fraud_scenarios;

    friend bool operator==(const ValueChainModel&, const ValueChainModel&) = default;
};

/// The five Order-to-Cash indicators in table order: interfaces,
/// business_relevance, compliance, roles, asset.
Catalog default_catalog();

/// Weight 1 for every catalog indicator.
Weights uniform_weights(const Catalog& catalog);

const Indicator* find_indicator(const Catalog& catalog, std::string_view id);

/// Empty iff every invariant and cross-reference holds.
std::vector<Diagnostic> validate(const ValueChainModel& model);

struct StepLocation {
    const EndToEndProcess* process = nullptr;
    const ProcessStep* step = nullptr;
};

/// Resolves "process.step" or an unambiguous bare step name.
/// Throws Error{NotFound} or Error{Ambiguous}.
const ProcessStep& resolve_step(const ValueChainModel& model, std::string_view ref);
StepLocation locate_step(const ValueChainModel& model, std::string_view ref);

std::string qualified_name(const EndToEndProcess& process, const ProcessStep& step);

} // namespace vchain
