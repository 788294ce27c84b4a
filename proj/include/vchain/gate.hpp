#pragma once

#include "vchain/delta.hpp"
#include "vchain/diagnostic.hpp"
#include "vchain/model.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace vchain {

inline constexpr int kMaxTreeDepth = 32;

enum class CompareOp { Less, LessEqual, Equal, GreaterEqual, Greater };

const char* to_string(CompareOp op);

template <typename T>
constexpr bool compare(const T& lhs, CompareOp op, const T& rhs) {
    switch (op) {
    case CompareOp::Less: return lhs < rhs;
    case CompareOp::LessEqual: return lhs <= rhs;
    case CompareOp::Equal: return lhs == rhs;
    case CompareOp::GreaterEqual: return lhs >= rhs;
    case CompareOp::Greater: return lhs > rhs;
    }
    return false;
}

/// `interfaces >= 4`
struct IndicatorTest {
    std::string indicator;
    CompareOp op = CompareOp::GreaterEqual;
    long long literal = 1;

    friend bool operator==(const IndicatorTest&, const IndicatorTest&) = default;
};

/// `sensitive_data`
struct FlagTest {
    std::string attribute;

    friend bool operator==(const FlagTest&, const FlagTest&) = default;
};

/// `org_units_involved > 2`
struct CounterTest {
    std::string attribute;
    CompareOp op = CompareOp::GreaterEqual;
    long long literal = 0;

    friend bool operator==(const CounterTest&, const CounterTest&) = default;
};

/// `delta interfaces >= HIGHER`; only meaningful on a DeltaReport.
struct DeltaTest {
    std::string indicator;
    CompareOp op = CompareOp::GreaterEqual;
    RiskCategory category = RiskCategory::Higher;

    friend bool operator==(const DeltaTest&, const DeltaTest&) = default;
};

using Predicate = std::variant<IndicatorTest, FlagTest, CounterTest, DeltaTest>;

/// A leaf (no predicate, no children) or a branch (predicate plus exactly
/// two children: then, else).
struct DecisionNode {
    std::optional<Predicate> predicate;
    std::vector<DecisionNode> children;
    std::vector<std::string> obligations;

    static DecisionNode leaf(std::vector<std::string> obligations = {});
    static DecisionNode branch(Predicate predicate, DecisionNode then_node, DecisionNode else_node);

    bool is_leaf() const { return !predicate.has_value(); }
    const DecisionNode& then_node() const { return children.at(0); }
    const DecisionNode& else_node() const { return children.at(1); }

    friend bool operator==(const DecisionNode&, const DecisionNode&) = default;
};

struct Obligation {
    std::string id;
    std::string description;

    friend bool operator==(const Obligation&, const Obligation&) = default;
};

struct DecisionTree {
    std::string name;
    std::vector<Obligation> obligations;
    DecisionNode root;

    friend bool operator==(const DecisionTree&, const DecisionTree&) = default;
};

/// Branch depth of the deepest path (a single leaf has depth 0).
int tree_depth(const DecisionNode& node);
bool uses_delta_predicates(const DecisionNode& node);

/// Follows one root-to-leaf path. Throws Error{ContextMismatch} when a
/// predicate reads data the context kind does not carry. On a delta report
/// indicator tests read the cloud score.
std::vector<Obligation> evaluate(const DecisionTree& tree, const ProcessStep& step);
std::vector<Obligation> evaluate(const DecisionTree& tree, const DeltaReport& report);

std::vector<Diagnostic> validate_tree(const DecisionTree& tree, const Catalog& catalog);

struct GateEntry {
    enum class Kind { Step, Binding };

    Kind kind = Kind::Step;
    std::string ref;
    std::vector<Obligation> obligations;

    friend bool operator==(const GateEntry&, const GateEntry&) = default;
};

/// Every step in declaration order. A tree with delta predicates can only
/// be answered by delta reports, so it is evaluated over every binding instead.
std::vector<GateEntry> gate_model(const ValueChainModel& model, const DecisionTree& tree);

std::string_view default_tree_source();
const DecisionTree& default_tree();

} // namespace vchain
