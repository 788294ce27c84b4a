#include "vchain/gate.hpp"
#include "vchain/dsl.hpp"
#include "vchain/error.hpp"

#include "default_tree_data.hpp"

#include <algorithm>
#include <set>

namespace vchain {

namespace {

struct Context {
    const ProcessStep* step = nullptr;
    const DeltaReport* delta = nullptr;

    const char* kind() const { return step ? "step" : "delta report"; }
};

[[noreturn]] void mismatch(const Context& ctx, const std::string& what) {
    throw Error(ErrorCode::ContextMismatch, what + " is not available on a " + ctx.kind() + " context");
}

bool holds(const Predicate& pred, const Context& ctx) {
    return std::visit(
        [&](const auto& t) -> bool {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, IndicatorTest>) {
                if (ctx.step) {
                    auto it = ctx.step->scores.find(t.indicator);
                    if (it == ctx.step->scores.end()) mismatch(ctx, "indicator '" + t.indicator + "'");
                    return compare<long long>(it->second, t.op, t.literal);
                }
                const DeltaRow* row = ctx.delta->find(t.indicator);
                if (!row) mismatch(ctx, "indicator '" + t.indicator + "'");
                return compare<long long>(row->cloud, t.op, t.literal);
            } else if constexpr (std::is_same_v<T, FlagTest>) {
                if (!ctx.step || t.attribute != "sensitive_data") mismatch(ctx, "attribute '" + t.attribute + "'");
                return ctx.step->attributes.sensitive_data;
            } else if constexpr (std::is_same_v<T, CounterTest>) {
                if (!ctx.step) mismatch(ctx, "attribute '" + t.attribute + "'");
                auto v = counter_value(ctx.step->attributes, t.attribute);
                if (!v) mismatch(ctx, "attribute '" + t.attribute + "'");
                return compare(*v, t.op, t.literal);
            } else {
                if (!ctx.delta) mismatch(ctx, "delta category of '" + t.indicator + "'");
                const DeltaRow* row = ctx.delta->find(t.indicator);
                if (!row) mismatch(ctx, "indicator '" + t.indicator + "'");
                return compare(static_cast<int>(row->category), t.op, static_cast<int>(t.category));
            }
        },
        pred);
}

std::vector<Obligation> run(const DecisionTree& tree, const Context& ctx) {
    const DecisionNode* node = &tree.root;
    while (!node->is_leaf()) {
        if (node->children.size() != 2)
            throw Error(ErrorCode::InvalidArgument, "malformed branch in tree '" + tree.name + "'");
        node = holds(*node->predicate, ctx) ? &node->children[0] : &node->children[1];
    }
    std::vector<Obligation> out;
    out.reserve(node->obligations.size());
    for (const auto& id : node->obligations) {
        auto it = std::find_if(tree.obligations.begin(), tree.obligations.end(),
                               [&](const Obligation& o) { return o.id == id; });
        out.push_back(it != tree.obligations.end() ? *it : Obligation{id, {}});
    }
    return out;
}

/// Truth values of the predicate over its whole domain: {sometimes true, sometimes false}.
std::pair<bool, bool> reachability(const Predicate& pred) {
    bool can_true = false;
    bool can_false = false;
    auto note = [&](bool b) { (b ? can_true : can_false) = true; };
    std::visit(
        [&](const auto& t) {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, IndicatorTest>) {
                for (long long v = kScoreMin; v <= kScoreMax; ++v) note(compare(v, t.op, t.literal));
            } else if constexpr (std::is_same_v<T, FlagTest>) {
                note(true);
                note(false);
            } else if constexpr (std::is_same_v<T, CounterTest>) {
                // a comparison against L only changes value around L
                for (long long v : {0LL, t.literal - 1, t.literal, t.literal + 1})
                    if (v >= 0) note(compare(v, t.op, t.literal));
            } else {
                for (int c = 0; c <= static_cast<int>(RiskCategory::SignificantlyHigher); ++c)
                    note(compare(c, t.op, static_cast<int>(t.category)));
            }
        },
        pred);
    return {can_true, can_false};
}

class TreeValidator {
public:
    TreeValidator(const DecisionTree& tree, const Catalog& catalog) : tree_(tree), catalog_(catalog) {}

    std::vector<Diagnostic> run() {
        std::set<std::string> seen;
        for (const auto& o : tree_.obligations) {
            if (o.id.empty()) add(Severity::Error, "obligations", "obligation id is empty");
            if (!seen.insert(o.id).second)
                add(Severity::Error, "obligations", "duplicate obligation id '" + o.id + "'");
        }
        const int depth = tree_depth(tree_.root);
        if (depth > kMaxTreeDepth)
            add(Severity::Error, "root",
                "tree depth " + std::to_string(depth) + " exceeds " + std::to_string(kMaxTreeDepth));
        walk(tree_.root, "root", 0);
        return std::move(diags_);
    }

private:
    void add(Severity s, std::string path, std::string message) {
        diags_.push_back({s, std::move(message), std::nullopt, "tree:" + tree_.name + "/" + path});
    }

    void check_indicator(const std::string& id, const std::string& path) {
        if (!find_indicator(catalog_, id)) add(Severity::Error, path, "unknown indicator '" + id + "'");
    }

    void walk(const DecisionNode& n, const std::string& path, int depth) {
        if (depth > kMaxTreeDepth + 1) return;
        if (n.is_leaf()) {
            if (!n.children.empty()) add(Severity::Error, path, "leaf node has children");
            for (const auto& id : n.obligations) {
                const bool declared = std::any_of(tree_.obligations.begin(), tree_.obligations.end(),
                                                  [&](const Obligation& o) { return o.id == id; });
                if (!declared) add(Severity::Warning, path, "obligation '" + id + "' is not declared");
            }
            return;
        }
        if (n.children.size() != 2) {
            add(Severity::Error, path, "branch must have exactly two children");
            return;
        }
        if (!n.obligations.empty()) add(Severity::Error, path, "branch node carries obligations");

        std::visit(
            [&](const auto& t) {
                using T = std::decay_t<decltype(t)>;
                if constexpr (std::is_same_v<T, IndicatorTest> || std::is_same_v<T, DeltaTest>) {
                    check_indicator(t.indicator, path);
                } else if constexpr (std::is_same_v<T, FlagTest>) {
                    if (t.attribute != "sensitive_data")
                        add(Severity::Error, path, "unknown boolean attribute '" + t.attribute + "'");
                } else {
                    if (!is_counter_attribute(t.attribute))
                        add(Severity::Error, path, "unknown counter attribute '" + t.attribute + "'");
                    if (t.literal < 0) add(Severity::Error, path, "counter literal must be non-negative");
                }
            },
            *n.predicate);

        const auto [can_true, can_false] = reachability(*n.predicate);
        if (!can_false) add(Severity::Warning, path + "/else", "else branch is unreachable (predicate always true)");
        if (!can_true) add(Severity::Warning, path + "/then", "then branch is unreachable (predicate always false)");

        walk(n.children[0], path + "/then", depth + 1);
        walk(n.children[1], path + "/else", depth + 1);
    }

    const DecisionTree& tree_;
    const Catalog& catalog_;
    std::vector<Diagnostic> diags_;
};

} // namespace

const char* to_string(CompareOp op) {
    switch (op) {
    case CompareOp::Less: return "<";
    case CompareOp::LessEqual: return "<=";
    case CompareOp::Equal: return "=";
    case CompareOp::GreaterEqual: return ">=";
    case CompareOp::Greater: return ">";
    }
    return "?";
}

DecisionNode DecisionNode::leaf(std::vector<std::string> obligations) {
    DecisionNode n;
    n.obligations = std::move(obligations);
    return n;
}

DecisionNode DecisionNode::branch(Predicate predicate, DecisionNode then_node, DecisionNode else_node) {
    DecisionNode n;
    n.predicate = std::move(predicate);
    n.children.reserve(2);
    n.children.push_back(std::move(then_node));
    n.children.push_back(std::move(else_node));
    return n;
}

int tree_depth(const DecisionNode& node) {
    int deepest = 0;
    for (const auto& c : node.children) deepest = std::max(deepest, tree_depth(c));
    return node.is_leaf() ? 0 : deepest + 1;
}

bool uses_delta_predicates(const DecisionNode& node) {
    if (node.predicate && std::holds_alternative<DeltaTest>(*node.predicate)) return true;
    return std::any_of(node.children.begin(), node.children.end(),
                       [](const DecisionNode& c) { return uses_delta_predicates(c); });
}

std::vector<Obligation> evaluate(const DecisionTree& tree, const ProcessStep& step) {
    return run(tree, Context{&step, nullptr});
}

std::vector<Obligation> evaluate(const DecisionTree& tree, const DeltaReport& report) {
    return run(tree, Context{nullptr, &report});
}

std::vector<Diagnostic> validate_tree(const DecisionTree& tree, const Catalog& catalog) {
    return TreeValidator(tree, catalog).run();
}

std::vector<GateEntry> gate_model(const ValueChainModel& model, const DecisionTree& tree) {
    std::vector<GateEntry> entries;
    if (uses_delta_predicates(tree.root)) {
        for (const auto& report : compare_all(model))
            entries.push_back({GateEntry::Kind::Binding, report.binding, evaluate(tree, report)});
        return entries;
    }
    for (const auto& p : model.processes)
        for (const auto& s : p.steps)
            entries.push_back({GateEntry::Kind::Step, qualified_name(p, s), evaluate(tree, s)});
    return entries;
}

std::string_view default_tree_source() {
    return detail::kDefaultTreeSource;
}

const DecisionTree& default_tree() {
    static const DecisionTree tree = [] {
        auto parsed = parse_tree(default_tree_source());
        if (!parsed.ok()) throw Error(ErrorCode::InvalidArgument, "shipped default tree does not parse");
        return std::move(*parsed.value);
    }();
    return tree;
}

} // namespace vchain
