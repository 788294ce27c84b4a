#include "doctest.h"

#include "support/fixtures.hpp"

#include "vchain/dsl.hpp"
#include "vchain/error.hpp"
#include "vchain/gate.hpp"

using namespace vchain;
using namespace vchain::test;

namespace {

std::vector<std::string> ids(const std::vector<Obligation>& obligations) {
    std::vector<std::string> out;
    for (const auto& o : obligations) out.push_back(o.id);
    return out;
}

DecisionTree tree_from(std::string_view src) {
    auto r = parse_tree(src);
    REQUIRE(r.ok());
    return *r.value;
}

bool has(const std::vector<Diagnostic>& diags, Severity s, std::string_view needle) {
    for (const auto& d : diags)
        if (d.severity == s && d.message.find(needle) != std::string::npos) return true;
    return false;
}

} // namespace

TEST_CASE("evaluate the default tree") {
    const DecisionTree& t = default_tree();

    ProcessStep s = uniform_step("S", 1);
    s.attributes.sensitive_data = true;
    s.scores["compliance"] = 5;
    CHECK(ids(evaluate(t, s)) == std::vector<std::string>{"data-residency-review", "provider-dpa"});
    CHECK(evaluate(t, s)[1].description.find("processing agreement") != std::string::npos);

    s.scores["compliance"] = 3;
    CHECK(ids(evaluate(t, s)) == std::vector<std::string>{"provider-dpa"});

    CHECK(evaluate(t, uniform_step("S", 1)).empty());

    ProcessStep exposed = uniform_step("S", 1);
    exposed.scores["interfaces"] = 4;
    CHECK(ids(evaluate(t, exposed)) == std::vector<std::string>{"interface-pentest"});
}

TEST_CASE("single leaf tree") {
    DecisionTree t{"leaf", {{"x", "do x"}}, DecisionNode::leaf({"x"})};
    CHECK(ids(evaluate(t, uniform_step("S", 3))) == std::vector<std::string>{"x"});
    CHECK(ids(evaluate(t, DeltaReport{})) == std::vector<std::string>{"x"});
    CHECK(tree_depth(t.root) == 0);
    CHECK(validate_tree(t, default_catalog()).empty());
}

TEST_CASE("context mismatch") {
    const DeltaReport report = compare_binding(me21n_binding(), default_catalog());
    try {
        evaluate(default_tree(), report);
        FAIL("expected CONTEXT_MISMATCH");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ContextMismatch);
    }

    const DecisionTree delta_tree = tree_from(R"(tree "d" {
  obligation "exit-plan"
  if delta interfaces >= SIGNIFICANTLY_HIGHER { require "exit-plan" } else { pass }
})");
    CHECK_THROWS_AS(evaluate(delta_tree, uniform_step("S", 2)), Error);
    CHECK(ids(evaluate(delta_tree, report)) == std::vector<std::string>{"exit-plan"});

    const DecisionTree cloud_score = tree_from(R"(tree "c" {
  obligation "a"
  if interfaces = 5 { require "a" } else { pass }
})");
    CHECK(ids(evaluate(cloud_score, report)) == std::vector<std::string>{"a"});
}

TEST_CASE("validate_tree") {
    const Catalog c = default_catalog();
    CHECK(validate_tree(default_tree(), c).empty());

    SUBCASE("unknown indicator") {
        const auto d = validate_tree(tree_from(R"(tree "t" { if xyz >= 3 { pass } else { pass } })"), c);
        CHECK(has(d, Severity::Error, "xyz"));
    }
    SUBCASE("unknown delta indicator") {
        const auto d = validate_tree(tree_from(R"(tree "t" { if delta xyz > LOWER { pass } else { pass } })"), c);
        CHECK(has(d, Severity::Error, "xyz"));
    }
    SUBCASE("unreachable else") {
        const auto d = validate_tree(tree_from(R"(tree "t" { if interfaces >= 0 { pass } else { pass } })"), c);
        REQUIRE(d.size() == 1);
        CHECK(d[0].severity == Severity::Warning);
        CHECK(d[0].message.find("unreachable") != std::string::npos);
        CHECK(d[0].path == "tree:t/root/else");
    }
    SUBCASE("unreachable then") {
        const auto d = validate_tree(tree_from(R"(tree "t" { if roles > 5 { pass } else { pass } })"), c);
        CHECK(has(d, Severity::Warning, "then branch is unreachable"));
    }
    SUBCASE("duplicate obligation") {
        const auto d = validate_tree(tree_from(R"(tree "t" { obligation "a" obligation "a" pass })"), c);
        CHECK(has(d, Severity::Error, "duplicate obligation id 'a'"));
    }
    SUBCASE("undeclared obligation") {
        const auto d = validate_tree(tree_from(R"(tree "t" { require "ghost" })"), c);
        CHECK(has(d, Severity::Warning, "ghost"));
        CHECK_FALSE(has_errors(d));
    }
    SUBCASE("malformed branch") {
        DecisionTree t{"bad", {}, DecisionNode::leaf()};
        t.root.predicate = FlagTest{"sensitive_data"};
        t.root.children.push_back(DecisionNode::leaf());
        CHECK(has_errors(validate_tree(t, c)));
        CHECK_THROWS_AS(evaluate(t, uniform_step("S", 1)), Error);
    }
    SUBCASE("unknown attribute") {
        DecisionTree t{"bad", {}, DecisionNode::branch(FlagTest{"org_units_involved"}, DecisionNode::leaf(), DecisionNode::leaf())};
        CHECK(has(validate_tree(t, c), Severity::Error, "org_units_involved"));
    }
    SUBCASE("depth over the cap") {
        DecisionNode node = DecisionNode::leaf();
        for (int i = 0; i < kMaxTreeDepth + 1; ++i)
            node = DecisionNode::branch(IndicatorTest{"roles", CompareOp::GreaterEqual, 3}, node, DecisionNode::leaf());
        DecisionTree t{"deep", {}, node};
        CHECK(tree_depth(t.root) == 33);
        CHECK(has(validate_tree(t, c), Severity::Error, "exceeds 32"));
    }
    SUBCASE("depth at the cap") {
        DecisionNode node = DecisionNode::leaf();
        for (int i = 0; i < kMaxTreeDepth; ++i)
            node = DecisionNode::branch(IndicatorTest{"roles", CompareOp::GreaterEqual, 3}, node, DecisionNode::leaf());
        CHECK_FALSE(has_errors(validate_tree(DecisionTree{"deep", {}, node}, c)));
    }
}

TEST_CASE("gate_model") {
    ValueChainModel m = otc_model();
    const auto entries = gate_model(m, default_tree());
    REQUIRE(entries.size() == 6);
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(entries[i].kind == GateEntry::Kind::Step);
        CHECK(entries[i].ref == "Order-to-Cash." + kOtcSteps[i]);
    }
    CHECK(ids(entries[1].obligations) == std::vector<std::string>{"interface-pentest"});

    const DecisionTree empty{"empty", {}, DecisionNode::leaf()};
    for (const auto& e : gate_model(m, empty)) CHECK(e.obligations.empty());

    m.bindings.push_back(me21n_binding());
    CHECK(gate_model(m, default_tree()).size() == 6);

    const DecisionTree delta_tree = tree_from(R"(tree "d" {
  obligation "exit-plan"
  if delta interfaces >= HIGHER { require "exit-plan" } else { pass }
})");
    const auto with_binding = gate_model(m, delta_tree);
    REQUIRE(with_binding.size() == 1);
    CHECK(with_binding[0].kind == GateEntry::Kind::Binding);
    CHECK(with_binding[0].ref == "ME21N");
    CHECK(ids(with_binding[0].obligations) == std::vector<std::string>{"exit-plan"});
}

TEST_CASE("default tree is total and deterministic over all step contexts") {
    const DecisionTree& t = default_tree();
    int contexts = 0;
    ProcessStep s = uniform_step("S", 1);
    for (int code = 0; code < 3125; ++code) {
        int rest = code;
        for (const auto& id : kOtcIndicators) {
            s.scores[id] = rest % 5 + 1;
            rest /= 5;
        }
        for (bool sensitive : {false, true}) {
            s.attributes.sensitive_data = sensitive;
            const auto first = evaluate(t, s);
            CHECK(evaluate(t, s) == first);
            ++contexts;
        }
    }
    CHECK(contexts == 6250);
}
