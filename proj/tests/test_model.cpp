#include "doctest.h"

#include "support/fixtures.hpp"
#include "support/generators.hpp"

#include "vchain/error.hpp"
#include "vchain/model.hpp"

using namespace vchain;
using namespace vchain::test;

namespace {

ErrorCode error_code_of(const ValueChainModel& m, std::string_view ref) {
    try {
        resolve_step(m, ref);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected resolve_step to throw");
    return ErrorCode::InvalidArgument;
}

std::size_t count_errors(const std::vector<Diagnostic>& diags) {
    std::size_t n = 0;
    for (const auto& d : diags) n += d.is_error() ? 1 : 0;
    return n;
}

} // namespace

TEST_CASE("default catalog") {
    const Catalog c = default_catalog();
    REQUIRE(c.size() == 5);
    CHECK(c[0].id == "interfaces");
    CHECK(c[1].id == "business_relevance");
    CHECK(c[2].id == "compliance");
    CHECK(c[3].id == "roles");
    CHECK(c[4].id == "asset");
    CHECK(find_indicator(c, "business_relevance")->category == IndicatorCategory::Result);
    CHECK(find_indicator(c, "interfaces")->category == IndicatorCategory::Security);
    CHECK(find_indicator(c, "nope") == nullptr);
    CHECK(default_catalog() == c);
}

TEST_CASE("identifiers and attribute names") {
    CHECK(is_identifier("interfaces"));
    CHECK(is_identifier("_x9"));
    CHECK_FALSE(is_identifier(""));
    CHECK_FALSE(is_identifier("9x"));
    CHECK_FALSE(is_identifier("Interfaces"));
    CHECK_FALSE(is_identifier("a-b"));
    CHECK(is_attribute_name("sensitive_data"));
    CHECK(is_counter_attribute("jurisdictions"));
    CHECK_FALSE(is_counter_attribute("sensitive_data"));

    StepAttributes a;
    a.systems_involved = 3;
    CHECK(counter_value(a, "systems_involved") == 3);
    CHECK_FALSE(counter_value(a, "interfaces").has_value());
}

TEST_CASE("validate accepts the order-to-cash matrix") {
    CHECK(validate(otc_model()).empty());
}

TEST_CASE("validate reports a missing score") {
    ValueChainModel m = otc_model();
    m.processes[0].steps[5].scores.erase("roles");
    const auto diags = validate(m);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].is_error());
    CHECK(diags[0].message.find("roles") != std::string::npos);
    CHECK(diags[0].path.find("Payment") != std::string::npos);
}

TEST_CASE("validate reports duplicate step names") {
    ValueChainModel m = otc_model();
    m.processes[0].steps[1].name = "Order";
    const auto diags = validate(m);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].message.find("duplicate step name") != std::string::npos);
}

TEST_CASE("validate range, weights and cross references") {
    SUBCASE("out of range score") {
        ValueChainModel m = otc_model();
        m.processes[0].steps[0].scores["asset"] = 7;
        const auto diags = validate(m);
        REQUIRE(diags.size() == 1);
        CHECK(diags[0].message.find("out of range 1..5") != std::string::npos);
    }
    SUBCASE("unknown indicator") {
        ValueChainModel m = otc_model();
        m.processes[0].steps[0].scores["xyz"] = 2;
        CHECK(count_errors(validate(m)) == 1);
    }
    SUBCASE("negative weight") {
        ValueChainModel m = otc_model();
        m.weights["roles"] = -1;
        CHECK(count_errors(validate(m)) >= 1);
    }
    SUBCASE("all weights of a category zero") {
        ValueChainModel m = otc_model();
        m.weights["business_relevance"] = 0;
        CHECK(count_errors(validate(m)) == 1);
    }
    SUBCASE("fraud scenario on unknown step") {
        ValueChainModel m = otc_model();
        m.fraud_scenarios.push_back({"F", "Order-to-Cash.Nope", 2, 2});
        CHECK(count_errors(validate(m)) == 1);
    }
    SUBCASE("fraud probability out of range") {
        ValueChainModel m = otc_model();
        m.fraud_scenarios.push_back({"F", "Order-to-Cash.Order", 6, 2});
        CHECK(count_errors(validate(m)) == 1);
    }
    SUBCASE("binding missing a cloud score") {
        ValueChainModel m = otc_model();
        m.bindings.push_back(me21n_binding());
        m.bindings[0].cloud_scores.erase("asset");
        CHECK(count_errors(validate(m)) == 1);
    }
    SUBCASE("empty catalog") {
        ValueChainModel m;
        m.name = "empty";
        CHECK(count_errors(validate(m)) >= 1);
    }
    SUBCASE("negative counter") {
        ValueChainModel m = otc_model();
        m.processes[0].steps[2].attributes.jurisdictions = -1;
        CHECK(count_errors(validate(m)) == 1);
    }
}

TEST_CASE("resolve_step") {
    ValueChainModel m = otc_model();
    CHECK(resolve_step(m, "Order-to-Cash.Payment").scores.at("interfaces") == 4);
    CHECK(resolve_step(m, "Payment").name == "Payment");
    CHECK(error_code_of(m, "Order-to-Cash.Nonexistent") == ErrorCode::NotFound);

    EndToEndProcess other;
    other.name = "Procure-to-Pay";
    other.steps.push_back(uniform_step("Order", 2));
    m.processes.push_back(other);
    CHECK(error_code_of(m, "Order") == ErrorCode::Ambiguous);
    CHECK(resolve_step(m, "Procure-to-Pay.Order").scores.at("roles") == 2);
    CHECK(resolve_step(m, "Order-to-Cash.Order").scores.at("roles") == 3);
}

TEST_CASE("resolve_step handles dots inside names") {
    ValueChainModel m = otc_model();
    EndToEndProcess p;
    p.name = "A.B";
    p.steps.push_back(uniform_step("C.D", 2));
    m.processes.push_back(p);
    CHECK(resolve_step(m, "A.B.C.D").name == "C.D");
    CHECK(error_code_of(m, "A.B.C") == ErrorCode::NotFound);
}

TEST_CASE("generated models: idempotent validation and enumerable paths") {
    Generator gen(20261016);
    for (int i = 0; i < 200; ++i) {
        const ValueChainModel m = gen.model();
        const ValueChainModel before = m;
        REQUIRE(validate(m).empty());
        CHECK(validate(m).empty());
        CHECK(m == before);

        for (const auto& p : m.processes) {
            for (const auto& s : p.steps) {
                CHECK(s.scores.size() == m.catalog.size());
                for (const auto& [id, v] : s.scores) CHECK(in_scale(v));
                CHECK(&resolve_step(m, qualified_name(p, s)) == &s);
                CHECK(error_code_of(m, qualified_name(p, s) + "x") == ErrorCode::NotFound);
            }
        }
    }
}
