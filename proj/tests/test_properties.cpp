#include "doctest.h"

#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/roundtrip.hpp"

#include "vchain/cli.hpp"
#include "vchain/dsl.hpp"
#include "vchain/scoring.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

using namespace vchain;
using namespace vchain::test;

TEST_CASE("serialize then parse reproduces generated models") {
    Generator gen(1);
    for (int i = 0; i < 300; ++i) {
        const ValueChainModel m = gen.model();
        const std::string text = serialize(m);
        auto r = parse(text);
        REQUIRE_MESSAGE(r.ok(), text);
        CHECK(r.diagnostics.empty());
        CHECK(*r.value == m);
        CHECK(serialize(*r.value) == text);
    }
}

TEST_CASE("scores.csv round-trips for generated models") {
    Generator gen(2);
    for (int i = 0; i < 300; ++i) {
        const ValueChainModel m = gen.model();
        std::string why;
        CHECK_MESSAGE(csv_round_trips(m, &why), why);
    }
}

TEST_CASE("weight scaling leaves ranking and components unchanged") {
    Generator gen(3);
    for (int i = 0; i < 100; ++i) {
        const ValueChainModel m = gen.model();
        const Rational c(gen.uniform(1, 100000), 1000);
        const auto before = rank_processes(m);
        const auto after = rank_processes(scale_weights(m, c));
        REQUIRE(before.size() == after.size());
        for (std::size_t k = 0; k < before.size(); ++k) {
            CHECK(before[k].process == after[k].process);
            CHECK(before[k].affinity == after[k].affinity);
            CHECK(before[k].value_component == after[k].value_component);
            CHECK(before[k].risk_component == after[k].risk_component);
        }
    }
}

TEST_CASE("renderers are deterministic") {
    Generator gen(4);
    for (int i = 0; i < 50; ++i) {
        const ValueChainModel m = gen.model();
        const DecisionTree tree = m.catalog == default_catalog() ? default_tree()
                                                                 : DecisionTree{"none", {}, DecisionNode::leaf()};
        const auto bundle = build_bundle(m, tree);
        CHECK(export_structured(bundle) == export_structured(build_bundle(m, tree)));
        CHECK(export_csv(bundle) == export_csv(build_bundle(m, tree)));
    }
}

TEST_CASE("validate exit code agrees with parse and validate") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / ("vchain-prop-" + std::to_string(::getpid()));
    fs::create_directories(dir);

    Generator gen(5);
    for (int i = 0; i < 150; ++i) {
        ValueChainModel m = gen.model();
        std::string text = serialize(m);
        switch (i % 3) {
        case 1: {
            // semantic defect: push one score out of range
            auto& s = m.processes[0].steps[0];
            s.scores.begin()->second = gen.coin() ? 0 : 6;
            text = serialize(m);
            break;
        }
        case 2: {
            // syntactic defect: truncate the document
            text.resize(static_cast<std::size_t>(gen.uniform(0, static_cast<int>(text.size()) - 1)));
            break;
        }
        default: break;
        }

        int expected = 0;
        auto parsed = parse(text);
        if (!parsed.ok())
            expected = 2;
        else if (has_errors(validate(*parsed.value)))
            expected = 1;

        const fs::path file = dir / "m.vchain";
        std::ofstream(file, std::ios::binary | std::ios::trunc) << text;
        std::ostringstream out, err;
        const int code = cli::run({"validate", file.string()}, out, err);
        CHECK(code == expected);
        CHECK(out.str().empty());
        CHECK(err.str().empty() == (expected == 0));
    }
    fs::remove_all(dir);
}

TEST_CASE("parse errors stay inside the input") {
    Generator gen(6);
    for (int i = 0; i < 300; ++i) {
        std::string text = serialize(gen.model());
        const int edits = gen.uniform(1, 4);
        for (int e = 0; e < edits; ++e) {
            const auto at = static_cast<std::size_t>(gen.uniform(0, static_cast<int>(text.size()) - 1));
            text[at] = static_cast<char>(gen.uniform(0, 255));
        }
        auto r = parse(text);
        if (r.ok()) continue;
        REQUIRE_FALSE(r.diagnostics.empty());
        long long lines = 1 + std::count(text.begin(), text.end(), '\n');
        for (const auto& d : r.diagnostics) {
            REQUIRE(d.pos.has_value());
            CHECK(d.pos->line >= 1);
            CHECK(d.pos->column >= 1);
            CHECK(d.pos->line <= lines);
            CHECK(!d.message.empty());
        }
    }
}
