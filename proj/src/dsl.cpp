#include "vchain/dsl.hpp"
#include "vchain/csv.hpp"

#include "lexer.hpp"

#include <charconv>
#include <limits>
#include <set>
#include <sstream>

namespace vchain {

using detail::Lexer;
using detail::SyntaxError;
using detail::Token;
using detail::TokenKind;

namespace {

constexpr int kMaxNesting = 256;

class ParserBase {
protected:
    explicit ParserBase(std::string_view src) : lex_(src) {}

    void error(SourcePos pos, std::string message) {
        diags_.push_back({Severity::Error, std::move(message), pos, {}});
    }

    bool peek_is(TokenKind kind) { return lex_.peek().kind == kind; }

    bool peek_keyword(std::string_view kw) {
        const auto& t = lex_.peek();
        return t.kind == TokenKind::Ident && t.text == kw;
    }

    Token expect(TokenKind kind, std::string_view what) {
        if (!peek_is(kind))
            detail::fail(lex_.peek().pos,
                         "expected " + std::string(what) + ", found " + detail::describe(lex_.peek()));
        return lex_.next();
    }

    Token expect_keyword(std::string_view kw) {
        if (!peek_keyword(kw))
            detail::fail(lex_.peek().pos,
                         "expected '" + std::string(kw) + "', found " + detail::describe(lex_.peek()));
        return lex_.next();
    }

    Token expect_identifier(std::string_view what) {
        Token t = expect(TokenKind::Ident, what);
        if (!is_identifier(t.text))
            detail::fail(t.pos, "invalid identifier '" + t.text + "' (expected [a-z_][a-z0-9_]*)");
        return t;
    }

    std::string expect_string(std::string_view what) { return expect(TokenKind::String, what).text; }

    long long expect_integer(std::string_view what) {
        Token t = expect(TokenKind::Number, what);
        if (t.text.find_first_of("./") != std::string::npos)
            detail::fail(t.pos, "expected integer for " + std::string(what) + ", found " + t.text);
        long long v = 0;
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc{} || v > std::numeric_limits<int>::max())
            detail::fail(t.pos, "integer too large: " + t.text);
        return v;
    }

    int expect_score(std::string_view key) {
        const auto& t = lex_.peek();
        if (t.kind == TokenKind::Number && t.text.find_first_of("./") != std::string::npos)
            detail::fail(t.pos, "fractional score " + t.text + " for '" + std::string(key) +
                                    "'; scores are integers 1..5");
        return static_cast<int>(expect_integer("score"));
    }

    void expect_end() {
        if (!peek_is(TokenKind::End))
            detail::fail(lex_.peek().pos, "unexpected " + detail::describe(lex_.peek()) + " after document");
    }

    /// Parses `{ (IDENT ":" INT)+ }` into a score map.
    ScoreMap score_block() {
        expect(TokenKind::LBrace, "\"{\"");
        ScoreMap scores;
        do {
            Token key = expect_identifier("indicator id");
            expect(TokenKind::Colon, "\":\"");
            const int value = expect_score(key.text);
            if (!scores.emplace(key.text, value).second) error(key.pos, "duplicate key '" + key.text + "'");
        } while (!peek_is(TokenKind::RBrace));
        lex_.next();
        return scores;
    }

    Lexer lex_;
    std::vector<Diagnostic> diags_;
};

class DocumentParser : ParserBase {
public:
    explicit DocumentParser(std::string_view src) : ParserBase(src) {}

    ParseResult<ValueChainModel> run() {
        ParseResult<ValueChainModel> result;
        try {
            ValueChainModel model = document();
            if (diags_.empty()) result.value = std::move(model);
        } catch (const SyntaxError& e) {
            diags_.push_back(e.diagnostic);
        }
        result.diagnostics = std::move(diags_);
        return result;
    }

private:
    ValueChainModel document() {
        ValueChainModel m;
        expect_keyword("valuechain");
        m.name = expect_string("model name string");
        expect(TokenKind::LBrace, "\"{\"");

        bool have_catalog = false;
        bool have_weights = false;
        Weights weights;
        for (;;) {
            const Token& t = lex_.peek();
            if (t.kind == TokenKind::RBrace) break;
            if (t.kind != TokenKind::Ident)
                detail::fail(t.pos, "expected section (catalog, weights, process, binding, fraud) or \"}\", found " +
                                        detail::describe(t));
            const SourcePos at = t.pos;
            if (t.text == "catalog") {
                if (have_catalog) error(at, "duplicate catalog section");
                m.catalog = catalog();
                have_catalog = true;
            } else if (t.text == "weights") {
                if (have_weights) error(at, "duplicate weights section");
                weights = weights_block();
                have_weights = true;
            } else if (t.text == "process") {
                m.processes.push_back(process());
            } else if (t.text == "binding") {
                m.bindings.push_back(binding());
            } else if (t.text == "fraud") {
                m.fraud_scenarios.push_back(fraud());
            } else {
                detail::fail(at, "expected section (catalog, weights, process, binding, fraud) or \"}\", found " +
                                     detail::describe(t));
            }
        }
        lex_.next();
        expect_end();

        if (!have_catalog) m.catalog = default_catalog();
        for (const auto& ind : m.catalog) weights.emplace(ind.id, Rational(1));
        m.weights = std::move(weights);
        return m;
    }

    Catalog catalog() {
        lex_.next();
        expect(TokenKind::LBrace, "\"{\"");
        Catalog cat;
        std::set<std::string> seen;
        do {
            Token id = expect_identifier("indicator id");
            expect(TokenKind::Colon, "\":\"");
            Token c = expect(TokenKind::Ident, "category (result, cost, security)");
            auto category = category_from_string(c.text);
            if (!category) detail::fail(c.pos, "unknown category '" + c.text + "' (expected result, cost, security)");
            std::string display = id.text;
            if (peek_is(TokenKind::String)) display = lex_.next().text;
            if (!seen.insert(id.text).second) error(id.pos, "duplicate key '" + id.text + "'");
            else cat.push_back({id.text, display, *category});
        } while (!peek_is(TokenKind::RBrace));
        lex_.next();
        return cat;
    }

    Weights weights_block() {
        lex_.next();
        expect(TokenKind::LBrace, "\"{\"");
        Weights w;
        do {
            Token id = expect_identifier("indicator id");
            expect(TokenKind::Colon, "\":\"");
            Token n = expect(TokenKind::Number, "weight");
            if (n.text.size() > 40) detail::fail(n.pos, "weight literal too long");
            auto value = parse_rational(n.text);
            if (!value) detail::fail(n.pos, "invalid weight '" + n.text + "'");
            if (!w.emplace(id.text, *value).second) error(id.pos, "duplicate key '" + id.text + "'");
        } while (!peek_is(TokenKind::RBrace));
        lex_.next();
        return w;
    }

    EndToEndProcess process() {
        lex_.next();
        EndToEndProcess p;
        p.name = expect_string("process name string");
        if (peek_keyword("core")) {
            lex_.next();
        } else if (peek_keyword("enabler")) {
            lex_.next();
            p.kind = ProcessKind::Enabler;
        }
        expect(TokenKind::LBrace, "\"{\" or process kind (core, enabler)");
        if (!peek_keyword("step")) detail::fail(lex_.peek().pos, "expected 'step', found " + detail::describe(lex_.peek()));
        while (peek_keyword("step")) p.steps.push_back(step());
        expect(TokenKind::RBrace, "'step' or \"}\"");
        return p;
    }

    ProcessStep step() {
        lex_.next();
        ProcessStep s;
        s.name = expect_string("step name string");
        expect(TokenKind::LBrace, "\"{\"");
        std::set<std::string> seen;
        do {
            Token key = expect_identifier("indicator id or attribute");
            expect(TokenKind::Colon, "\":\"");
            if (!seen.insert(key.text).second) error(key.pos, "duplicate key '" + key.text + "'");
            if (key.text == "sensitive_data") {
                Token b = expect(TokenKind::Ident, "true or false");
                if (b.text != "true" && b.text != "false")
                    detail::fail(b.pos, "expected true or false, found " + detail::describe(b));
                s.attributes.sensitive_data = b.text == "true";
            } else if (key.text == "org_units_involved") {
                s.attributes.org_units_involved = expect_integer("org_units_involved");
            } else if (key.text == "systems_involved") {
                s.attributes.systems_involved = expect_integer("systems_involved");
            } else if (key.text == "jurisdictions") {
                s.attributes.jurisdictions = expect_integer("jurisdictions");
            } else {
                s.scores[key.text] = expect_score(key.text);
            }
        } while (!peek_is(TokenKind::RBrace));
        lex_.next();
        return s;
    }

    DeploymentBinding binding() {
        lex_.next();
        DeploymentBinding b;
        b.step_ref = expect_string("binding name string");
        expect(TokenKind::LBrace, "\"{\"");
        expect_keyword("inhouse");
        b.inhouse_id = expect_string("in-house id string");
        b.inhouse_scores = score_block();
        expect_keyword("cloud");
        b.cloud_id = expect_string("cloud id string");
        b.cloud_scores = score_block();
        expect(TokenKind::RBrace, "\"}\"");
        return b;
    }

    FraudScenario fraud() {
        lex_.next();
        FraudScenario f;
        f.name = expect_string("fraud scenario name string");
        expect_keyword("on");
        f.step_ref = expect_string("step reference string");
        expect(TokenKind::LBrace, "\"{\"");
        bool have_p = false;
        bool have_d = false;
        while (!peek_is(TokenKind::RBrace)) {
            Token key = expect(TokenKind::Ident, "'probability' or 'damage'");
            expect(TokenKind::Colon, "\":\"");
            if (key.text == "probability") {
                if (have_p) error(key.pos, "duplicate key 'probability'");
                f.probability = static_cast<int>(expect_integer("probability"));
                have_p = true;
            } else if (key.text == "damage") {
                if (have_d) error(key.pos, "duplicate key 'damage'");
                f.damage = static_cast<int>(expect_integer("damage"));
                have_d = true;
            } else {
                detail::fail(key.pos, "expected 'probability' or 'damage', found " + detail::describe(key));
            }
        }
        const Token close = lex_.next();
        if (!have_p) error(close.pos, "fraud scenario missing 'probability'");
        if (!have_d) error(close.pos, "fraud scenario missing 'damage'");
        return f;
    }
};

std::optional<CompareOp> op_from(std::string_view s) {
    if (s == "<") return CompareOp::Less;
    if (s == "<=") return CompareOp::LessEqual;
    if (s == "=") return CompareOp::Equal;
    if (s == ">=") return CompareOp::GreaterEqual;
    if (s == ">") return CompareOp::Greater;
    return std::nullopt;
}

class TreeParser : ParserBase {
public:
    explicit TreeParser(std::string_view src) : ParserBase(src) {}

    ParseResult<DecisionTree> run() {
        ParseResult<DecisionTree> result;
        try {
            DecisionTree tree = document();
            if (diags_.empty()) result.value = std::move(tree);
        } catch (const SyntaxError& e) {
            diags_.push_back(e.diagnostic);
        }
        result.diagnostics = std::move(diags_);
        return result;
    }

private:
    DecisionTree document() {
        DecisionTree tree;
        expect_keyword("tree");
        tree.name = expect_string("tree name string");
        expect(TokenKind::LBrace, "\"{\"");
        while (peek_keyword("obligation")) {
            lex_.next();
            Obligation o;
            o.id = expect_string("obligation id string");
            if (peek_is(TokenKind::String)) o.description = lex_.next().text;
            tree.obligations.push_back(std::move(o));
        }
        tree.root = node(1);
        expect(TokenKind::RBrace, "\"}\"");
        expect_end();
        return tree;
    }

    DecisionNode node(int nesting) {
        const Token& t = lex_.peek();
        if (nesting > kMaxNesting) detail::fail(t.pos, "tree nesting exceeds " + std::to_string(kMaxNesting));
        if (t.kind == TokenKind::Ident && t.text == "pass") {
            lex_.next();
            return DecisionNode::leaf();
        }
        if (t.kind == TokenKind::Ident && t.text == "require") {
            std::vector<std::string> ids;
            while (peek_keyword("require")) {
                lex_.next();
                ids.push_back(expect_string("obligation id string"));
            }
            return DecisionNode::leaf(std::move(ids));
        }
        if (t.kind == TokenKind::Ident && t.text == "if") {
            lex_.next();
            Predicate pred = predicate();
            expect(TokenKind::LBrace, "\"{\"");
            DecisionNode then_node = node(nesting + 1);
            expect(TokenKind::RBrace, "\"}\"");
            expect_keyword("else");
            expect(TokenKind::LBrace, "\"{\"");
            DecisionNode else_node = node(nesting + 1);
            expect(TokenKind::RBrace, "\"}\"");
            return DecisionNode::branch(std::move(pred), std::move(then_node), std::move(else_node));
        }
        detail::fail(t.pos, "expected 'if', 'require' or 'pass', found " + detail::describe(t));
    }

    CompareOp op() {
        Token t = expect(TokenKind::Op, "comparison operator");
        return *op_from(t.text);
    }

    Predicate predicate() {
        if (peek_keyword("delta")) {
            lex_.next();
            DeltaTest d;
            d.indicator = expect_identifier("indicator id").text;
            d.op = op();
            Token c = expect(TokenKind::Ident, "risk category");
            auto cat = risk_category_from_identifier(c.text);
            if (!cat) detail::fail(c.pos, "unknown risk category '" + c.text + "'");
            d.category = *cat;
            return d;
        }
        Token id = expect_identifier("indicator id or attribute");
        if (!peek_is(TokenKind::Op)) return FlagTest{id.text};
        const CompareOp o = op();
        const long long literal = expect_integer("comparison literal");
        if (is_counter_attribute(id.text)) return CounterTest{id.text, o, literal};
        return IndicatorTest{id.text, o, literal};
    }
};

std::string quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default: out += c;
        }
    }
    return out + "\"";
}

void write_scores(std::ostringstream& os, const ScoreMap& scores, const Catalog& catalog,
                  const std::string& indent) {
    for (const auto& ind : catalog) {
        auto it = scores.find(ind.id);
        if (it != scores.end()) os << indent << ind.id << ": " << it->second << '\n';
    }
    for (const auto& [id, v] : scores)
        if (!find_indicator(catalog, id)) os << indent << id << ": " << v << '\n';
}

std::string predicate_text(const Predicate& p) {
    return std::visit(
        [](const auto& t) -> std::string {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, IndicatorTest>)
                return t.indicator + " " + to_string(t.op) + " " + std::to_string(t.literal);
            else if constexpr (std::is_same_v<T, FlagTest>)
                return t.attribute;
            else if constexpr (std::is_same_v<T, CounterTest>)
                return t.attribute + " " + to_string(t.op) + " " + std::to_string(t.literal);
            else
                return "delta " + t.indicator + " " + to_string(t.op) + " " + to_identifier(t.category);
        },
        p);
}

void write_node(std::ostringstream& os, const DecisionNode& n, int depth) {
    const std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
    if (n.is_leaf()) {
        if (n.obligations.empty()) os << indent << "pass\n";
        for (const auto& id : n.obligations) os << indent << "require " << quote(id) << '\n';
        return;
    }
    os << indent << "if " << predicate_text(*n.predicate) << " {\n";
    write_node(os, n.then_node(), depth + 1);
    os << indent << "} else {\n";
    write_node(os, n.else_node(), depth + 1);
    os << indent << "}\n";
}

} // namespace

ParseResult<ValueChainModel> parse(std::string_view source) {
    if (source.size() > kMaxSourceBytes) {
        ParseResult<ValueChainModel> r;
        r.diagnostics.push_back({Severity::Error, "input too large", SourcePos{1, 1}, {}});
        return r;
    }
    return DocumentParser(source).run();
}

ParseResult<DecisionTree> parse_tree(std::string_view source) {
    if (source.size() > kMaxSourceBytes) {
        ParseResult<DecisionTree> r;
        r.diagnostics.push_back({Severity::Error, "input too large", SourcePos{1, 1}, {}});
        return r;
    }
    return TreeParser(source).run();
}

std::string serialize(const ValueChainModel& model) {
    std::ostringstream os;
    os << "valuechain " << quote(model.name) << " {\n";

    if (model.catalog != default_catalog()) {
        os << "  catalog {\n";
        for (const auto& ind : model.catalog) {
            os << "    " << ind.id << ": " << to_string(ind.category);
            if (ind.display_name != ind.id) os << ' ' << quote(ind.display_name);
            os << '\n';
        }
        os << "  }\n";
    }
    if (model.weights != uniform_weights(model.catalog)) {
        os << "  weights {\n";
        for (const auto& ind : model.catalog) {
            auto it = model.weights.find(ind.id);
            if (it != model.weights.end()) os << "    " << ind.id << ": " << format_exact(it->second) << '\n';
        }
        for (const auto& [id, w] : model.weights)
            if (!find_indicator(model.catalog, id)) os << "    " << id << ": " << format_exact(w) << '\n';
        os << "  }\n";
    }
    for (const auto& p : model.processes) {
        os << "  process " << quote(p.name) << ' ' << to_string(p.kind) << " {\n";
        for (const auto& s : p.steps) {
            os << "    step " << quote(s.name) << " {\n";
            write_scores(os, s.scores, model.catalog, "      ");
            const auto& a = s.attributes;
            if (a.sensitive_data) os << "      sensitive_data: true\n";
            if (a.org_units_involved) os << "      org_units_involved: " << a.org_units_involved << '\n';
            if (a.systems_involved) os << "      systems_involved: " << a.systems_involved << '\n';
            if (a.jurisdictions) os << "      jurisdictions: " << a.jurisdictions << '\n';
            os << "    }\n";
        }
        os << "  }\n";
    }
    for (const auto& b : model.bindings) {
        os << "  binding " << quote(b.step_ref) << " {\n";
        os << "    inhouse " << quote(b.inhouse_id) << " {\n";
        write_scores(os, b.inhouse_scores, model.catalog, "      ");
        os << "    }\n";
        os << "    cloud " << quote(b.cloud_id) << " {\n";
        write_scores(os, b.cloud_scores, model.catalog, "      ");
        os << "    }\n";
        os << "  }\n";
    }
    for (const auto& f : model.fraud_scenarios) {
        os << "  fraud " << quote(f.name) << " on " << quote(f.step_ref) << " {\n";
        os << "    probability: " << f.probability << '\n';
        os << "    damage: " << f.damage << '\n';
        os << "  }\n";
    }
    os << "}\n";
    return os.str();
}

std::string serialize_tree(const DecisionTree& tree) {
    std::ostringstream os;
    os << "tree " << quote(tree.name) << " {\n";
    for (const auto& o : tree.obligations) {
        os << "  obligation " << quote(o.id);
        if (!o.description.empty()) os << ' ' << quote(o.description);
        os << '\n';
    }
    write_node(os, tree.root, 1);
    os << "}\n";
    return os.str();
}

ParseResult<EndToEndProcess> import_matrix_csv(std::string_view text, std::string_view process_name,
                                               const Catalog& catalog) {
    ParseResult<EndToEndProcess> result;
    auto& diags = result.diagnostics;
    auto err = [&](int line, int column, std::string msg) {
        diags.push_back({Severity::Error, std::move(msg), SourcePos{line, column}, {}});
    };

    const auto table = csv::read(text);
    if (!table.ok) {
        err(table.error_line, table.error_column, table.error);
        return result;
    }
    if (table.rows.empty()) {
        err(1, 1, "empty CSV: expected header row starting with 'indicator'");
        return result;
    }

    const auto& header = table.rows.front();
    if (header.fields.front() != "indicator") {
        err(header.line, header.columns.front(), "first header cell must be 'indicator'");
        return result;
    }
    if (header.fields.size() < 2) {
        err(header.line, header.columns.front(), "header names no steps");
        return result;
    }

    EndToEndProcess process;
    process.name = std::string(process_name);
    std::set<std::string> step_names;
    for (std::size_t j = 1; j < header.fields.size(); ++j) {
        if (header.fields[j].empty()) err(header.line, header.columns[j], "empty step name in column " + std::to_string(j + 1));
        else if (!step_names.insert(header.fields[j]).second)
            err(header.line, header.columns[j], "duplicate step name '" + header.fields[j] + "'");
        process.steps.push_back({header.fields[j], {}, {}});
    }

    if (table.rows.size() == 1) {
        err(header.line, 1, "no indicator rows");
        return result;
    }

    std::set<std::string> seen;
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        const std::string& id = row.fields.front();
        const std::string where = "row " + std::to_string(i + 1);
        if (!find_indicator(catalog, id)) {
            err(row.line, row.columns.front(), "unknown indicator '" + id + "' at " + where + ", column 1");
            continue;
        }
        if (!seen.insert(id).second) {
            err(row.line, row.columns.front(), "duplicate indicator row '" + id + "' at " + where);
            continue;
        }
        if (row.fields.size() != header.fields.size()) {
            err(row.line, row.columns.front(),
                where + " has " + std::to_string(row.fields.size()) + " cells, header has " +
                    std::to_string(header.fields.size()));
            continue;
        }
        for (std::size_t j = 1; j < row.fields.size(); ++j) {
            std::string_view cell = row.fields[j];
            while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) cell.remove_prefix(1);
            while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t')) cell.remove_suffix(1);
            const std::string at = where + ", column " + std::to_string(j + 1);
            int v = 0;
            auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (cell.empty() || ec != std::errc{} || ptr != cell.data() + cell.size()) {
                err(row.line, row.columns[j], "non-integer score '" + std::string(cell) + "' at " + at);
            } else if (!in_scale(v)) {
                err(row.line, row.columns[j], "score out of range 1..5 ('" + std::string(cell) + "' at " + at + ")");
            } else {
                process.steps[j - 1].scores[id] = v;
            }
        }
    }
    for (const auto& ind : catalog)
        if (!seen.count(ind.id)) {
            const auto& last = table.rows.back();
            err(last.line, 1, "missing indicator row '" + ind.id + "'");
        }

    if (diags.empty()) result.value = std::move(process);
    return result;
}

} // namespace vchain
