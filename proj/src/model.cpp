#include "vchain/model.hpp"
#include "vchain/error.hpp"

#include <set>

namespace vchain {

namespace {

constexpr std::string_view kAttributeNames[] = {
    "sensitive_data", "org_units_involved", "systems_involved", "jurisdictions"};

class Validator {
public:
    explicit Validator(const ValueChainModel& model) : model_(model) {}

    std::vector<Diagnostic> run() {
        check_catalog();
        check_weights();
        check_processes();
        check_bindings();
        check_fraud();
        return std::move(diags_);
    }

private:
    void error(std::string path, std::string message) {
        diags_.push_back({Severity::Error, std::move(message), std::nullopt, std::move(path)});
    }

    void check_catalog() {
        if (model_.catalog.empty()) {
            error("catalog", "catalog is empty");
            return;
        }
        std::set<std::string> seen;
        for (const auto& ind : model_.catalog) {
            const std::string path = "catalog/indicator:" + ind.id;
            if (!is_identifier(ind.id))
                error(path, "indicator id '" + ind.id + "' is not an identifier [a-z_][a-z0-9_]*");
            if (is_attribute_name(ind.id))
                error(path, "indicator id '" + ind.id + "' collides with a step attribute");
            if (!seen.insert(ind.id).second)
                error(path, "duplicate indicator '" + ind.id + "'");
            if (ind.display_name.empty())
                error(path, "indicator '" + ind.id + "' has an empty display name");
        }
    }

    void check_weights() {
        for (const auto& [id, w] : model_.weights) {
            if (!find_indicator(model_.catalog, id))
                error("weights/" + id, "weight for unknown indicator '" + id + "'");
            if (w < 0)
                error("weights/" + id, "weight for '" + id + "' is negative");
        }
        for (const auto& ind : model_.catalog)
            if (!model_.weights.count(ind.id))
                error("weights/" + ind.id, "missing weight for indicator '" + ind.id + "'");

        for (auto cat : kAllCategories) {
            bool present = false;
            bool positive = false;
            for (const auto& ind : model_.catalog) {
                if (ind.category != cat) continue;
                present = true;
                auto it = model_.weights.find(ind.id);
                if (it != model_.weights.end() && it->second > 0) positive = true;
            }
            if (present && !positive)
                error("weights", std::string("category ") + to_string(cat) + " has no indicator with weight > 0");
        }
    }

    void check_scores(const std::string& path, const ScoreMap& scores) {
        for (const auto& ind : model_.catalog)
            if (!scores.count(ind.id))
                error(path + "/indicator:" + ind.id,
                      "missing score for indicator '" + ind.id + "' in " + path);
        for (const auto& [id, value] : scores) {
            if (!find_indicator(model_.catalog, id))
                error(path + "/indicator:" + id, "unknown indicator '" + id + "'");
            else if (!in_scale(value))
                error(path + "/indicator:" + id,
                      "score " + std::to_string(value) + " for '" + id + "' out of range 1..5");
        }
    }

    void check_processes() {
        std::set<std::string> names;
        for (const auto& proc : model_.processes) {
            const std::string path = "process:" + proc.name;
            if (proc.name.empty()) error(path, "process name is empty");
            if (!names.insert(proc.name).second) error(path, "duplicate process name '" + proc.name + "'");
            if (proc.steps.empty()) error(path, "process '" + proc.name + "' has no steps");

            std::set<std::string> steps;
            for (const auto& step : proc.steps) {
                const std::string step_path = path + "/step:" + step.name;
                if (step.name.empty()) error(step_path, "step name is empty");
                if (!steps.insert(step.name).second)
                    error(step_path, "duplicate step name '" + step.name + "'");
                check_scores(step_path, step.scores);
                const auto& a = step.attributes;
                if (a.org_units_involved < 0 || a.systems_involved < 0 || a.jurisdictions < 0)
                    error(step_path, "attribute counters must be non-negative");
            }
        }
    }

    void check_bindings() {
        std::set<std::string> names;
        for (const auto& b : model_.bindings) {
            const std::string path = "binding:" + b.step_ref;
            if (b.step_ref.empty()) error(path, "binding name is empty");
            if (!names.insert(b.step_ref).second) error(path, "duplicate binding '" + b.step_ref + "'");
            check_scores(path + "/inhouse", b.inhouse_scores);
            check_scores(path + "/cloud", b.cloud_scores);
        }
    }

    void check_fraud() {
        std::set<std::string> names;
        for (const auto& f : model_.fraud_scenarios) {
            const std::string path = "fraud:" + f.name;
            if (f.name.empty()) error(path, "fraud scenario name is empty");
            if (!names.insert(f.name).second) error(path, "duplicate fraud scenario '" + f.name + "'");
            if (!in_scale(f.probability)) error(path, "probability out of range 1..5");
            if (!in_scale(f.damage)) error(path, "damage out of range 1..5");
            try {
                locate_step(model_, f.step_ref);
            } catch (const Error& e) {
                error(path, "step reference '" + f.step_ref + "': " + e.what());
            }
        }
    }

    const ValueChainModel& model_;
    std::vector<Diagnostic> diags_;
};

} // namespace

const char* to_string(IndicatorCategory c) {
    switch (c) {
    case IndicatorCategory::Result: return "result";
    case IndicatorCategory::Cost: return "cost";
    case IndicatorCategory::Security: return "security";
    }
    return "?";
}

std::optional<IndicatorCategory> category_from_string(std::string_view s) {
    for (auto c : kAllCategories)
        if (s == to_string(c)) return c;
    return std::nullopt;
}

const char* to_string(ProcessKind k) {
    return k == ProcessKind::Core ? "core" : "enabler";
}

bool is_identifier(std::string_view s) {
    if (s.empty()) return false;
    auto lower = [](char c) { return (c >= 'a' && c <= 'z') || c == '_'; };
    if (!lower(s.front())) return false;
    for (char c : s)
        if (!lower(c) && !(c >= '0' && c <= '9')) return false;
    return true;
}

bool is_attribute_name(std::string_view name) {
    for (auto a : kAttributeNames)
        if (a == name) return true;
    return false;
}

bool is_counter_attribute(std::string_view name) {
    return is_attribute_name(name) && name != "sensitive_data";
}

std::optional<long long> counter_value(const StepAttributes& attrs, std::string_view name) {
    if (name == "org_units_involved") return attrs.org_units_involved;
    if (name == "systems_involved") return attrs.systems_involved;
    if (name == "jurisdictions") return attrs.jurisdictions;
    return std::nullopt;
}

Catalog default_catalog() {
    return {
        {"interfaces", "Interfaces", IndicatorCategory::Security},
        {"business_relevance", "Business relevance", IndicatorCategory::Result},
        {"compliance", "Compliance requirements", IndicatorCategory::Security},
        {"roles", "Roles", IndicatorCategory::Security},
        {"asset", "Asset valuation", IndicatorCategory::Security},
    };
}

Weights uniform_weights(const Catalog& catalog) {
    Weights w;
    for (const auto& ind : catalog) w.emplace(ind.id, Rational(1));
    return w;
}

const Indicator* find_indicator(const Catalog& catalog, std::string_view id) {
    for (const auto& ind : catalog)
        if (ind.id == id) return &ind;
    return nullptr;
}

std::vector<Diagnostic> validate(const ValueChainModel& model) {
    return Validator(model).run();
}

StepLocation locate_step(const ValueChainModel& model, std::string_view ref) {
    std::vector<StepLocation> hits;
    auto add = [&](const EndToEndProcess& p, const ProcessStep& s) {
        for (const auto& h : hits)
            if (h.step == &s) return;
        hits.push_back({&p, &s});
    };

    for (std::size_t dot = ref.find('.'); dot != std::string_view::npos; dot = ref.find('.', dot + 1)) {
        const auto proc_name = ref.substr(0, dot);
        const auto step_name = ref.substr(dot + 1);
        for (const auto& p : model.processes) {
            if (p.name != proc_name) continue;
            for (const auto& s : p.steps)
                if (s.name == step_name) add(p, s);
        }
    }
    for (const auto& p : model.processes)
        for (const auto& s : p.steps)
            if (s.name == ref) add(p, s);

    if (hits.empty()) throw Error(ErrorCode::NotFound, "no step matches '" + std::string(ref) + "'");
    if (hits.size() > 1)
        throw Error(ErrorCode::Ambiguous, "'" + std::string(ref) + "' matches " +
                                              std::to_string(hits.size()) + " steps");
    return hits.front();
}

const ProcessStep& resolve_step(const ValueChainModel& model, std::string_view ref) {
    return *locate_step(model, ref).step;
}

std::string qualified_name(const EndToEndProcess& process, const ProcessStep& step) {
    return process.name + "." + step.name;
}

} // namespace vchain
