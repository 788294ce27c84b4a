#include "vchain/report.hpp"
#include "vchain/csv.hpp"

#include "json.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace vchain {

namespace {

using nlohmann::json;

std::string pad_right(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string pad_left(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

/// Renders rows of cells; column 0 left-aligned, the rest right-aligned.
std::string table(const std::vector<std::vector<std::string>>& rows, bool right_align_rest = true) {
    std::vector<std::size_t> widths;
    for (const auto& r : rows) {
        if (widths.size() < r.size()) widths.resize(r.size(), 0);
        for (std::size_t i = 0; i < r.size(); ++i) widths[i] = std::max(widths[i], r[i].size());
    }
    std::string out;
    for (const auto& r : rows) {
        std::string line;
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i) line += "  ";
            line += (i == 0 || !right_align_rest) ? pad_right(r[i], widths[i]) : pad_left(r[i], widths[i]);
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out += line + '\n';
    }
    return out;
}

std::string score_cell(const ScoreMap& scores, const std::string& id) {
    auto it = scores.find(id);
    return it == scores.end() ? "-" : std::to_string(it->second);
}

/// Decimal numbers are stored as doubles parsed from the exact half-even
/// rendering, and printed back with at most 6 decimals.
json number(const Rational& r) {
    const std::string text = format_decimal(r);
    if (text.find('.') == std::string::npos) return json(std::strtoll(text.c_str(), nullptr, 10));
    return json(std::strtod(text.c_str(), nullptr));
}

std::string format_float(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    std::string s = buf;
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
    if (s == "-0") s = "0";
    return s;
}

void dump(const json& j, std::string& out, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
    case json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out += ",\n";
            first = false;
            out += inner + json(it.key()).dump() + ": ";
            dump(it.value(), out, indent + 1);
        }
        out += "\n" + pad + "}";
        return;
    }
    case json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) out += ",\n";
            out += inner;
            dump(j[i], out, indent + 1);
        }
        out += "\n" + pad + "]";
        return;
    }
    case json::value_t::number_float: out += format_float(j.get<double>()); return;
    default: out += j.dump(); return;
    }
}

json category_map(const CategoryScores& scores) {
    json o = json::object();
    for (const auto& [cat, v] : scores) o[to_string(cat)] = number(v);
    return o;
}

json obligations_json(const std::vector<Obligation>& obligations) {
    json a = json::array();
    for (const auto& o : obligations) a.push_back({{"id", o.id}, {"description", o.description}});
    return a;
}

} // namespace

ReportBundle build_bundle(const ValueChainModel& model, const DecisionTree& tree) {
    ReportBundle b;
    b.model_name = model.name;
    b.catalog = model.catalog;
    b.processes = model.processes;
    for (const auto& p : model.processes) b.profiles.push_back(process_profile(p, model.catalog, model.weights));
    b.deltas = compare_all(model);
    if (!model.processes.empty()) b.ranking = rank_processes(model);
    for (const auto& f : model.fraud_scenarios)
        b.fraud_register.push_back({f.name, f.step_ref, f.probability, f.damage, fraud_risk(f.probability, f.damage)});
    b.obligations = gate_model(model, tree);
    return b;
}

std::string render_matrix_text(const EndToEndProcess& process, const Catalog& catalog) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header{"Process Step Indicator"};
    for (const auto& s : process.steps) header.push_back(s.name);
    rows.push_back(std::move(header));
    for (const auto& ind : catalog) {
        std::vector<std::string> row{ind.display_name};
        for (const auto& s : process.steps) row.push_back(score_cell(s.scores, ind.id));
        rows.push_back(std::move(row));
    }
    return table(rows);
}

std::string render_matrix_csv(const EndToEndProcess& process, const Catalog& catalog) {
    std::vector<std::string> header{"indicator"};
    for (const auto& s : process.steps) header.push_back(s.name);
    std::string out = csv::join(header) + '\n';
    for (const auto& ind : catalog) {
        std::vector<std::string> row{ind.id};
        for (const auto& s : process.steps) row.push_back(score_cell(s.scores, ind.id));
        out += csv::join(row) + '\n';
    }
    return out;
}

std::string render_profile_text(const ProcessProfile& profile) {
    std::vector<IndicatorCategory> cats;
    for (const auto& [cat, agg] : profile.aggregate) cats.push_back(cat);

    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header{"Step"};
    for (auto c : cats) header.push_back(to_string(c));
    rows.push_back(std::move(header));
    for (const auto& sp : profile.steps) {
        std::vector<std::string> row{sp.step};
        for (auto c : cats) row.push_back(format_decimal(sp.category_scores.at(c)));
        rows.push_back(std::move(row));
    }
    std::vector<std::string> mean{"mean"};
    std::vector<std::string> max{"max"};
    std::vector<std::string> arg{"max at"};
    for (auto c : cats) {
        const auto& agg = profile.aggregate.at(c);
        mean.push_back(format_decimal(agg.mean));
        max.push_back(format_decimal(agg.max));
        arg.push_back(agg.max_step);
    }
    rows.push_back(std::move(mean));
    rows.push_back(std::move(max));
    rows.push_back(std::move(arg));
    return table(rows);
}

std::string render_affinity_text(const AffinityResult& r) {
    return "affinity " + format_decimal(r.affinity) + " (value " + format_decimal(r.value_component) +
           ", risk " + format_decimal(r.risk_component) + ")\n";
}

std::string render_delta_text(const DeltaReport& report) {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"Indicator", report.inhouse_id.empty() ? "In-house" : report.inhouse_id,
                    report.cloud_id.empty() ? "Cloud" : report.cloud_id,
                    "Resulting risk of moving to the cloud"});
    for (const auto& r : report.rows)
        rows.push_back({r.display_name.empty() ? r.indicator : r.display_name, std::to_string(r.inhouse),
                        std::to_string(r.cloud), label(r.category)});
    return "Binding: " + report.binding + "\n" + table(rows, false) + "Verdict: " + to_string(report.verdict) +
           "\n";
}

std::string export_structured(const ReportBundle& bundle) {
    json doc = json::object();
    doc["format_version"] = bundle.format_version;
    doc["model"] = bundle.model_name;

    json matrices = json::array();
    for (const auto& p : bundle.processes) {
        json steps = json::array();
        for (const auto& s : p.steps) {
            json scores = json::object();
            for (const auto& [id, v] : s.scores) scores[id] = v;
            const auto& a = s.attributes;
            steps.push_back({{"name", s.name},
                             {"scores", scores},
                             {"attributes",
                              {{"sensitive_data", a.sensitive_data},
                               {"org_units_involved", a.org_units_involved},
                               {"systems_involved", a.systems_involved},
                               {"jurisdictions", a.jurisdictions}}}});
        }
        matrices.push_back({{"process", p.name}, {"kind", to_string(p.kind)}, {"steps", steps}});
    }
    doc["matrices"] = matrices;

    json profiles = json::array();
    for (const auto& pr : bundle.profiles) {
        json steps = json::array();
        for (const auto& sp : pr.steps) steps.push_back({{"step", sp.step}, {"scores", category_map(sp.category_scores)}});
        json aggregate = json::object();
        for (const auto& [cat, agg] : pr.aggregate)
            aggregate[to_string(cat)] = {{"mean", number(agg.mean)}, {"max", number(agg.max)}, {"max_step", agg.max_step}};
        profiles.push_back({{"process", pr.process}, {"steps", steps}, {"aggregate", aggregate}});
    }
    doc["profiles"] = profiles;

    json deltas = json::array();
    for (const auto& d : bundle.deltas) {
        json rows = json::array();
        for (const auto& r : d.rows)
            rows.push_back({{"indicator", r.indicator},
                            {"inhouse", r.inhouse},
                            {"cloud", r.cloud},
                            {"delta", r.delta},
                            {"category", to_identifier(r.category)}});
        deltas.push_back({{"binding", d.binding},
                          {"inhouse_id", d.inhouse_id},
                          {"cloud_id", d.cloud_id},
                          {"rows", rows},
                          {"verdict", to_string(d.verdict)}});
    }
    doc["deltas"] = deltas;

    json ranking = json::array();
    for (std::size_t i = 0; i < bundle.ranking.size(); ++i) {
        const auto& r = bundle.ranking[i];
        ranking.push_back({{"rank", i + 1},
                           {"process", r.process},
                           {"affinity", number(r.affinity)},
                           {"value_component", number(r.value_component)},
                           {"risk_component", number(r.risk_component)}});
    }
    doc["ranking"] = ranking;

    json fraud = json::array();
    for (const auto& f : bundle.fraud_register)
        fraud.push_back({{"scenario", f.scenario},
                         {"step", f.step_ref},
                         {"probability", f.probability},
                         {"damage", f.damage},
                         {"risk", f.risk.value},
                         {"class", to_string(f.risk.risk_class)}});
    doc["fraud_register"] = fraud;

    json obligations = json::array();
    for (const auto& e : bundle.obligations)
        obligations.push_back({{"kind", e.kind == GateEntry::Kind::Step ? "step" : "binding"},
                               {"ref", e.ref},
                               {"obligations", obligations_json(e.obligations)}});
    doc["obligations"] = obligations;

    std::string out;
    dump(doc, out, 0);
    return out + '\n';
}

std::map<std::string, std::string> export_csv(const ReportBundle& bundle) {
    std::map<std::string, std::string> files;

    std::string scores;
    for (std::size_t i = 0; i < bundle.processes.size(); ++i) {
        if (i) scores += '\n';
        scores += render_matrix_csv(bundle.processes[i], bundle.catalog);
    }
    if (bundle.processes.empty()) scores = "indicator\n";
    files["scores.csv"] = scores;

    std::string deltas = "binding,indicator,inhouse,cloud,delta,category,verdict\n";
    for (const auto& d : bundle.deltas)
        for (const auto& r : d.rows)
            deltas += csv::join({d.binding, r.indicator, std::to_string(r.inhouse), std::to_string(r.cloud),
                                 std::to_string(r.delta), to_identifier(r.category), to_string(d.verdict)}) +
                      '\n';
    files["deltas.csv"] = deltas;

    std::string ranking = "rank,process,affinity,value_component,risk_component\n";
    for (std::size_t i = 0; i < bundle.ranking.size(); ++i) {
        const auto& r = bundle.ranking[i];
        ranking += csv::join({std::to_string(i + 1), r.process, format_decimal(r.affinity),
                              format_decimal(r.value_component), format_decimal(r.risk_component)}) +
                   '\n';
    }
    files["ranking.csv"] = ranking;

    std::string fraud = "scenario,step,probability,damage,risk,class\n";
    for (const auto& f : bundle.fraud_register)
        fraud += csv::join({f.scenario, f.step_ref, std::to_string(f.probability), std::to_string(f.damage),
                            std::to_string(f.risk.value), to_string(f.risk.risk_class)}) +
                 '\n';
    files["fraud.csv"] = fraud;

    std::string obligations = "kind,ref,obligation,description\n";
    for (const auto& e : bundle.obligations)
        for (const auto& o : e.obligations)
            obligations += csv::join({e.kind == GateEntry::Kind::Step ? "step" : "binding", e.ref, o.id,
                                      o.description}) +
                           '\n';
    files["obligations.csv"] = obligations;
    return files;
}

} // namespace vchain
