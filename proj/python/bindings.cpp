#include "vchain/cli.hpp"
#include "vchain/dsl.hpp"
#include "vchain/error.hpp"
#include "vchain/report.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace vchain;

namespace {

py::object fraction(const Rational& r) {
    static py::object Fraction = py::module_::import("fractions").attr("Fraction");
    py::object to_int = py::module_::import("builtins").attr("int");
    return Fraction(to_int(boost::multiprecision::numerator(r).str()),
                    to_int(boost::multiprecision::denominator(r).str()));
}

std::string join_diagnostics(const std::vector<Diagnostic>& diags) {
    std::string out;
    for (const auto& d : diags) {
        if (!out.empty()) out += '\n';
        out += format_diagnostic(d);
    }
    return out;
}

DecisionTree tree_from(const std::optional<std::string>& source) {
    if (!source) return default_tree();
    auto parsed = parse_tree(*source);
    if (!parsed.ok()) throw std::invalid_argument(join_diagnostics(parsed.diagnostics));
    return std::move(*parsed.value);
}

const EndToEndProcess& find_process(const ValueChainModel& m, const std::string& name) {
    for (const auto& p : m.processes)
        if (p.name == name) return p;
    throw py::key_error("unknown process '" + name + "'");
}

py::dict affinity_dict(const AffinityResult& r) {
    py::dict d;
    d["process"] = r.process;
    d["value_component"] = fraction(r.value_component);
    d["risk_component"] = fraction(r.risk_component);
    d["affinity"] = fraction(r.affinity);
    return d;
}

} // namespace

PYBIND11_MODULE(_vchain, m) {
    m.doc() = "Value-chain cloud suitability assessment";

    py::register_exception<std::invalid_argument>(m, "ParseError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            PyErr_SetString(PyExc_ValueError, (std::string(to_string(e.code())) + ": " + e.what()).c_str());
        }
    });

    py::class_<Diagnostic>(m, "Diagnostic")
        .def_property_readonly("severity", [](const Diagnostic& d) { return std::string(to_string(d.severity)); })
        .def_readonly("message", &Diagnostic::message)
        .def_readonly("path", &Diagnostic::path)
        .def_property_readonly("line", [](const Diagnostic& d) { return d.pos ? py::cast(d.pos->line) : py::none(); })
        .def_property_readonly("column", [](const Diagnostic& d) { return d.pos ? py::cast(d.pos->column) : py::none(); })
        .def("__str__", [](const Diagnostic& d) { return format_diagnostic(d); })
        .def("__repr__", [](const Diagnostic& d) { return "<Diagnostic " + format_diagnostic(d) + ">"; });

    py::class_<Indicator>(m, "Indicator")
        .def_readonly("id", &Indicator::id)
        .def_readonly("display_name", &Indicator::display_name)
        .def_property_readonly("category", [](const Indicator& i) { return std::string(to_string(i.category)); });

    py::class_<ProcessStep>(m, "ProcessStep")
        .def_readonly("name", &ProcessStep::name)
        .def_readonly("scores", &ProcessStep::scores)
        .def_property_readonly("sensitive_data", [](const ProcessStep& s) { return s.attributes.sensitive_data; });

    py::class_<EndToEndProcess>(m, "EndToEndProcess")
        .def_readonly("name", &EndToEndProcess::name)
        .def_property_readonly("kind", [](const EndToEndProcess& p) { return std::string(to_string(p.kind)); })
        .def_readonly("steps", &EndToEndProcess::steps)
        .def("__eq__", [](const EndToEndProcess& a, const EndToEndProcess& b) { return a == b; });

    py::class_<ValueChainModel>(m, "ValueChainModel")
        .def_readonly("name", &ValueChainModel::name)
        .def_readonly("catalog", &ValueChainModel::catalog)
        .def_readonly("processes", &ValueChainModel::processes)
        .def("__eq__", [](const ValueChainModel& a, const ValueChainModel& b) { return a == b; });

    m.def("default_catalog", &default_catalog);
    m.def("default_tree_source", [] { return std::string(default_tree_source()); });

    m.def("parse", [](const std::string& text) {
        auto r = parse(text);
        if (!r.ok()) throw std::invalid_argument(join_diagnostics(r.diagnostics));
        return std::move(*r.value);
    }, "Parse a .vchain document; raises ParseError with line:column diagnostics");

    m.def("validate", &validate);
    m.def("serialize", &serialize);

    m.def("import_matrix_csv", [](const std::string& text, const std::string& process_name) {
        auto r = import_matrix_csv(text, process_name);
        if (!r.ok()) throw std::invalid_argument(join_diagnostics(r.diagnostics));
        return std::move(*r.value);
    });

    m.def("fraud_risk", [](int probability, int damage) {
        const auto r = fraud_risk(probability, damage);
        return py::make_tuple(r.value, std::string(to_string(r.risk_class)));
    });

    m.def("categorize_delta", [](int inhouse, int cloud) { return std::string(label(categorize_delta(inhouse, cloud))); });

    m.def("compare_all", [](const ValueChainModel& model) {
        py::list out;
        for (const auto& rep : compare_all(model)) {
            py::list rows;
            for (const auto& r : rep.rows)
                rows.append(py::make_tuple(r.indicator, r.inhouse, r.cloud, std::string(label(r.category))));
            py::dict d;
            d["binding"] = rep.binding;
            d["rows"] = rows;
            d["verdict"] = std::string(to_string(rep.verdict));
            out.append(d);
        }
        return out;
    });

    m.def("process_profile", [](const ValueChainModel& model, const std::string& process) {
        const auto prof = process_profile(find_process(model, process), model.catalog, model.weights);
        py::dict aggregate;
        for (const auto& [cat, agg] : prof.aggregate) {
            py::dict a;
            a["mean"] = fraction(agg.mean);
            a["max"] = fraction(agg.max);
            a["max_step"] = agg.max_step;
            aggregate[py::str(to_string(cat))] = a;
        }
        return aggregate;
    });

    m.def("cloud_affinity", [](const ValueChainModel& model, const std::string& process) {
        return affinity_dict(cloud_affinity(find_process(model, process), model.catalog, model.weights));
    });

    m.def("rank_processes", [](const ValueChainModel& model) {
        py::list out;
        for (const auto& r : rank_processes(model)) out.append(affinity_dict(r));
        return out;
    });

    m.def("gate", [](const ValueChainModel& model, std::optional<std::string> tree) {
        py::list out;
        for (const auto& e : gate_model(model, tree_from(tree))) {
            py::list ids;
            for (const auto& o : e.obligations) ids.append(o.id);
            out.append(py::make_tuple(e.ref, ids));
        }
        return out;
    }, py::arg("model"), py::arg("tree") = py::none());

    m.def("export_structured", [](const ValueChainModel& model, std::optional<std::string> tree) {
        return export_structured(build_bundle(model, tree_from(tree)));
    }, py::arg("model"), py::arg("tree") = py::none());

    m.def("export_csv", [](const ValueChainModel& model, std::optional<std::string> tree) {
        return export_csv(build_bundle(model, tree_from(tree)));
    }, py::arg("model"), py::arg("tree") = py::none());

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    }, "Run a CLI subcommand in-process; returns (exit_code, stdout, stderr)");
}
