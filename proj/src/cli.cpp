#include "vchain/cli.hpp"

#include "vchain/dsl.hpp"
#include "vchain/error.hpp"
#include "vchain/report.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

namespace vchain::cli {

namespace {

namespace fs = std::filesystem;

/// Carries an exit code out of a command after its diagnostics are printed.
struct Exit {
    ExitCode code;
};

int code_of(ExitCode c) { return static_cast<int>(c); }

std::string read_file(const std::string& path, std::ostream& err) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        err << "ERROR " << path << " cannot open file\n";
        throw Exit{ExitCode::IoError};
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) {
        err << "ERROR " << path << " read failed\n";
        throw Exit{ExitCode::IoError};
    }
    return ss.str();
}

void print(const std::vector<Diagnostic>& diags, const std::string& file, std::ostream& err) {
    for (const auto& d : diags) err << format_diagnostic(d, file) << '\n';
}

ValueChainModel load_model(const std::string& path, std::ostream& err) {
    const std::string text = read_file(path, err);
    auto parsed = parse(text);
    if (!parsed.ok()) {
        print(parsed.diagnostics, path, err);
        throw Exit{ExitCode::ParseFailure};
    }
    auto diags = validate(*parsed.value);
    print(diags, path, err);
    if (has_errors(diags)) throw Exit{ExitCode::ValidationFailure};
    return std::move(*parsed.value);
}

DecisionTree load_tree(const std::string& path, const Catalog& catalog, std::ostream& err) {
    DecisionTree tree;
    if (path.empty()) {
        tree = default_tree();
    } else {
        const std::string text = read_file(path, err);
        auto parsed = parse_tree(text);
        if (!parsed.ok()) {
            print(parsed.diagnostics, path, err);
            throw Exit{ExitCode::ParseFailure};
        }
        tree = std::move(*parsed.value);
    }
    auto diags = validate_tree(tree, catalog);
    print(diags, path, err);
    if (has_errors(diags)) throw Exit{ExitCode::ValidationFailure};
    return tree;
}

bool ends_with(const std::string& s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

int cmd_validate(const std::string& path, std::ostream& err) {
    if (ends_with(path, ".vtree")) {
        load_tree(path, default_catalog(), err);
        return code_of(ExitCode::Success);
    }
    load_model(path, err);
    return code_of(ExitCode::Success);
}

int cmd_score(const std::string& path, const std::string& process, const std::string& format,
              std::ostream& out, std::ostream& err) {
    ValueChainModel model = load_model(path, err);
    if (!process.empty()) {
        auto it = std::find_if(model.processes.begin(), model.processes.end(),
                               [&](const EndToEndProcess& p) { return p.name == process; });
        if (it == model.processes.end()) {
            err << "ERROR unknown process '" << process << "'\n";
            return code_of(ExitCode::UsageError);
        }
        EndToEndProcess selected = *it;
        model.processes = {std::move(selected)};
    }

    if (format == "csv") {
        for (std::size_t i = 0; i < model.processes.size(); ++i) {
            if (i) out << '\n';
            out << render_matrix_csv(model.processes[i], model.catalog);
        }
        return code_of(ExitCode::Success);
    }
    if (format == "structured") {
        out << export_structured(build_bundle(model, default_tree()));
        return code_of(ExitCode::Success);
    }

    if (model.processes.empty()) err << "no processes\n";
    for (std::size_t i = 0; i < model.processes.size(); ++i) {
        const auto& p = model.processes[i];
        if (i) out << '\n';
        out << "Process: " << p.name << " (" << to_string(p.kind) << ")\n\n";
        out << render_matrix_text(p, model.catalog) << '\n';
        out << render_profile_text(process_profile(p, model.catalog, model.weights)) << '\n';
        out << render_affinity_text(cloud_affinity(p, model.catalog, model.weights));
    }
    return code_of(ExitCode::Success);
}

int cmd_rank(const std::string& path, std::ostream& out, std::ostream& err) {
    const ValueChainModel model = load_model(path, err);
    if (model.processes.empty()) {
        err << "ERROR model ranking requires at least one process\n";
        return code_of(ExitCode::ValidationFailure);
    }
    const auto ranking = rank_processes(model);
    for (std::size_t i = 0; i < ranking.size(); ++i) {
        const auto& r = ranking[i];
        out << (i + 1) << '\t' << r.process << '\t' << format_decimal(r.affinity) << '\t'
            << format_decimal(r.value_component) << '\t' << format_decimal(r.risk_component) << '\n';
    }
    return code_of(ExitCode::Success);
}

int cmd_compare(const std::string& path, const std::string& binding, std::ostream& out, std::ostream& err) {
    const ValueChainModel model = load_model(path, err);
    if (!binding.empty()) {
        auto it = std::find_if(model.bindings.begin(), model.bindings.end(),
                               [&](const DeploymentBinding& b) { return b.step_ref == binding; });
        if (it == model.bindings.end()) {
            err << "ERROR unknown binding '" << binding << "'\n";
            return code_of(ExitCode::UsageError);
        }
        out << render_delta_text(compare_binding(*it, model.catalog));
        return code_of(ExitCode::Success);
    }
    if (model.bindings.empty()) {
        err << "no bindings\n";
        return code_of(ExitCode::Success);
    }
    const auto reports = compare_all(model);
    for (std::size_t i = 0; i < reports.size(); ++i) {
        if (i) out << '\n';
        out << render_delta_text(reports[i]);
    }
    return code_of(ExitCode::Success);
}

int cmd_gate(const std::string& path, const std::string& tree_path, std::ostream& out, std::ostream& err) {
    const ValueChainModel model = load_model(path, err);
    const DecisionTree tree = load_tree(tree_path, model.catalog, err);
    for (const auto& entry : gate_model(model, tree)) {
        out << (entry.kind == GateEntry::Kind::Binding ? "binding " : "") << entry.ref << '\n';
        for (const auto& o : entry.obligations) {
            out << "  " << o.id;
            if (!o.description.empty()) out << "  " << o.description;
            out << '\n';
        }
    }
    return code_of(ExitCode::Success);
}

int cmd_report(const std::string& path, const std::string& dir, const std::string& tree_path,
               std::ostream& err) {
    const ValueChainModel model = load_model(path, err);
    const DecisionTree tree = load_tree(tree_path, model.catalog, err);
    const ReportBundle bundle = build_bundle(model, tree);

    auto files = export_csv(bundle);
    files["report.structured"] = export_structured(bundle);

    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        err << "ERROR " << dir << " cannot create output directory"
            << (ec ? ": " + ec.message() : std::string()) << '\n';
        return code_of(ExitCode::IoError);
    }
    for (const auto& [name, text] : files) {
        const fs::path target = fs::path(dir) / name;
        std::ofstream os(target, std::ios::binary | std::ios::trunc);
        os << text;
        os.close();
        if (!os) {
            err << "ERROR " << target.string() << " write failed\n";
            return code_of(ExitCode::IoError);
        }
    }
    return code_of(ExitCode::Success);
}

int cmd_import(const std::string& path, const std::string& process, const std::string& name,
               std::ostream& out, std::ostream& err) {
    const std::string text = read_file(path, err);
    auto imported = import_matrix_csv(text, process);
    if (!imported.ok()) {
        print(imported.diagnostics, path, err);
        return code_of(ExitCode::ParseFailure);
    }
    ValueChainModel model;
    model.name = name.empty() ? process : name;
    model.catalog = default_catalog();
    model.weights = uniform_weights(model.catalog);
    model.processes.push_back(std::move(*imported.value));
    auto diags = validate(model);
    print(diags, path, err);
    if (has_errors(diags)) return code_of(ExitCode::ValidationFailure);
    out << serialize(model);
    return code_of(ExitCode::Success);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Value-chain cloud suitability assessment", "vchain"};
    app.require_subcommand(1);

    std::string file;
    std::string process;
    std::string format = "text";
    std::string binding;
    std::string tree;
    std::string out_dir;
    std::string name;

    auto* validate_cmd = app.add_subcommand("validate", "Parse and validate a .vchain or .vtree file");
    validate_cmd->add_option("file", file, "Input file")->required();

    auto* score_cmd = app.add_subcommand("score", "Score matrix, step profiles and cloud affinity");
    score_cmd->add_option("file", file, "Input .vchain file")->required();
    score_cmd->add_option("--process", process, "Restrict to one process");
    score_cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "csv", "structured"}));

    auto* rank_cmd = app.add_subcommand("rank", "Rank processes by cloud affinity");
    rank_cmd->add_option("file", file, "Input .vchain file")->required();

    auto* compare_cmd = app.add_subcommand("compare", "In-house vs cloud risk deltas per binding");
    compare_cmd->add_option("file", file, "Input .vchain file")->required();
    compare_cmd->add_option("--binding", binding, "Restrict to one binding");

    auto* gate_cmd = app.add_subcommand("gate", "Evaluate the GRC decision tree over steps and bindings");
    gate_cmd->add_option("file", file, "Input .vchain file")->required();
    gate_cmd->add_option("--tree", tree, "Decision tree (.vtree); defaults to the shipped default-grc tree");

    auto* report_cmd = app.add_subcommand("report", "Write CSV files and report.structured into a directory");
    report_cmd->add_option("file", file, "Input .vchain file")->required();
    report_cmd->add_option("--out", out_dir, "Output directory")->required();
    report_cmd->add_option("--tree", tree, "Decision tree (.vtree)");

    auto* import_cmd = app.add_subcommand("import", "Convert a CSV score matrix into a .vchain document");
    import_cmd->add_option("file", file, "Input .csv file")->required();
    import_cmd->add_option("--process", process, "Process name")->required();
    import_cmd->add_option("--name", name, "Model name (defaults to the process name)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return code_of(ExitCode::Success);
    } catch (const CLI::ParseError& e) {
        err << "ERROR usage: " << e.what() << '\n';
        return code_of(ExitCode::UsageError);
    }

    try {
        if (validate_cmd->parsed()) return cmd_validate(file, err);
        if (score_cmd->parsed()) return cmd_score(file, process, format, out, err);
        if (rank_cmd->parsed()) return cmd_rank(file, out, err);
        if (compare_cmd->parsed()) return cmd_compare(file, binding, out, err);
        if (gate_cmd->parsed()) return cmd_gate(file, tree, out, err);
        if (report_cmd->parsed()) return cmd_report(file, out_dir, tree, err);
        if (import_cmd->parsed()) return cmd_import(file, process, name, out, err);
    } catch (const Exit& e) {
        return code_of(e.code);
    } catch (const Error& e) {
        err << "ERROR model " << to_string(e.code()) << ": " << e.what() << '\n';
        return code_of(ExitCode::ValidationFailure);
    }
    return code_of(ExitCode::UsageError);
}

} // namespace vchain::cli
