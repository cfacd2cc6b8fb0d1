// SPDX-FileCopyrightText: Contributors to the suc-benders project
//
// SPDX-License-Identifier: Apache-2.0

#include "suc/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "suc/errors.hpp"
#include "suc/report.hpp"

namespace suc {

namespace {

struct Options {
    std::string instance;
    std::string scenarios;
    std::string method = "multi-cut";
    std::string methods = "all";
    MethodOptions run;
    std::string clustering = "hierarchical";
    std::string attribute = "duals";
    std::optional<double> theta_min;
    std::string trace;
    std::string report;
};

void add_common(CLI::App& cmd, Options& o) {
    BendersConfig& c = o.run.benders;
    cmd.add_option("--instance", o.instance, "instance JSON")->required()->check(CLI::ExistingFile);
    cmd.add_option("--scenarios", o.scenarios, "scenario CSV")->required()->check(CLI::ExistingFile);
    cmd.add_option("--eps", c.epsilon, "convergence threshold on |UB - LB|")->capture_default_str();
    cmd.add_option("--mip-gap", c.mip_gap, "relative MIP gap of master solves")->capture_default_str();
    cmd.add_option("--theta-min", o.theta_min, "lower bound on recourse values (default: derived)");
    cmd.add_option("--zeta", c.adaptive_settings.zeta, "dead-band width fraction")->capture_default_str();
    cmd.add_option("--rho", c.adaptive_settings.rho, "cluster increment")->capture_default_str();
    cmd.add_option("--alpha", c.adaptive_settings.alpha, "dead-band base fraction")->capture_default_str();
    cmd.add_option("--kappa", c.kappa, "inactivity iterations before consolidation")->capture_default_str();
    cmd.add_option("--init-clusters", c.initial_clusters, "initial cluster count")->capture_default_str();
    cmd.add_option("--clustering", o.clustering, "cut clustering method")
        ->check(CLI::IsMember({"hierarchical", "kmeans"}))
        ->capture_default_str();
    cmd.add_option("--attribute", o.attribute, "clustering attribute")
        ->check(CLI::IsMember({"duals", "objective", "wind"}))
        ->capture_default_str();
    cmd.add_option("--consolidate", c.consolidate, "consolidate inactive cuts (aggregated)")->capture_default_str();
    cmd.add_option("--subsets", o.run.subsets, "number of scenario subsets (outer)")->capture_default_str();
    cmd.add_option("--gamma", o.run.gamma, "fraction of subset solves to complete (outer)")->capture_default_str();
    cmd.add_option("--workers", c.workers, "worker threads")->capture_default_str();
    cmd.add_option("--trace", o.trace, "JSON-lines iteration trace");
    cmd.add_option("--report", o.report, "report JSON");
    cmd.add_option("--max-iters", c.max_iterations, "iteration limit")->capture_default_str();
}

void finish_config(Options& o) {
    o.run.benders.theta_min = o.theta_min;
    o.run.benders.clustering = o.clustering == "kmeans" ? ClusterMethod::KMeans : ClusterMethod::Hierarchical;
    o.run.benders.attribute = o.attribute == "objective" ? ClusterAttribute::Objective
                              : o.attribute == "wind"    ? ClusterAttribute::WindStatic
                                                         : ClusterAttribute::Duals;
}

/// trace.jsonl -> trace.<method>.jsonl
std::string trace_for(const std::string& base, const std::string& method, bool many) {
    if (base.empty() || !many) return base;
    std::filesystem::path p(base);
    std::string tag = method;
    std::replace(tag.begin(), tag.end(), '+', '_');
    return (p.parent_path() / (p.stem().string() + "." + tag + p.extension().string())).string();
}

RunReport run_one(Method method, const SystemInstance& inst, const ScenarioSet& scen, const Options& o,
                  const std::string& trace_path) {
    std::unique_ptr<std::ofstream> trace;
    if (!trace_path.empty()) {
        trace = std::make_unique<std::ofstream>(trace_path);
        if (!*trace) throw InvalidArgument("cannot write trace file " + trace_path);
    }
    RunReport report = run_method(method, inst, scen, o.run, trace.get());
    report.trace_path = trace_path;
    return report;
}

void write_json(const std::string& path, const nlohmann::json& doc) {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write report file " + path);
    out << doc.dump(2) << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Benders decomposition for two-stage stochastic unit commitment", "suc"};
    app.require_subcommand(1);
    Options solve_opts, compare_opts;
    CLI::App* solve = app.add_subcommand("solve", "solve with one method");
    add_common(*solve, solve_opts);
    solve->add_option("--method", solve_opts.method, "method")
        ->check(CLI::IsMember({"extensive", "single-cut", "multi-cut", "aggregated", "aggregated+consolidation",
                               "outer"}))
        ->capture_default_str();
    CLI::App* compare = app.add_subcommand("compare", "solve with several methods and tabulate");
    add_common(*compare, compare_opts);
    compare->add_option("--methods", compare_opts.methods, "comma-separated methods or 'all'")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        Options& o = solve->parsed() ? solve_opts : compare_opts;
        finish_config(o);
        std::vector<std::string> warnings;
        const SystemInstance inst = load_instance(o.instance, &warnings);
        for (const auto& w : warnings) err << "warning: " << w << '\n';
        const ScenarioSet scen = load_scenarios(o.scenarios, inst);
        o.run.benders.validate(scen.size());

        if (solve->parsed()) {
            const RunReport report = run_one(method_from_string(o.method), inst, scen, o, o.trace);
            const nlohmann::json doc = report.to_json();
            if (!o.report.empty()) write_json(o.report, doc);
            out << doc.dump(2) << '\n';
            return report.converged() ? 0 : 2;
        }

        std::vector<Method> methods;
        if (o.methods == "all") {
            methods = all_methods();
        } else {
            std::stringstream list(o.methods);
            for (std::string name; std::getline(list, name, ',');) methods.push_back(method_from_string(name));
        }
        std::vector<RunReport> reports;
        for (Method m : methods)
            reports.push_back(run_one(m, inst, scen, o, trace_for(o.trace, to_string(m), methods.size() > 1)));
        const ComparisonTable table = emit_comparison_table(reports, o.run.benders.epsilon);
        out << table.text;
        if (!o.report.empty()) {
            nlohmann::json doc = table.json;
            doc["reports"] = nlohmann::json::array();
            for (const auto& r : reports) doc["reports"].push_back(r.to_json());
            write_json(o.report, doc);
        }
        for (const auto& r : reports)
            if (!r.converged()) return 2;
        return table.disagreement ? 3 : 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace suc
