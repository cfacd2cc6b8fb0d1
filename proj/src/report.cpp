// SPDX-FileCopyrightText: Contributors to the suc-benders project
//
// SPDX-License-Identifier: Apache-2.0

#include "suc/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "suc/errors.hpp"
#include "suc/lp_backend.hpp"

namespace suc {

namespace {

template <class T>
nlohmann::json optional_json(const std::optional<T>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json();
}

template <class T>
std::optional<T> optional_from(const nlohmann::json& doc, const char* key) {
    if (!doc.contains(key) || doc.at(key).is_null()) return std::nullopt;
    return doc.at(key).get<T>();
}

void fill_from_run(RunReport& report, const ConvergedSolution& sol) {
    report.status = to_string(sol.status);
    if (sol.converged()) report.objective = sol.objective;
    report.iterations = sol.state.iteration;
    report.master_rows = sol.state.history.empty() ? 0 : sol.state.history.back().master_rows;
    report.max_master_rows = sol.max_master_rows;
}

}  // namespace

const char* to_string(Method method) {
    switch (method) {
        case Method::Extensive:
            return "extensive";
        case Method::SingleCut:
            return "single-cut";
        case Method::MultiCut:
            return "multi-cut";
        case Method::Aggregated:
            return "aggregated";
        case Method::AggregatedConsolidation:
            return "aggregated+consolidation";
        case Method::Outer:
            return "outer";
    }
    return "?";
}

const std::vector<Method>& all_methods() {
    static const std::vector<Method> methods{Method::Extensive,  Method::SingleCut,
                                             Method::MultiCut,   Method::Aggregated,
                                             Method::AggregatedConsolidation, Method::Outer};
    return methods;
}

Method method_from_string(const std::string& name) {
    for (Method m : all_methods())
        if (name == to_string(m)) return m;
    throw InvalidArgument("unknown method '" + name + "'");
}

nlohmann::json RunReport::to_json() const {
    nlohmann::json doc = {{"schema_version", kReportSchemaVersion},
                          {"method", method},
                          {"instance", instance},
                          {"status", status},
                          {"objective", optional_json(objective)},
                          {"wall_time_s", wall_time_s},
                          {"iterations", iterations},
                          {"master_rows", master_rows},
                          {"max_master_rows", max_master_rows},
                          {"config", config},
                          {"trace_path", trace_path}};
    if (t1 || t2) {
        doc["T1"] = optional_json(t1);
        doc["T2"] = optional_json(t2);
    }
    if (!outer.is_null()) doc["outer"] = outer;
    return doc;
}

RunReport RunReport::from_json(const nlohmann::json& doc) {
    try {
        const int version = doc.at("schema_version").get<int>();
        if (version != kReportSchemaVersion)
            throw ParseError("report schema version " + std::to_string(version) + " is not supported");
        RunReport r;
        r.method = doc.at("method").get<std::string>();
        r.instance = doc.at("instance").get<std::string>();
        r.status = doc.at("status").get<std::string>();
        r.objective = optional_from<double>(doc, "objective");
        r.wall_time_s = doc.at("wall_time_s").get<double>();
        r.iterations = doc.at("iterations").get<int>();
        r.master_rows = doc.at("master_rows").get<int>();
        r.max_master_rows = doc.at("max_master_rows").get<int>();
        r.config = doc.at("config");
        r.trace_path = doc.at("trace_path").get<std::string>();
        r.t1 = optional_from<double>(doc, "T1");
        r.t2 = optional_from<double>(doc, "T2");
        if (doc.contains("outer")) r.outer = doc.at("outer");
        return r;
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("report: ") + ex.what());
    }
}

nlohmann::json config_to_json(const MethodOptions& options) {
    const BendersConfig& c = options.benders;
    return {{"eps", c.epsilon},
            {"mip_gap", c.mip_gap},
            {"theta_min", optional_json(c.theta_min)},
            {"max_iters", c.max_iterations},
            {"zeta", c.adaptive_settings.zeta},
            {"rho", c.adaptive_settings.rho},
            {"alpha", c.adaptive_settings.alpha},
            {"kappa", c.kappa},
            {"init_clusters", c.initial_clusters},
            {"clustering", to_string(c.clustering)},
            {"attribute", to_string(c.attribute)},
            {"consolidate", c.consolidate},
            {"subsets", options.subsets},
            {"gamma", options.gamma},
            {"workers", c.workers}};
}

RunReport run_method(Method method, const SystemInstance& instance, const ScenarioSet& scenarios,
                     const MethodOptions& options, std::ostream* trace) {
    RunReport report;
    report.method = to_string(method);
    report.instance = instance.name;
    MethodOptions effective = options;
    BendersConfig& cfg = effective.benders;
    cfg.trace = trace;

    switch (method) {
        case Method::Extensive: {
            const auto start = std::chrono::steady_clock::now();
            const ExtensiveModel ext = build_extensive(instance, scenarios);
            const SolveResult r = solve_milp(ext.model, cfg.mip_gap);
            report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            report.status = r.optimal() ? "Converged" : to_string(r.status);
            if (r.optimal()) report.objective = r.objective;
            report.master_rows = report.max_master_rows = r.row_count;
            report.config = config_to_json(effective);
            return report;
        }
        case Method::SingleCut:
            cfg.mode = CutMode::SingleCut;
            break;
        case Method::MultiCut:
            cfg.mode = CutMode::MultiCut;
            break;
        case Method::Aggregated:
            cfg.mode = CutMode::Aggregated;
            break;
        case Method::AggregatedConsolidation:
            cfg.mode = CutMode::Aggregated;
            cfg.consolidate = true;
            break;
        case Method::Outer: {
            // Subset and second-pass solves use the aggregated engine as configured.
            cfg.mode = CutMode::Aggregated;
            const OuterResult outer = run_outer(instance, scenarios, cfg, effective.subsets, effective.gamma);
            fill_from_run(report, outer.solution);
            report.wall_time_s = outer.t1 + outer.t2;
            report.t1 = outer.t1;
            report.t2 = outer.t2;
            report.max_master_rows = outer.max_master_rows;
            report.outer = outer.summary();
            report.config = config_to_json(effective);
            return report;
        }
    }
    const ConvergedSolution sol = run(instance, scenarios, cfg);
    fill_from_run(report, sol);
    report.wall_time_s = sol.wall_time_s;
    report.config = config_to_json(effective);
    return report;
}

ComparisonTable emit_comparison_table(const std::vector<RunReport>& reports, double epsilon) {
    if (reports.size() < 2) throw InvalidArgument("a comparison needs at least two reports");
    for (const auto& r : reports)
        if (r.instance != reports.front().instance)
            throw InvalidArgument("reports of different instances cannot be compared ('" +
                                  reports.front().instance + "' vs '" + r.instance + "')");

    std::optional<double> reference;
    for (const auto& r : reports)
        if (r.objective) {
            reference = r.objective;
            break;
        }

    ComparisonTable table;
    nlohmann::json rows = nlohmann::json::array();
    std::ostringstream text;
    std::size_t width = 6;
    for (const auto& r : reports) width = std::max(width, r.method.size());
    text << std::left << std::setw(static_cast<int>(width)) << "method" << "  " << std::right << std::setw(18)
         << "exp. cost" << "  " << std::setw(10) << "time [s]" << "  " << std::setw(8) << "rows" << "  "
         << std::setw(6) << "iters" << "  status\n";
    for (const auto& r : reports) {
        bool differs = false;
        if (r.objective && reference)
            differs = std::abs(*r.objective - *reference) > 2.0 * epsilon * std::max(1.0, std::abs(*reference));
        table.disagreement = table.disagreement || differs;
        std::ostringstream cost;
        if (r.objective)
            cost << std::fixed << std::setprecision(6) << *r.objective;
        else
            cost << "-";
        text << std::left << std::setw(static_cast<int>(width)) << r.method << "  " << std::right << std::setw(18)
             << cost.str() << "  " << std::setw(10) << std::fixed << std::setprecision(3) << r.wall_time_s << "  "
             << std::setw(8) << r.master_rows << "  " << std::setw(6) << r.iterations << "  " << r.status
             << (differs ? "  DISAGREES" : "") << '\n';
        rows.push_back({{"method", r.method},
                        {"objective", optional_json(r.objective)},
                        {"wall_time_s", r.wall_time_s},
                        {"rows", r.master_rows},
                        {"iterations", r.iterations},
                        {"status", r.status},
                        {"disagrees", differs}});
    }
    if (table.disagreement) text << "objective disagreement beyond 2*eps\n";
    table.text = text.str();
    table.json = {{"schema_version", kReportSchemaVersion},
                  {"instance", reports.front().instance},
                  {"eps", epsilon},
                  {"rows", rows},
                  {"disagreement", table.disagreement}};
    return table;
}

}  // namespace suc
