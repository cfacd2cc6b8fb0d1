// SPDX-FileCopyrightText: Contributors to the suc-benders project
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "suc/benders.hpp"
#include "suc/outer_parallel.hpp"
#include "suc/power_system.hpp"

namespace suc {

enum class Method { Extensive, SingleCut, MultiCut, Aggregated, AggregatedConsolidation, Outer };

const char* to_string(Method method);
Method method_from_string(const std::string& name);
const std::vector<Method>& all_methods();

inline constexpr int kReportSchemaVersion = 1;

struct RunReport {
    std::string method;
    std::string instance;
    std::string status;  // Converged, NotConverged, Canceled, or the extensive solve status
    std::optional<double> objective;
    double wall_time_s = 0.0;
    int iterations = 0;
    int master_rows = 0;      // final master (model rows for extensive)
    int max_master_rows = 0;  // largest master solved
    nlohmann::json config = nlohmann::json::object();
    std::string trace_path;
    std::optional<double> t1;
    std::optional<double> t2;
    nlohmann::json outer;  // subset summary, outer only

    [[nodiscard]] bool converged() const { return status == "Converged"; }
    [[nodiscard]] nlohmann::json to_json() const;
    static RunReport from_json(const nlohmann::json& doc);
};

struct MethodOptions {
    BendersConfig benders;
    int subsets = 2;
    double gamma = 1.0;
};

/// Runs one method and summarizes it. Engine traces go to `trace` when set.
RunReport run_method(Method method, const SystemInstance& instance, const ScenarioSet& scenarios,
                     const MethodOptions& options, std::ostream* trace = nullptr);

struct ComparisonTable {
    std::string text;
    nlohmann::json json;
    bool disagreement = false;
};

/// Objectives disagree when |a - b| > 2 epsilon max(1, |b|) against the first
/// report with an objective. Needs at least two reports of one instance.
ComparisonTable emit_comparison_table(const std::vector<RunReport>& reports, double epsilon);

nlohmann::json config_to_json(const MethodOptions& options);

}  // namespace suc
