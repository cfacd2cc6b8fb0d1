// SPDX-FileCopyrightText: Contributors to the suc-benders project
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

#include "suc/clustering.hpp"
#include "suc/cut_manager.hpp"
#include "suc/cuts.hpp"
#include "suc/formulation.hpp"
#include "suc/power_system.hpp"

namespace suc {

/// Commitment values u(g, t) held fixed in every master solve.
using CommitmentFix = std::map<std::pair<int, int>, double>;

struct BendersConfig {
    CutMode mode = CutMode::MultiCut;
    double epsilon = 1e-6;  // $, on |upper - lower|
    double mip_gap = 1e-6;
    std::optional<double> theta_min;  // default_theta_min() when empty
    int max_iterations = 500;

    // Aggregated mode
    AdaptiveSettings adaptive_settings;
    bool adaptive = true;  // false keeps the cluster count at initial_clusters
    int initial_clusters = 1;
    ClusterMethod clustering = ClusterMethod::Hierarchical;
    ClusterAttribute attribute = ClusterAttribute::Duals;
    bool consolidate = false;
    int kappa = 5;

    int workers = 1;
    CommitmentFix fixed_commitment;
    const std::atomic<bool>* cancel = nullptr;  // polled between iterations
    std::ostream* trace = nullptr;              // JSON lines, one per iteration
    bool record = false;                        // keep subproblem results per iteration

    /// Throws InvalidArgument when a knob is out of range for `num_scenarios`.
    void validate(int num_scenarios) const;
};

struct IterationRecord {
    int iteration = 0;
    double master_objective = 0.0;
    double lower_bound = 0.0;      // running maximum of the master objectives
    double upper_candidate = 0.0;  // C_DA + sum pi Q at this iteration's master point
    double upper_bound = 0.0;      // running minimum of the candidates
    int clusters = 0;              // cuts generated this iteration
    int master_rows = 0;
    double master_time_s = 0.0;
    double max_sub_time_s = 0.0;
    int rows_removed = 0;  // by consolidation

    [[nodiscard]] double gap() const { return upper_bound - lower_bound; }
    [[nodiscard]] nlohmann::json to_json() const;
};

struct BendersState {
    int iteration = 0;
    double upper_bound = 0.0;
    double lower_bound = 0.0;
    int clusters = 0;
    std::vector<IterationRecord> history;
    FirstStageSolution incumbent;
};

/// Subproblem data of one iteration, kept when BendersConfig::record is set.
struct IterationData {
    int iteration = 0;
    std::vector<double> point;  // coupling vector of the master solution
    FirstStageSolution solution;
    std::vector<SubproblemResult> results;
};

enum class RunStatus { Converged, NotConverged, Canceled };

const char* to_string(RunStatus status);

struct ConvergedSolution {
    RunStatus status = RunStatus::NotConverged;
    double objective = 0.0;  // best upper bound
    FirstStageSolution solution;
    BendersState state;
    CutPool pool;
    int max_master_rows = 0;
    double wall_time_s = 0.0;
    std::vector<IterationData> recorded;

    [[nodiscard]] bool converged() const { return status == RunStatus::Converged; }
};

struct Bounds {
    double upper_candidate;
    double lower;
};

/// C_DA + sum pi Q for the candidate, master objective for the lower bound.
/// results[i] must belong to scenario i.
Bounds compute_bounds(double day_ahead_cost, std::span<const SubproblemResult> results,
                      std::span<const double> probability, double master_objective);

/// Recourse value and fixing-row duals of one scenario. A non-optimal LP
/// throws InternalError since the recourse is complete.
SubproblemResult solve_subproblem(const SystemInstance& instance, const ScenarioSet& scenarios, int scenario,
                                  const FirstStageSolution& x_hat);

/// All scenarios on `workers` threads; the result vector is in scenario order.
std::vector<SubproblemResult> solve_subproblems(const SystemInstance& instance, const ScenarioSet& scenarios,
                                                const FirstStageSolution& x_hat, int workers);

ConvergedSolution run(const SystemInstance& instance, const ScenarioSet& scenarios, const BendersConfig& config);

}  // namespace suc
