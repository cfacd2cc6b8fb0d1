// SPDX-FileCopyrightText: Contributors to the suc-benders project
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include <json.hpp>

#include "suc/array2d.hpp"
#include "suc/benders.hpp"
#include "suc/clustering.hpp"
#include "suc/power_system.hpp"

namespace suc {

/// Scenario subsets for the first pass: subset e holds cluster e plus the
/// medoids of every other cluster.
struct SubsetPlan {
    ClusterAssignment clusters;
    std::vector<std::vector<int>> subsets;  // scenario indices; own cluster first, then foreign medoids
    double gamma = 1.0;

    /// Number of subset solves that must finish before the rest are canceled.
    [[nodiscard]] int completion_quota() const;
    [[nodiscard]] ScenarioSet scenarios(const ScenarioSet& all, int subset) const;
};

SubsetPlan subsets_from_clusters(const ClusterAssignment& clusters, double gamma);

/// k-medoids on the flattened wind realizations, then subsets_from_clusters.
SubsetPlan form_subsets(const ScenarioSet& scenarios, int num_clusters, double gamma = 1.0);

enum class SubsetStatus { Completed, Canceled, Failed };

const char* to_string(SubsetStatus status);

struct SubsetOutcome {
    int id = 0;
    SubsetStatus status = SubsetStatus::Canceled;
    Array2D<double> commitment;  // G x T, Completed only
    double objective = 0.0;
    double tau_s = 0.0;
    int iterations = 0;
    int max_master_rows = 0;
    std::string message;
};

/// Solves every subset with the Benders engine on up to `workers` threads.
/// Once completion_quota() solves have converged, the others are told to
/// stop at their next iteration boundary and reported as Canceled.
std::vector<SubsetOutcome> solve_subsets(const SystemInstance& instance, const ScenarioSet& scenarios,
                                         const SubsetPlan& plan, const BendersConfig& config, int workers);

/// Commitments u(g, t) shared by every Completed outcome.
CommitmentFix intersect_commitments(const std::vector<SubsetOutcome>& outcomes);

struct OuterResult {
    SubsetPlan plan;
    std::vector<SubsetOutcome> outcomes;
    CommitmentFix fixed;
    ConvergedSolution solution;  // second pass on the full scenario set
    double t1 = 0.0;             // slowest Completed subset
    double t2 = 0.0;             // second pass
    int max_master_rows = 0;

    [[nodiscard]] int free_count() const;
    [[nodiscard]] nlohmann::json summary() const;
};

OuterResult run_outer(const SystemInstance& instance, const ScenarioSet& scenarios, const BendersConfig& config,
                      int num_clusters, double gamma);

}  // namespace suc
