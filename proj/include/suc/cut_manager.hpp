// SPDX-FileCopyrightText: Contributors to the suc-benders project
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "suc/array2d.hpp"
#include "suc/clustering.hpp"
#include "suc/cuts.hpp"
#include "suc/formulation.hpp"
#include "suc/power_system.hpp"

namespace suc {

enum class ClusterAttribute { Duals, Objective, WindStatic };

const char* to_string(ClusterAttribute attribute);

/// Min-max normalization of each dual family (reserve up, reserve down, wind,
/// flow) over all of its entries and all scenarios. Row i belongs to
/// results[i]. A constant family maps to 0.
Array2D<double> normalize_duals(std::span<const SubproblemResult> results, const CouplingLayout& layout);

/// Builds clustering features. The wind matrix depends only on the scenario
/// set, so it is computed on first use and reused afterwards.
class AttributeSelector {
public:
    explicit AttributeSelector(ClusterAttribute attribute) : attribute_(attribute) {}

    const Array2D<double>& select(std::span<const SubproblemResult> results, const ScenarioSet& scenarios,
                                  const CouplingLayout& layout);

    [[nodiscard]] ClusterAttribute attribute() const { return attribute_; }

private:
    ClusterAttribute attribute_;
    Array2D<double> features_;
    bool wind_cached_ = false;
};

/// Adds one ClusterAggregate cut per cluster of `assignment` built from
/// iteration `iteration`'s results at x_hat. results[i] must be scenario i.
/// Returns the number of rows added.
int aggregate_and_add(CutPool& pool, int iteration, std::span<const SubproblemResult> results,
                      std::span<const double> x_hat, std::span<const double> probability,
                      const ClusterAssignment& assignment);

/// Probability-weighted sum of per-scenario cuts over `members`.
Cut aggregate(int iteration, CutKind kind, std::span<const SubproblemResult> results, std::span<const double> x_hat,
              std::span<const double> probability, const std::vector<int>& members);

constexpr double kInactiveTolerance = 1e-9;

/// Updates the inactivity counters from the master row duals (cut c sits at
/// row cut_row_begin + c) and merges the ClusterAggregate cuts of every
/// iteration inactive for `kappa` consecutive master solves into one
/// Consolidated cut. Returns the number of rows removed.
int track_and_consolidate(CutPool& pool, std::span<const double> row_duals, int cut_row_begin, int kappa,
                          bool enabled = true);

struct AdaptiveSettings {
    double alpha = 0.01;  // dead-band base as a fraction of the best upper bound
    double zeta = 0.75;   // dead-band half-width as a fraction of the base
    int rho = 5;          // cluster increment
};

struct DeadBand {
    double up;    // below this lower-bound progress the count grows
    double down;  // above this it shrinks
};

DeadBand dead_band(double base, double zeta);

/// New cluster count given the lower-bound progress `delta` between two
/// consecutive master solves and the current best upper bound.
int adapt_cluster_count(int current, double delta, double best_upper_bound, const AdaptiveSettings& settings,
                        int num_scenarios);

/// Cut counts by kind, consolidated iterations and inactivity counters.
nlohmann::json pool_snapshot(const CutPool& pool);

}  // namespace suc
