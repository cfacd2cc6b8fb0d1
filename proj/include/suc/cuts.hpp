// SPDX-FileCopyrightText: Contributors to the suc-benders project
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <vector>

namespace suc {

enum class CutMode { SingleCut, MultiCut, Aggregated };

const char* to_string(CutMode mode);

enum class CutKind { PerScenario, ClusterAggregate, Consolidated };

const char* to_string(CutKind kind);

/// One optimality cut, stored in anchored form
///
///     sum_m theta_weight[m] * theta[members[m]] >= intercept + slopes . (x - anchor)
///
/// where x is the coupling vector (reserves, day-ahead wind, day-ahead flows)
/// laid out by CouplingLayout. For a PerScenario cut the weight is 1 and
/// intercept/slopes are the raw recourse value and duals. For aggregated
/// kinds the weights are the scenario probabilities and intercept/slopes are
/// the probability-weighted sums over the members.
struct Cut {
    int iteration = 0;
    CutKind kind = CutKind::PerScenario;
    std::vector<int> members;
    std::vector<double> theta_weights;
    double intercept = 0.0;
    std::vector<double> slopes;
    std::vector<double> anchor;
};

/// Live cuts plus the bookkeeping of consolidation.
struct CutPool {
    std::vector<Cut> cuts;

    /// Consecutive master solves in which every ClusterAggregate cut of
    /// iteration k had a zero multiplier (a_k).
    std::map<int, int> inactivity;

    /// Iterations whose cluster cuts were merged into one Consolidated cut.
    std::vector<int> consolidated;

    [[nodiscard]] int live_rows() const { return static_cast<int>(cuts.size()); }
    [[nodiscard]] int count(CutKind kind) const;
    [[nodiscard]] bool is_consolidated(int iteration) const;
};

}  // namespace suc
