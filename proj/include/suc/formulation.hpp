// SPDX-FileCopyrightText: Contributors to the suc-benders project
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "suc/array2d.hpp"
#include "suc/cuts.hpp"
#include "suc/lp_backend.hpp"
#include "suc/power_system.hpp"

namespace suc {

/// Flat layout of the first-stage quantities that the recourse problem sees:
/// up reserves (G x T), down reserves (G x T), wind dispatch (J x T) and
/// day-ahead line flows (L x T), each block row-major. Cut slopes, subproblem
/// duals and the dual clustering features all use this layout.
struct CouplingLayout {
    int generators = 0;
    int farms = 0;
    int lines = 0;
    int periods = 0;

    static CouplingLayout of(const SystemInstance& instance);

    [[nodiscard]] int size() const { return periods * (2 * generators + farms + lines); }
    [[nodiscard]] int reserve_up(int g, int t) const { return g * periods + t; }
    [[nodiscard]] int reserve_down(int g, int t) const { return (generators + g) * periods + t; }
    [[nodiscard]] int wind(int j, int t) const { return (2 * generators + j) * periods + t; }
    [[nodiscard]] int flow(int l, int t) const { return (2 * generators + farms + l) * periods + t; }
};

struct FirstStageSolution {
    Array2D<double> commitment;  // u, G x T
    Array2D<double> startup;     // y
    Array2D<double> shutdown;    // z
    Array2D<double> power;       // p
    Array2D<double> reserve_up;
    Array2D<double> reserve_down;
    Array2D<double> wind;   // J x T
    Array2D<double> angle;  // N x T
    Array2D<double> flow;   // L x T
    double day_ahead_cost = 0.0;

    /// Coupling vector in CouplingLayout order.
    [[nodiscard]] std::vector<double> coupling() const;
};

struct SecondStageSolution {
    Array2D<double> deploy_up;    // G x T
    Array2D<double> deploy_down;  // G x T
    Array2D<double> spill;        // J x T
    Array2D<double> shed;         // N x T
    Array2D<double> flow;         // L x T
    Array2D<double> angle;        // N x T
    double recourse_cost = 0.0;
};

/// Recourse value and fixing-row duals of one scenario at one first-stage point.
struct SubproblemResult {
    int scenario = 0;
    double recourse_cost = 0.0;
    std::vector<double> duals;  // CouplingLayout order: lambda+, lambda-, lambda^W, lambda^F
    double wall_time_s = 0.0;
};

struct FirstStageVars {
    Array2D<int> commitment, startup, shutdown, power, reserve_up, reserve_down;
    Array2D<int> wind, angle, flow;

    /// Variable ids in CouplingLayout order.
    [[nodiscard]] std::vector<int> coupling(const CouplingLayout& layout) const;
};

struct RecourseVars {
    Array2D<int> deploy_up, deploy_down, spill, shed, flow, angle;
};

struct ExtensiveModel {
    ModelHandle model;
    FirstStageVars first;
    std::vector<RecourseVars> recourse;
};

struct MasterModel {
    ModelHandle model;
    FirstStageVars first;
    std::vector<int> theta;  // one entry in SingleCut mode, |scenarios| otherwise
    int first_stage_rows = 0;
    int cut_row_begin = 0;  // row id of pool.cuts[0]; cuts are contiguous in pool order
};

struct SubproblemModel {
    ModelHandle model;
    RecourseVars vars;
    std::vector<int> fixing_rows;  // CouplingLayout order
};

/// Provable lower bound on every scenario's recourse value:
/// -sum_t sum_g C^-_g R^-_g.
double default_theta_min(const SystemInstance& instance);

/// Day-ahead cost of the first-stage decisions.
double day_ahead_cost(const SystemInstance& instance, const FirstStageSolution& x);

ExtensiveModel build_extensive(const SystemInstance& instance, const ScenarioSet& scenarios);

/// Master problem for `mode` with every live pool cut materialized as a row.
/// Throws InvalidArgument when a pool cut does not fit the mode.
MasterModel build_master(const SystemInstance& instance, const ScenarioSet& scenarios, CutMode mode,
                         const CutPool& pool, double theta_min);

/// Recourse LP of `scenario` with the coupling variables pinned to x_hat.
SubproblemModel build_subproblem(const SystemInstance& instance, const ScenarioSet& scenarios, int scenario,
                                 const FirstStageSolution& x_hat);

FirstStageSolution extract_first_stage(const SystemInstance& instance, const FirstStageVars& vars,
                                       std::span<const double> primal);

SecondStageSolution extract_second_stage(const SystemInstance& instance, const RecourseVars& vars,
                                         std::span<const double> primal);

/// Cut value at the coupling point `x` (CouplingLayout order).
double evaluate_cut(const Cut& cut, std::span<const double> x);
double evaluate_cut(const Cut& cut, const FirstStageSolution& x);

/// Raw (unweighted) cut of one scenario anchored at `x_hat`.
Cut per_scenario_cut(int iteration, const SubproblemResult& result, std::span<const double> x_hat);

}  // namespace suc
