// SPDX-FileCopyrightText: Contributors to the suc-benders project
//
// SPDX-License-Identifier: Apache-2.0

// HiGHS adapter. Every solve builds a fresh Highs object from the
// ModelHandle, so there is no shared state between concurrent solves.

#include "suc/lp_backend.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "Highs.h"
#include "suc/errors.hpp"

namespace suc {

namespace {

constexpr double kFeasibilityTolerance = 1e-9;

double to_highs(double v) {
    if (v == kInf) return kHighsInf;
    if (v == -kInf) return -kHighsInf;
    return v;
}

void check_var(const ModelHandle& model, int var) {
    if (var < 0 || var >= model.num_variables()) throw InvalidArgument("unknown variable id " + std::to_string(var));
}

HighsLp to_highs_lp(const ModelHandle& model, const std::map<int, double>& fixed, bool keep_integrality) {
    HighsLp lp;
    const int n = model.num_variables();
    const int m = model.num_rows();
    lp.num_col_ = n;
    lp.num_row_ = m;
    lp.sense_ = ObjSense::kMinimize;
    lp.offset_ = model.objective_offset();
    lp.col_cost_.resize(n);
    lp.col_lower_.resize(n);
    lp.col_upper_.resize(n);
    bool any_integer = false;
    for (int j = 0; j < n; ++j) {
        const auto& v = model.variable(j);
        lp.col_cost_[j] = v.cost;
        lp.col_lower_[j] = to_highs(v.lower);
        lp.col_upper_[j] = to_highs(v.upper);
        any_integer = any_integer || v.type == VarType::Binary;
    }
    for (const auto& [var, value] : fixed) {
        lp.col_lower_[var] = value;
        lp.col_upper_[var] = value;
    }
    if (keep_integrality && any_integer) {
        lp.integrality_.resize(n);
        for (int j = 0; j < n; ++j)
            lp.integrality_[j] =
                model.variable(j).type == VarType::Binary ? HighsVarType::kInteger : HighsVarType::kContinuous;
    }

    // Column-wise copy of the row-wise registry.
    std::vector<HighsInt> count(n + 1, 0);
    lp.row_lower_.resize(m);
    lp.row_upper_.resize(m);
    for (int i = 0; i < m; ++i) {
        const auto& r = model.row(i);
        lp.row_lower_[i] = to_highs(r.lower);
        lp.row_upper_[i] = to_highs(r.upper);
        for (const auto& t : r.terms) ++count[t.var + 1];
    }
    for (int j = 0; j < n; ++j) count[j + 1] += count[j];
    auto& a = lp.a_matrix_;
    a.format_ = MatrixFormat::kColwise;
    a.num_col_ = n;
    a.num_row_ = m;
    a.start_ = count;
    a.index_.resize(count[n]);
    a.value_.resize(count[n]);
    std::vector<HighsInt> next(count.begin(), count.end() - 1);
    for (int i = 0; i < m; ++i) {
        for (const auto& t : model.row(i).terms) {
            const HighsInt pos = next[t.var]++;
            a.index_[pos] = i;
            a.value_[pos] = t.coef;
        }
    }
    return lp;
}

void configure(Highs& highs) {
    highs.setOptionValue("output_flag", false);
    highs.setOptionValue("threads", 1);
    highs.setOptionValue("random_seed", 0);
    highs.setOptionValue("primal_feasibility_tolerance", kFeasibilityTolerance);
    highs.setOptionValue("dual_feasibility_tolerance", kFeasibilityTolerance);
}

SolveResult run(Highs& highs, const ModelHandle& model, bool mip) {
    SolveResult result;
    result.row_count = model.num_rows();
    const auto start = std::chrono::steady_clock::now();
    const HighsStatus status = highs.run();
    result.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const HighsModelStatus ms = highs.getModelStatus();
    if (status == HighsStatus::kError) {
        result.status = SolveStatus::Error;
        result.message = "HiGHS error: " + highs.modelStatusToString(ms);
        return result;
    }
    switch (ms) {
        case HighsModelStatus::kOptimal:
            result.status = SolveStatus::Optimal;
            break;
        case HighsModelStatus::kInfeasible:
            result.status = SolveStatus::Infeasible;
            break;
        case HighsModelStatus::kUnbounded:
            result.status = SolveStatus::Unbounded;
            break;
        case HighsModelStatus::kUnboundedOrInfeasible: {
            // Distinguish with a zero-objective feasibility solve.
            HighsLp probe = highs.getLp();
            std::fill(probe.col_cost_.begin(), probe.col_cost_.end(), 0.0);
            Highs feasibility;
            configure(feasibility);
            feasibility.passModel(probe);
            feasibility.run();
            result.status = feasibility.getModelStatus() == HighsModelStatus::kOptimal ? SolveStatus::Unbounded
                                                                                         : SolveStatus::Infeasible;
            break;
        }
        default:
            result.status = SolveStatus::Error;
            result.message = "HiGHS model status: " + highs.modelStatusToString(ms);
            return result;
    }
    if (result.status != SolveStatus::Optimal) return result;

    const HighsSolution& sol = highs.getSolution();
    result.objective = highs.getInfo().objective_function_value;
    result.primal.assign(sol.col_value.begin(), sol.col_value.end());
    if (!mip && sol.dual_valid) result.duals.assign(sol.row_dual.begin(), sol.row_dual.end());
    if (!mip && !sol.dual_valid) {
        result.status = SolveStatus::Error;
        result.message = "HiGHS returned no dual solution";
        result.primal.clear();
    }
    return result;
}

}  // namespace

Sense Constraint::sense() const {
    if (lower == upper) return Sense::Equal;
    if (lower == -kInf) return Sense::LessEqual;
    if (upper == kInf) return Sense::GreaterEqual;
    return Sense::Range;
}

int ModelHandle::add_variable(std::string name, double lower, double upper, double cost, VarType type) {
    if (lower > upper) throw InvalidArgument("variable " + name + ": lower bound exceeds upper bound");
    if (type == VarType::Binary && (lower < 0.0 || upper > 1.0))
        throw InvalidArgument("variable " + name + ": binary bounds must lie in [0, 1]");
    variables_.push_back({std::move(name), lower, upper, cost, type});
    return static_cast<int>(variables_.size()) - 1;
}

int ModelHandle::add_constraint(std::string name, std::vector<Term> terms, Sense sense, double rhs) {
    switch (sense) {
        case Sense::LessEqual:
            return add_range(std::move(name), std::move(terms), -kInf, rhs);
        case Sense::GreaterEqual:
            return add_range(std::move(name), std::move(terms), rhs, kInf);
        case Sense::Equal:
            return add_range(std::move(name), std::move(terms), rhs, rhs);
        case Sense::Range:
            break;
    }
    throw InvalidArgument("constraint " + name + ": use add_range for ranged rows");
}

int ModelHandle::add_range(std::string name, std::vector<Term> terms, double lower, double upper) {
    if (lower > upper) throw InvalidArgument("constraint " + name + ": lower exceeds upper");
    for (const auto& t : terms) check_var(*this, t.var);
    rows_.push_back({std::move(name), std::move(terms), lower, upper});
    return static_cast<int>(rows_.size()) - 1;
}

void ModelHandle::set_bounds(int var, double lower, double upper) {
    check_var(*this, var);
    if (lower > upper) throw InvalidArgument("set_bounds: lower exceeds upper");
    variables_[var].lower = lower;
    variables_[var].upper = upper;
}

void ModelHandle::set_cost(int var, double cost) {
    check_var(*this, var);
    variables_[var].cost = cost;
}

bool ModelHandle::has_integers() const {
    for (const auto& v : variables_)
        if (v.type == VarType::Binary) return true;
    return false;
}

const char* to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::Optimal:
            return "Optimal";
        case SolveStatus::Infeasible:
            return "Infeasible";
        case SolveStatus::Unbounded:
            return "Unbounded";
        case SolveStatus::Error:
            return "Error";
    }
    return "Error";
}

SolveResult solve_lp(const ModelHandle& model) {
    if (model.has_integers()) throw InvalidArgument("solve_lp: model has binary variables");
    Highs highs;
    configure(highs);
    if (highs.passModel(to_highs_lp(model, {}, false)) == HighsStatus::kError) {
        SolveResult r;
        r.row_count = model.num_rows();
        r.message = "HiGHS rejected the model";
        return r;
    }
    return run(highs, model, false);
}

SolveResult solve_milp(const ModelHandle& model, double mip_gap, const std::map<int, double>& fixed_vars) {
    for (const auto& [var, value] : fixed_vars) {
        check_var(model, var);
        const auto& v = model.variable(var);
        if (value < v.lower - kFeasibilityTolerance || value > v.upper + kFeasibilityTolerance)
            throw InvalidArgument("fixed value for " + v.name + " violates its bounds");
        if (v.type == VarType::Binary && value != 0.0 && value != 1.0)
            throw InvalidArgument("fixed value for binary " + v.name + " is not 0/1");
    }
    Highs highs;
    configure(highs);
    highs.setOptionValue("mip_rel_gap", mip_gap);
    highs.setOptionValue("mip_abs_gap", 0.0);
    highs.setOptionValue("mip_feasibility_tolerance", kFeasibilityTolerance);
    // The Benders masters carry dense cut rows; restarts and sub-MIP
    // heuristics cost far more than they save on them.
    highs.setOptionValue("mip_allow_restart", false);
    highs.setOptionValue("mip_heuristic_run_rins", false);
    highs.setOptionValue("mip_heuristic_run_rens", false);
    highs.setOptionValue("mip_heuristic_run_root_reduced_cost", false);
    highs.setOptionValue("mip_heuristic_run_zi_round", false);
    highs.setOptionValue("mip_heuristic_run_shifting", false);
    SolveResult result;
    if (highs.passModel(to_highs_lp(model, fixed_vars, true)) == HighsStatus::kError) {
        result.row_count = model.num_rows();
        result.message = "HiGHS rejected the model";
    } else {
        result = run(highs, model, true);
    }
    result.fixed_vars = fixed_vars;
    if (result.status == SolveStatus::Infeasible && !fixed_vars.empty()) {
        std::ostringstream msg;
        msg << "infeasible with " << fixed_vars.size() << " fixed variables:";
        for (const auto& [var, value] : fixed_vars) msg << ' ' << model.variable(var).name << '=' << value;
        result.message = msg.str();
    }
    return result;
}

ModelHandle fix_integers(const ModelHandle& model, std::span<const double> primal) {
    if (primal.size() != static_cast<std::size_t>(model.num_variables()))
        throw DimensionError("fix_integers: primal vector size mismatch");
    ModelHandle out;
    for (int j = 0; j < model.num_variables(); ++j) {
        const auto& v = model.variable(j);
        if (v.type == VarType::Binary) {
            const double value = std::round(primal[j]);
            out.add_variable(v.name, value, value, v.cost, VarType::Continuous);
        } else {
            out.add_variable(v.name, v.lower, v.upper, v.cost, VarType::Continuous);
        }
    }
    for (const auto& r : model.rows()) out.add_range(r.name, r.terms, r.lower, r.upper);
    out.set_objective_offset(model.objective_offset());
    return out;
}

}  // namespace suc
