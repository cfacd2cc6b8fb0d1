// SPDX-FileCopyrightText: Contributors to the suc-benders project
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace suc {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarType { Continuous, Binary };

enum class Sense { LessEqual, GreaterEqual, Equal, Range };

struct Term {
    int var;
    double coef;
};

struct Variable {
    std::string name;
    double lower = 0.0;
    double upper = kInf;
    double cost = 0.0;
    VarType type = VarType::Continuous;
};

/// One row `lower <= sum(coef * var) <= upper`.
struct Constraint {
    std::string name;
    std::vector<Term> terms;
    double lower = -kInf;
    double upper = kInf;

    [[nodiscard]] Sense sense() const;
};

/// Solver-independent minimization model. Variables and rows are addressed by
/// the dense integer id returned when they are added.
class ModelHandle {
public:
    int add_variable(std::string name, double lower, double upper, double cost,
                     VarType type = VarType::Continuous);
    int add_binary(std::string name, double cost) { return add_variable(std::move(name), 0.0, 1.0, cost, VarType::Binary); }

    int add_constraint(std::string name, std::vector<Term> terms, Sense sense, double rhs);
    int add_range(std::string name, std::vector<Term> terms, double lower, double upper);

    void set_bounds(int var, double lower, double upper);
    void set_cost(int var, double cost);
    void set_objective_offset(double offset) { objective_offset_ = offset; }

    [[nodiscard]] int num_variables() const { return static_cast<int>(variables_.size()); }
    [[nodiscard]] int num_rows() const { return static_cast<int>(rows_.size()); }
    [[nodiscard]] bool has_integers() const;
    [[nodiscard]] double objective_offset() const { return objective_offset_; }

    [[nodiscard]] const Variable& variable(int id) const { return variables_.at(id); }
    [[nodiscard]] const Constraint& row(int id) const { return rows_.at(id); }
    [[nodiscard]] const std::vector<Variable>& variables() const { return variables_; }
    [[nodiscard]] const std::vector<Constraint>& rows() const { return rows_; }

private:
    std::vector<Variable> variables_;
    std::vector<Constraint> rows_;
    double objective_offset_ = 0.0;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded, Error };

const char* to_string(SolveStatus status);

struct SolveResult {
    SolveStatus status = SolveStatus::Error;
    double objective = 0.0;
    std::vector<double> primal;  // by variable id, Optimal only
    std::vector<double> duals;   // by row id, Optimal LP only
    int row_count = 0;
    double wall_time_s = 0.0;
    std::string message;
    std::map<int, double> fixed_vars;  // echo of the fixing set, MILP only

    [[nodiscard]] bool optimal() const { return status == SolveStatus::Optimal; }
};

/// Solves a pure LP. Row duals follow the sensitivity convention: the dual of
/// a row is d(objective)/d(rhs), so for a fixing row `x = x_hat` it is a
/// subgradient of the optimal value as a function of `x_hat`.
SolveResult solve_lp(const ModelHandle& model);

/// Solves a MILP to relative gap `mip_gap`. Variables in `fixed_vars` are held
/// at the given value through their bounds (no rows are added).
SolveResult solve_milp(const ModelHandle& model, double mip_gap, const std::map<int, double>& fixed_vars = {});

/// Copy of `model` with every binary fixed at its rounded value in `primal`
/// and integrality dropped. Used to read row duals at a MILP optimum.
ModelHandle fix_integers(const ModelHandle& model, std::span<const double> primal);

/// CPLEX-LP text export.
void write_lp(const ModelHandle& model, std::ostream& out);

}  // namespace suc
