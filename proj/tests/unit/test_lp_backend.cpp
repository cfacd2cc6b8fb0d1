#include <gtest/gtest.h>

#include <Highs.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "suc/benders.hpp"
#include "suc/errors.hpp"
#include "suc/formulation.hpp"
#include "suc/lp_backend.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace suc;
using suc::testing::load_fixture;

TEST(SolveLp, FixingRowDualIsSlope) {
    ModelHandle m;
    const int x = m.add_variable("x", -kInf, kInf, 1.0);
    const int row = m.add_constraint("fix", {{x, 1.0}}, Sense::Equal, 3.0);
    const SolveResult r = solve_lp(m);
    ASSERT_TRUE(r.optimal());
    EXPECT_NEAR(r.objective, 3.0, 1e-12);
    EXPECT_NEAR(r.duals[row], 1.0, 1e-12);
    EXPECT_EQ(r.row_count, 1);
}

TEST(SolveLp, ConstantValueFunctionHasZeroDual) {
    ModelHandle m;
    const int x = m.add_variable("x", -kInf, kInf, 0.0);
    const int row = m.add_constraint("fix", {{x, 1.0}}, Sense::Equal, 3.0);
    const SolveResult r = solve_lp(m);
    ASSERT_TRUE(r.optimal());
    EXPECT_EQ(r.objective, 0.0);
    EXPECT_EQ(r.duals[row], 0.0);
}

TEST(SolveLp, BoundedBelowIsOptimal) {
    ModelHandle m;
    const int x = m.add_variable("x", -kInf, kInf, -1.0);
    m.add_constraint("cap", {{x, 1.0}}, Sense::LessEqual, 5.0);
    const SolveResult r = solve_lp(m);
    ASSERT_TRUE(r.optimal());
    EXPECT_NEAR(r.objective, -5.0, 1e-12);
}

TEST(SolveLp, FreeVariableIsUnbounded) {
    ModelHandle m;
    m.add_variable("x", -kInf, kInf, -1.0);
    const SolveResult r = solve_lp(m);
    EXPECT_EQ(r.status, SolveStatus::Unbounded);
    EXPECT_TRUE(r.primal.empty());
}

TEST(SolveLp, InfeasibleIsReported) {
    ModelHandle m;
    const int x = m.add_variable("x", 0.0, 1.0, 1.0);
    m.add_constraint("low", {{x, 1.0}}, Sense::GreaterEqual, 2.0);
    EXPECT_EQ(solve_lp(m).status, SolveStatus::Infeasible);
}

TEST(SolveLp, RejectsBinaries) {
    ModelHandle m;
    m.add_binary("x", 1.0);
    EXPECT_THROW(solve_lp(m), InvalidArgument);
}

TEST(SolveMilp, BinaryAtZero) {
    ModelHandle m;
    m.add_binary("x", 1.0);
    const SolveResult r = solve_milp(m, 1e-6);
    ASSERT_TRUE(r.optimal());
    EXPECT_EQ(r.objective, 0.0);
    EXPECT_TRUE(r.duals.empty());
}

TEST(SolveMilp, FixingDominates) {
    ModelHandle m;
    const int x = m.add_binary("x", 1.0);
    const SolveResult r = solve_milp(m, 1e-6, {{x, 1.0}});
    ASSERT_TRUE(r.optimal());
    EXPECT_EQ(r.objective, 1.0);
    EXPECT_EQ(r.fixed_vars.at(x), 1.0);
}

TEST(SolveMilp, InfeasibleFixingEchoesSet) {
    ModelHandle m;
    const int x = m.add_binary("x", 1.0);
    const int y = m.add_binary("y", 1.0);
    m.add_constraint("one", {{x, 1.0}, {y, 1.0}}, Sense::GreaterEqual, 1.0);
    const SolveResult r = solve_milp(m, 1e-6, {{x, 0.0}, {y, 0.0}});
    EXPECT_EQ(r.status, SolveStatus::Infeasible);
    EXPECT_EQ(r.fixed_vars.size(), 2u);
    EXPECT_NE(r.message.find("x=0"), std::string::npos);
}

TEST(SolveMilp, RejectsFractionalBinaryFix) {
    ModelHandle m;
    const int x = m.add_binary("x", 1.0);
    EXPECT_THROW(solve_milp(m, 1e-6, {{x, 0.5}}), InvalidArgument);
    EXPECT_THROW(solve_milp(m, 1e-6, {{7, 0.0}}), InvalidArgument);
}

TEST(SolveMilp, FixingDoesNotAddRows) {
    ModelHandle m;
    const int x = m.add_binary("x", 1.0);
    m.add_variable("y", 0.0, 1.0, 1.0);
    EXPECT_EQ(solve_milp(m, 1e-6, {{x, 1.0}}).row_count, 0);
}

TEST(ModelHandle, RegistryValidation) {
    ModelHandle m;
    EXPECT_THROW(m.add_variable("bad", 2.0, 1.0, 0.0), InvalidArgument);
    EXPECT_THROW(m.add_variable("b", 0.0, 2.0, 0.0, VarType::Binary), InvalidArgument);
    EXPECT_THROW(m.add_constraint("r", {{0, 1.0}}, Sense::Equal, 1.0), InvalidArgument);
    EXPECT_THROW(m.add_constraint("r", {}, Sense::Range, 1.0), InvalidArgument);
}

TEST(SolveMilp, ToyExtensiveMatchesEnumeration) {
    const auto f = load_fixture("toy-a");
    const auto oracle = suc::testing::enumerate_commitments(f.instance, f.scenarios);
    ASSERT_GT(oracle.feasible_patterns, 0);
    const ExtensiveModel ext = build_extensive(f.instance, f.scenarios);
    const SolveResult r = solve_milp(ext.model, 1e-9);
    ASSERT_TRUE(r.optimal());
    EXPECT_NEAR(r.objective, oracle.objective, 1e-6 * std::max(1.0, std::abs(oracle.objective)));
}

TEST(SolveMilp, Deterministic) {
    const auto f = load_fixture("toy-a");
    const ExtensiveModel ext = build_extensive(f.instance, f.scenarios);
    const SolveResult a = solve_milp(ext.model, 1e-6);
    const SolveResult b = solve_milp(ext.model, 1e-6);
    ASSERT_TRUE(a.optimal());
    EXPECT_EQ(a.primal, b.primal);
    EXPECT_EQ(a.objective, b.objective);
}

TEST(SolveLp, FiniteDifferenceMatchesDuals) {
    const auto f = load_fixture("toy-a");
    const MasterModel master = build_master(f.instance, f.scenarios, CutMode::MultiCut, {}, -1e3);
    const SolveResult ms = solve_milp(master.model, 1e-9);
    ASSERT_TRUE(ms.optimal());
    const FirstStageSolution x = extract_first_stage(f.instance, master.first, ms.primal);
    const double h = 1e-4;
    int checked = 0;
    for (int s = 0; s < f.scenarios.size(); ++s) {
        SubproblemModel sub = build_subproblem(f.instance, f.scenarios, s, x);
        const SolveResult base = solve_lp(sub.model);
        ASSERT_TRUE(base.optimal());
        const CouplingLayout layout = CouplingLayout::of(f.instance);
        // Flow fixings are skipped: a lone flow shift breaks the day-ahead
        // balance, and the recourse need not absorb it.
        for (int k = 0; k < layout.flow(0, 0); ++k) {
            const int row = sub.fixing_rows[k];
            const Constraint c = sub.model.row(row);
            auto shifted = [&](double delta) {
                const ModelHandle& m = sub.model;
                ModelHandle out;
                for (const auto& v : m.variables()) out.add_variable(v.name, v.lower, v.upper, v.cost, v.type);
                for (int i = 0; i < m.num_rows(); ++i) {
                    const auto& r = m.row(i);
                    const double d = i == row ? delta : 0.0;
                    out.add_range(r.name, r.terms, r.lower + d, r.upper + d);
                }
                const SolveResult res = solve_lp(out);
                EXPECT_TRUE(res.optimal());
                return res.objective;
            };
            const double forward = (shifted(h) - base.objective) / h;
            const double lambda = base.duals[row];
            EXPECT_GE(forward, lambda - 1e-3) << c.name;
            // Reserves and wind dispatch cannot go negative.
            if (c.lower < h) continue;
            const double backward = (base.objective - shifted(-h)) / h;
            // Subgradient: the dual lies between the one-sided slopes.
            EXPECT_LE(backward, lambda + 1e-3) << c.name;
            if (std::abs(forward - backward) <= 1e-6) {
                EXPECT_NEAR(forward, lambda, 1e-3) << c.name;
                ++checked;
            }
        }
    }
    EXPECT_GT(checked, 0);
}

TEST(WriteLp, RoundTripThroughReader) {
    const auto f = load_fixture("toy-a");
    const ExtensiveModel ext = build_extensive(f.instance, f.scenarios);
    const auto path = std::filesystem::temp_directory_path() / "suc_export.lp";
    {
        std::ofstream out(path);
        write_lp(ext.model, out);
    }
    Highs highs;
    highs.setOptionValue("output_flag", false);
    highs.setOptionValue("mip_rel_gap", 1e-9);
    ASSERT_NE(highs.readModel(path.string()), HighsStatus::kError);
    std::filesystem::remove(path);
    // The reader splits each ranged row into two.
    int ranged = 0;
    for (const auto& r : ext.model.rows()) ranged += r.sense() == Sense::Range ? 1 : 0;
    EXPECT_GT(ranged, 0);
    EXPECT_EQ(highs.getNumRow(), ext.model.num_rows() + ranged);
    EXPECT_EQ(highs.getNumCol(), ext.model.num_variables());
    ASSERT_NE(highs.run(), HighsStatus::kError);
    ASSERT_EQ(highs.getModelStatus(), HighsModelStatus::kOptimal);
    const SolveResult direct = solve_milp(ext.model, 1e-9);
    EXPECT_NEAR(highs.getInfo().objective_function_value, direct.objective, 1e-6 * std::abs(direct.objective));
}

TEST(WriteLp, SectionsPresent) {
    ModelHandle m;
    const int x = m.add_binary("x", 2.0);
    const int y = m.add_variable("y", -kInf, kInf, -1.0);
    m.add_range("r", {{x, 1.0}, {y, -1.0}}, -1.0, 4.0);
    std::ostringstream out;
    write_lp(m, out);
    const std::string text = out.str();
    for (const char* section : {"Minimize", "Subject To", "Bounds", "General", "End", "y free"})
        EXPECT_NE(text.find(section), std::string::npos) << section;
}
