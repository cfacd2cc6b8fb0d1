#include <gtest/gtest.h>

#include "suc/benders.hpp"
#include "suc/errors.hpp"
#include "suc/formulation.hpp"
#include "suc/lp_backend.hpp"
#include "support/checks.hpp"
#include "support/fixtures.hpp"

using namespace suc;
using suc::testing::Fixture;
using suc::testing::load_fixture;

namespace {

// Constraint census, one term per equation family.
int first_stage_census(const SystemInstance& inst) {
    const int T = inst.horizon;
    int rows = 0;
    for (const auto& g : inst.generators) {
        const int forced = std::min(T, g.initial_on_periods + g.initial_off_periods);
        rows += forced;                 // initial status
        rows += 2 * (T - forced);       // minimum up and down time
        rows += T;                      // start-up / shut-down transition
        rows += T;                      // no simultaneous start-up and shut-down
        rows += 2 * T;                  // ramp up, ramp down
        rows += 2 * T;                  // lower and upper output limits
        rows += 2 * T;                  // reserve offer caps
    }
    rows += inst.num_farms() * T;       // wind dispatch limit
    rows += inst.num_nodes() * T;       // nodal balance
    rows += 2 * inst.num_lines() * T;   // flow limit, flow definition
    return rows;
}

int recourse_census(const SystemInstance& inst) {
    const int T = inst.horizon;
    return inst.num_nodes() * T                  // real-time balance
           + 2 * inst.num_generators() * T       // deployment limits
           + inst.num_farms() * T                // spillage limit
           + inst.num_nodes() * T                // shedding limit
           + 2 * inst.num_lines() * T;           // real-time flow limit and definition
}

FirstStageSolution zero_point(const SystemInstance& inst) {
    const auto G = static_cast<std::size_t>(inst.num_generators());
    const auto T = static_cast<std::size_t>(inst.horizon);
    FirstStageSolution x;
    x.commitment = x.startup = x.shutdown = x.power = x.reserve_up = x.reserve_down = Array2D<double>(G, T, 0.0);
    x.wind = Array2D<double>(inst.wind_farms.size(), T, 0.0);
    x.angle = Array2D<double>(inst.nodes.size(), T, 0.0);
    x.flow = Array2D<double>(inst.lines.size(), T, 0.0);
    return x;
}

Cut cut_with(int dim, double intercept) {
    Cut c;
    c.members = {0};
    c.theta_weights = {1.0};
    c.intercept = intercept;
    c.slopes.assign(dim, 0.0);
    c.anchor.assign(dim, 0.0);
    return c;
}

}  // namespace

TEST(Census, ToyExtensive) {
    const Fixture f = load_fixture("toy-a");
    const ExtensiveModel ext = build_extensive(f.instance, f.scenarios);
    EXPECT_EQ(ext.model.num_rows(), first_stage_census(f.instance) + 3 * recourse_census(f.instance));
    EXPECT_EQ(first_stage_census(f.instance), 100);
    EXPECT_EQ(recourse_census(f.instance), 44);
}

TEST(Census, MediumExtensive) {
    const Fixture f = load_fixture("med-b");
    const ExtensiveModel ext = build_extensive(f.instance, f.scenarios);
    EXPECT_EQ(ext.model.num_rows(),
              first_stage_census(f.instance) + f.scenarios.size() * recourse_census(f.instance));
}

TEST(Census, EmptyPoolMasters) {
    for (const char* name : {"toy-a", "med-b"}) {
        const Fixture f = load_fixture(name);
        const int base = first_stage_census(f.instance);
        const int S = f.scenarios.size();
        EXPECT_EQ(build_master(f.instance, f.scenarios, CutMode::MultiCut, {}, -1.0).model.num_rows(), base + S);
        EXPECT_EQ(build_master(f.instance, f.scenarios, CutMode::Aggregated, {}, -1.0).model.num_rows(), base + S);
        EXPECT_EQ(build_master(f.instance, f.scenarios, CutMode::SingleCut, {}, -1.0).model.num_rows(), base + 1);
    }
}

TEST(Census, Subproblem) {
    const Fixture f = load_fixture("med-b");
    const SubproblemModel sub = build_subproblem(f.instance, f.scenarios, 0, zero_point(f.instance));
    EXPECT_EQ(sub.model.num_rows(), recourse_census(f.instance) + CouplingLayout::of(f.instance).size());
    EXPECT_FALSE(sub.model.has_integers());
}

TEST(BuildMaster, EmptyPoolSitsAtThetaMin) {
    const Fixture f = load_fixture("toy-a");
    const double theta_min = -250.0;
    // First-stage optimum on its own: the master with a zero recourse floor.
    const double c_da = solve_milp(build_master(f.instance, f.scenarios, CutMode::SingleCut, {}, 0.0).model, 1e-9)
                            .objective;
    for (CutMode mode : {CutMode::SingleCut, CutMode::MultiCut, CutMode::Aggregated}) {
        const SolveResult r = solve_milp(build_master(f.instance, f.scenarios, mode, {}, theta_min).model, 1e-9);
        ASSERT_TRUE(r.optimal());
        EXPECT_NEAR(r.objective, c_da + theta_min, 1e-6) << to_string(mode);
    }
}

TEST(BuildMaster, AggregatedCutShape) {
    const Fixture f = load_fixture("toy-a");
    const int dim = CouplingLayout::of(f.instance).size();
    CutPool pool;
    Cut c = cut_with(dim, 42.0);
    c.kind = CutKind::ClusterAggregate;
    c.members = {0, 1};
    c.theta_weights = {f.scenarios.probability[0], f.scenarios.probability[1]};
    c.slopes[0] = 2.0;
    c.anchor[0] = 5.0;
    pool.cuts.push_back(c);
    const MasterModel empty = build_master(f.instance, f.scenarios, CutMode::Aggregated, {}, -1.0);
    const MasterModel m = build_master(f.instance, f.scenarios, CutMode::Aggregated, pool, -1.0);
    ASSERT_EQ(m.model.num_rows(), empty.model.num_rows() + 1);
    ASSERT_EQ(m.cut_row_begin, empty.model.num_rows());
    const Constraint& row = m.model.row(m.cut_row_begin);
    // (theta_1/3 + theta_2/3 - 2 r+ >= 42 - 2*5) divided by the weight sum 2/3
    EXPECT_EQ(row.sense(), Sense::GreaterEqual);
    EXPECT_DOUBLE_EQ(row.lower, 48.0);
    ASSERT_EQ(row.terms.size(), 3u);
    EXPECT_EQ(row.terms[0].var, m.theta[0]);
    EXPECT_DOUBLE_EQ(row.terms[0].coef, 0.5);
    EXPECT_EQ(row.terms[1].var, m.theta[1]);
    EXPECT_EQ(row.terms[2].var, m.first.reserve_up(0, 0));
    EXPECT_DOUBLE_EQ(row.terms[2].coef, -3.0);
}

TEST(BuildMaster, ModePoolMismatch) {
    const Fixture f = load_fixture("toy-a");
    const int dim = CouplingLayout::of(f.instance).size();
    CutPool per_scenario;
    per_scenario.cuts.push_back(cut_with(dim, 1.0));
    EXPECT_THROW(build_master(f.instance, f.scenarios, CutMode::SingleCut, per_scenario, -1.0), InvalidArgument);
    EXPECT_THROW(build_master(f.instance, f.scenarios, CutMode::Aggregated, per_scenario, -1.0), InvalidArgument);

    CutPool aggregated = per_scenario;
    aggregated.cuts[0].kind = CutKind::ClusterAggregate;
    EXPECT_THROW(build_master(f.instance, f.scenarios, CutMode::MultiCut, aggregated, -1.0), InvalidArgument);

    CutPool short_cut;
    short_cut.cuts.push_back(cut_with(dim - 1, 1.0));
    EXPECT_THROW(build_master(f.instance, f.scenarios, CutMode::MultiCut, short_cut, -1.0), DimensionError);
}

TEST(BuildExtensive, PerfectForesightNeedsNoRecourse) {
    Fixture f = load_fixture("toy-a");
    // One scenario whose realization is the farm's full capacity.
    f.scenarios = f.scenarios.subset({0});
    for (double& w : f.scenarios.wind[0].flat()) w = f.instance.wind_farms[0].capacity;
    const ExtensiveModel ext = build_extensive(f.instance, f.scenarios);
    const SolveResult r = solve_milp(ext.model, 1e-9);
    ASSERT_TRUE(r.optimal());
    const SecondStageSolution rt = extract_second_stage(f.instance, ext.recourse[0], r.primal);
    for (const auto* block : {&rt.deploy_up, &rt.deploy_down, &rt.spill, &rt.shed})
        for (double v : block->flat()) EXPECT_NEAR(v, 0.0, 1e-6);
}

TEST(BuildExtensive, EmptySystemCostsNothing) {
    Fixture f = load_fixture("toy-a");
    for (double& l : f.instance.load.flat()) l = 0.0;
    for (auto& g : f.instance.generators) g.initial_status = 0;
    const ExtensiveModel ext = build_extensive(f.instance, f.scenarios);
    const SolveResult r = solve_milp(ext.model, 1e-9);
    ASSERT_TRUE(r.optimal());
    EXPECT_NEAR(r.objective, 0.0, 1e-9);
    const FirstStageSolution x = extract_first_stage(f.instance, ext.first, r.primal);
    for (double u : x.commitment.flat()) EXPECT_EQ(u, 0.0);
}

TEST(BuildExtensive, SolutionSatisfiesFirstStage) {
    for (const char* name : {"toy-a", "med-b"}) {
        const Fixture f = load_fixture(name);
        const ExtensiveModel ext = build_extensive(f.instance, f.scenarios);
        const SolveResult r = solve_milp(ext.model, 1e-6);
        ASSERT_TRUE(r.optimal());
        const FirstStageSolution x = extract_first_stage(f.instance, ext.first, r.primal);
        EXPECT_LE(suc::testing::first_stage_violation(f.instance, x), 1e-6) << name;
        EXPECT_TRUE(suc::testing::commitment_violations(f.instance, x.commitment).empty()) << name;
        for (int s = 0; s < f.scenarios.size(); ++s) {
            const SecondStageSolution rt = extract_second_stage(f.instance, ext.recourse[s], r.primal);
            for (std::size_t n = 0; n < rt.shed.rows(); ++n)
                for (std::size_t t = 0; t < rt.shed.cols(); ++t) {
                    EXPECT_GE(rt.shed(n, t), -1e-6);
                    EXPECT_LE(rt.shed(n, t), f.instance.load(n, t) + 1e-6);
                }
            for (std::size_t j = 0; j < rt.spill.rows(); ++j)
                for (std::size_t t = 0; t < rt.spill.cols(); ++t) {
                    EXPECT_GE(rt.spill(j, t), -1e-6);
                    EXPECT_LE(rt.spill(j, t), f.scenarios.wind[s](j, t) + 1e-6);
                }
        }
    }
}

TEST(BuildSubproblem, PerfectForesightIsFree) {
    const Fixture f = load_fixture("toy-a");
    FirstStageSolution x = zero_point(f.instance);
    for (int t = 0; t < f.instance.horizon; ++t) x.wind(0, t) = f.scenarios.wind[1](0, t);
    const SubproblemResult r = solve_subproblem(f.instance, f.scenarios, 1, x);
    EXPECT_NEAR(r.recourse_cost, 0.0, 1e-9);
}

TEST(BuildSubproblem, WindDeficitIsShed) {
    const Fixture f = load_fixture("toy-a");
    FirstStageSolution x = zero_point(f.instance);
    for (int t = 0; t < f.instance.horizon; ++t) x.wind(0, t) = f.scenarios.wind[0](0, t);
    x.wind(0, 2) += 10.0;  // one hour with 10 MW less wind than scheduled
    const SubproblemResult r = solve_subproblem(f.instance, f.scenarios, 0, x);
    EXPECT_NEAR(r.recourse_cost, 10.0 * f.instance.shed_cost, 1e-6);
    const CouplingLayout layout = CouplingLayout::of(f.instance);
    EXPECT_NEAR(r.duals[layout.wind(0, 2)], f.instance.shed_cost, 1e-6);
}

TEST(BuildSubproblem, AlwaysOptimal) {
    const Fixture f = load_fixture("med-b");
    const CouplingLayout layout = CouplingLayout::of(f.instance);
    FirstStageSolution x = zero_point(f.instance);
    for (int t = 0; t < f.instance.horizon; ++t) {
        x.wind(0, t) = f.instance.wind_farms[0].capacity;
        x.reserve_up(0, t) = 40.0;
        x.flow(0, t) = -50.0;
    }
    for (int s = 0; s < f.scenarios.size(); ++s) {
        const SubproblemResult r = solve_subproblem(f.instance, f.scenarios, s, x);
        EXPECT_EQ(static_cast<int>(r.duals.size()), layout.size());
        EXPECT_GE(r.recourse_cost, default_theta_min(f.instance));
    }
}

TEST(EvaluateCut, TightAtAnchor) {
    const Fixture f = load_fixture("toy-a");
    FirstStageSolution x = zero_point(f.instance);
    x.reserve_up(0, 1) = 7.0;
    x.wind(0, 0) = 30.0;
    const SubproblemResult r = solve_subproblem(f.instance, f.scenarios, 2, x);
    const Cut c = per_scenario_cut(1, r, x.coupling());
    EXPECT_NEAR(evaluate_cut(c, x), r.recourse_cost, 1e-9);
}

TEST(EvaluateCut, ZeroDualsAreConstant) {
    const Fixture f = load_fixture("toy-a");
    const Cut c = cut_with(CouplingLayout::of(f.instance).size(), 12.5);
    FirstStageSolution x = zero_point(f.instance);
    x.flow(0, 3) = 44.0;
    EXPECT_DOUBLE_EQ(evaluate_cut(c, x), 12.5);
}

TEST(EvaluateCut, LinearInReserve) {
    const Fixture f = load_fixture("toy-a");
    const CouplingLayout layout = CouplingLayout::of(f.instance);
    Cut c = cut_with(layout.size(), 100.0);
    c.slopes[layout.reserve_up(1, 2)] = 2.0;
    c.anchor[layout.reserve_up(1, 2)] = 3.0;
    FirstStageSolution x = zero_point(f.instance);
    x.reserve_up(1, 2) = 8.0;
    EXPECT_DOUBLE_EQ(evaluate_cut(c, x), 110.0);
    EXPECT_THROW(evaluate_cut(c, std::vector<double>(3, 0.0)), DimensionError);
}

TEST(ThetaMin, DefaultBound) {
    const Fixture f = load_fixture("toy-a");
    // -(8*40 + 20*30) per hour over four hours
    EXPECT_DOUBLE_EQ(default_theta_min(f.instance), -3680.0);
}

TEST(Layout, BlocksAreContiguous) {
    const CouplingLayout layout{2, 1, 3, 4};
    EXPECT_EQ(layout.size(), 4 * (4 + 1 + 3));
    EXPECT_EQ(layout.reserve_up(1, 3), 7);
    EXPECT_EQ(layout.reserve_down(0, 0), 8);
    EXPECT_EQ(layout.wind(0, 0), 16);
    EXPECT_EQ(layout.flow(2, 3), 31);
}
