#include <gtest/gtest.h>

#include <atomic>
#include <sstream>

#include "suc/benders.hpp"
#include "suc/errors.hpp"
#include "suc/formulation.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace suc;
using suc::testing::Fixture;
using suc::testing::load_fixture;

namespace {

SubproblemResult result(int s, double q) {
    SubproblemResult r;
    r.scenario = s;
    r.recourse_cost = q;
    return r;
}

BendersConfig config(CutMode mode) {
    BendersConfig c;
    c.mode = mode;
    return c;
}

const Fixture& toy() {
    static const Fixture f = load_fixture("toy-a");
    return f;
}

double toy_oracle() {
    static const double value = suc::testing::enumerate_commitments(toy().instance, toy().scenarios).objective;
    return value;
}

}  // namespace

TEST(ComputeBounds, DirectFormula) {
    const std::vector<SubproblemResult> rs{result(0, 10.0), result(1, 30.0)};
    const std::vector<double> pi{0.5, 0.5};
    const Bounds b = compute_bounds(100.0, rs, pi, 90.0);
    EXPECT_DOUBLE_EQ(b.upper_candidate, 120.0);
    EXPECT_DOUBLE_EQ(b.lower, 90.0);
}

TEST(ComputeBounds, ZeroRecourse) {
    const std::vector<SubproblemResult> rs{result(0, 0.0), result(1, 0.0), result(2, 0.0)};
    const std::vector<double> pi{0.2, 0.3, 0.5};
    EXPECT_DOUBLE_EQ(compute_bounds(77.0, rs, pi, 0.0).upper_candidate, 77.0);
}

TEST(ComputeBounds, MissingScenario) {
    const std::vector<SubproblemResult> rs{result(0, 1.0)};
    const std::vector<double> pi{0.5, 0.5};
    EXPECT_THROW(compute_bounds(0.0, rs, pi, 0.0), InvalidArgument);
    const std::vector<SubproblemResult> swapped{result(1, 1.0), result(0, 1.0)};
    EXPECT_THROW(compute_bounds(0.0, swapped, pi, 0.0), InvalidArgument);
}

TEST(BendersRun, MultiCutMatchesEnumeration) {
    const ConvergedSolution out = run(toy().instance, toy().scenarios, config(CutMode::MultiCut));
    ASSERT_TRUE(out.converged());
    EXPECT_NEAR(out.objective, toy_oracle(), 1e-6 * std::abs(toy_oracle()));
}

TEST(BendersRun, SingleCutSameObjectiveMoreIterations) {
    const ConvergedSolution multi = run(toy().instance, toy().scenarios, config(CutMode::MultiCut));
    const ConvergedSolution single = run(toy().instance, toy().scenarios, config(CutMode::SingleCut));
    ASSERT_TRUE(single.converged());
    EXPECT_NEAR(single.objective, multi.objective, 2e-6 * std::abs(multi.objective));
    EXPECT_GE(single.state.iteration, multi.state.iteration);
}

TEST(BendersRun, BoundsBehave) {
    for (CutMode mode : {CutMode::SingleCut, CutMode::MultiCut, CutMode::Aggregated}) {
        const ConvergedSolution out = run(toy().instance, toy().scenarios, config(mode));
        ASSERT_TRUE(out.converged());
        const auto& h = out.state.history;
        double best = kInf;
        for (std::size_t i = 0; i < h.size(); ++i) {
            best = std::min(best, h[i].upper_candidate);
            EXPECT_EQ(h[i].upper_bound, best);
            EXPECT_GE(h[i].upper_bound, h[i].lower_bound - 1e-6);
            if (i > 0) EXPECT_GE(h[i].lower_bound, h[i - 1].lower_bound - 1e-9) << to_string(mode) << " " << i;
        }
        EXPECT_LE(std::abs(out.state.upper_bound - out.state.lower_bound), 1e-6);
        EXPECT_EQ(out.objective, out.state.upper_bound);
    }
}

TEST(BendersRun, CutsTightAtAnchor) {
    BendersConfig c = config(CutMode::MultiCut);
    c.record = true;
    const ConvergedSolution out = run(toy().instance, toy().scenarios, c);
    ASSERT_EQ(out.recorded.size(), out.state.history.size());
    for (const Cut& cut : out.pool.cuts) {
        const IterationData& it = out.recorded[cut.iteration - 1];
        const int s = cut.members[0];
        EXPECT_NEAR(evaluate_cut(cut, it.point), it.results[s].recourse_cost, 1e-6);
    }
}

TEST(BendersRun, OneScenarioModesCoincide) {
    Fixture f = toy();
    f.scenarios = f.scenarios.subset({1});
    std::vector<std::vector<double>> lower;
    for (CutMode mode : {CutMode::SingleCut, CutMode::MultiCut, CutMode::Aggregated}) {
        const ConvergedSolution out = run(f.instance, f.scenarios, config(mode));
        ASSERT_TRUE(out.converged());
        std::vector<double> seq;
        for (const auto& r : out.state.history) seq.push_back(r.lower_bound);
        lower.push_back(seq);
    }
    ASSERT_EQ(lower[0].size(), lower[1].size());
    ASSERT_EQ(lower[0].size(), lower[2].size());
    for (std::size_t i = 0; i < lower[0].size(); ++i) {
        EXPECT_NEAR(lower[0][i], lower[1][i], 1e-6 * std::max(1.0, std::abs(lower[1][i])));
        EXPECT_NEAR(lower[2][i], lower[1][i], 1e-6 * std::max(1.0, std::abs(lower[1][i])));
    }
}

TEST(BendersRun, IterationLimit) {
    BendersConfig c = config(CutMode::SingleCut);
    c.max_iterations = 3;
    const ConvergedSolution out = run(toy().instance, toy().scenarios, c);
    EXPECT_EQ(out.status, RunStatus::NotConverged);
    EXPECT_EQ(out.state.iteration, 3);
    EXPECT_EQ(out.state.history.size(), 3u);
}

TEST(BendersRun, CanceledBeforeStart) {
    std::atomic<bool> stop{true};
    BendersConfig c = config(CutMode::MultiCut);
    c.cancel = &stop;
    const ConvergedSolution out = run(toy().instance, toy().scenarios, c);
    EXPECT_EQ(out.status, RunStatus::Canceled);
    EXPECT_TRUE(out.state.history.empty());
}

TEST(BendersRun, TraceLines) {
    std::ostringstream trace;
    BendersConfig c = config(CutMode::Aggregated);
    c.trace = &trace;
    const ConvergedSolution out = run(toy().instance, toy().scenarios, c);
    std::istringstream in(trace.str());
    int lines = 0;
    for (std::string line; std::getline(in, line); ++lines) {
        const auto doc = nlohmann::json::parse(line);
        for (const char* key : {"iter", "lb", "ub", "gap", "clusters", "master_rows", "master_time_s",
                                "max_sub_time_s", "pool"})
            EXPECT_TRUE(doc.contains(key)) << key;
        EXPECT_EQ(doc["iter"], lines + 1);
    }
    EXPECT_EQ(lines, out.state.iteration);
}

TEST(BendersRun, RowAccounting) {
    BendersConfig c = config(CutMode::Aggregated);
    c.consolidate = true;
    c.kappa = 2;
    const ConvergedSolution out = run(toy().instance, toy().scenarios, c);
    const MasterModel empty = build_master(toy().instance, toy().scenarios, CutMode::Aggregated, {}, -1.0);
    const MasterModel final_master = build_master(toy().instance, toy().scenarios, CutMode::Aggregated, out.pool,
                                                  default_theta_min(toy().instance));
    EXPECT_EQ(final_master.model.num_rows(), empty.first_stage_rows + toy().scenarios.size() + out.pool.live_rows());
}

TEST(BendersConfig, Validation) {
    BendersConfig c;
    c.epsilon = 0.0;
    EXPECT_THROW(c.validate(3), InvalidArgument);
    c = {};
    c.adaptive_settings.zeta = 1.0;
    EXPECT_THROW(c.validate(3), InvalidArgument);
    c = {};
    c.adaptive_settings.rho = 0;
    EXPECT_THROW(c.validate(3), InvalidArgument);
    c = {};
    c.initial_clusters = 4;
    EXPECT_THROW(c.validate(3), InvalidArgument);
    c = {};
    c.kappa = 0;
    EXPECT_THROW(c.validate(3), InvalidArgument);
    EXPECT_NO_THROW(BendersConfig{}.validate(3));
}

TEST(SolveSubproblems, WorkerCountDoesNotMatter) {
    const MasterModel m = build_master(toy().instance, toy().scenarios, CutMode::MultiCut, {}, -10.0);
    const SolveResult ms = solve_milp(m.model, 1e-9);
    const FirstStageSolution x = extract_first_stage(toy().instance, m.first, ms.primal);
    const auto one = solve_subproblems(toy().instance, toy().scenarios, x, 1);
    const auto many = solve_subproblems(toy().instance, toy().scenarios, x, 8);
    ASSERT_EQ(one.size(), 3u);
    ASSERT_EQ(many.size(), 3u);
    for (int s = 0; s < 3; ++s) {
        EXPECT_EQ(one[s].scenario, s);
        EXPECT_EQ(many[s].scenario, s);
        EXPECT_NEAR(one[s].recourse_cost, many[s].recourse_cost, 1e-9);
        for (std::size_t i = 0; i < one[s].duals.size(); ++i) EXPECT_NEAR(one[s].duals[i], many[s].duals[i], 1e-9);
    }
}

TEST(SolveSubproblems, PerfectForesightIsFree) {
    Fixture f = toy();
    // Every scenario equal to the first one; schedule its wind exactly.
    for (auto& w : f.scenarios.wind) w = f.scenarios.wind[0];
    const MasterModel m = build_master(f.instance, f.scenarios, CutMode::MultiCut, {}, 0.0);
    ModelHandle model = m.model;
    for (int t = 0; t < f.instance.horizon; ++t) {
        const double w = f.scenarios.wind[0](0, t);
        model.set_bounds(m.first.wind(0, t), w, w);
        for (int g = 0; g < f.instance.num_generators(); ++g) {
            model.set_bounds(m.first.reserve_up(g, t), 0.0, 0.0);
            model.set_bounds(m.first.reserve_down(g, t), 0.0, 0.0);
        }
    }
    const SolveResult ms = solve_milp(model, 1e-9);
    ASSERT_TRUE(ms.optimal());
    const FirstStageSolution x = extract_first_stage(f.instance, m.first, ms.primal);
    for (const auto& r : solve_subproblems(f.instance, f.scenarios, x, 2)) EXPECT_NEAR(r.recourse_cost, 0.0, 1e-9);
}
