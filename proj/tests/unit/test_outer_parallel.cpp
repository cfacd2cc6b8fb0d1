#include <gtest/gtest.h>

#include "suc/errors.hpp"
#include "suc/outer_parallel.hpp"
#include "support/checks.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace suc;
using suc::testing::Fixture;
using suc::testing::load_fixture;

namespace {

ScenarioSet equiprobable(int n) {
    ScenarioSet s;
    for (int k = 0; k < n; ++k) {
        s.ids.push_back("w" + std::to_string(k + 1));
        s.probability.push_back(1.0 / n);
        s.wind.emplace_back(1, 2, double(k));
    }
    return s;
}

SubsetOutcome completed(int id, Array2D<double> u) {
    SubsetOutcome o;
    o.id = id;
    o.status = SubsetStatus::Completed;
    o.commitment = std::move(u);
    return o;
}

BendersConfig aggregated() {
    BendersConfig c;
    c.mode = CutMode::Aggregated;
    return c;
}

}  // namespace

TEST(SubsetFormation, SixScenarioExample) {
    // Clusters {w1,w2}, {w3,w4}, {w5,w6} with medoids w1, w3, w6.
    const ClusterAssignment clusters{3, {0, 0, 1, 1, 2, 2}, {0, 2, 5}};
    const SubsetPlan plan = subsets_from_clusters(clusters, 1.0);
    ASSERT_EQ(plan.subsets.size(), 3u);
    EXPECT_EQ(plan.subsets[0], (std::vector<int>{0, 1, 2, 5}));
    EXPECT_EQ(plan.subsets[1], (std::vector<int>{2, 3, 0, 5}));
    EXPECT_EQ(plan.subsets[2], (std::vector<int>{4, 5, 0, 2}));
    const ScenarioSet s1 = plan.scenarios(equiprobable(6), 0);
    EXPECT_EQ(s1.ids, (std::vector<std::string>{"w1", "w2", "w3", "w6"}));
    for (double p : s1.probability) EXPECT_DOUBLE_EQ(p, 0.25);
}

TEST(SubsetFormation, EveryScenarioAMedoid) {
    const ScenarioSet s = equiprobable(4);
    const SubsetPlan plan = form_subsets(s, 4);
    for (const auto& subset : plan.subsets) {
        std::vector<int> sorted = subset;
        std::sort(sorted.begin(), sorted.end());
        EXPECT_EQ(sorted, (std::vector<int>{0, 1, 2, 3}));
    }
}

TEST(SubsetFormation, Renormalized) {
    const ScenarioSet s = equiprobable(4);
    const ScenarioSet sub = s.subset({0, 1, 3});
    for (double p : sub.probability) EXPECT_DOUBLE_EQ(p, 1.0 / 3.0);
}

TEST(SubsetFormation, PlanInvariants) {
    const Fixture f = load_fixture("med-b");
    for (int E = 2; E <= 4; ++E) {
        const SubsetPlan plan = form_subsets(f.scenarios, E);
        std::vector<int> seen(f.scenarios.size(), 0);
        const auto members = plan.clusters.members();
        for (int e = 0; e < E; ++e) {
            for (int s : members[e]) ++seen[s];
            EXPECT_EQ(plan.subsets[e].size(), members[e].size() + E - 1);
            double total = 0.0;
            for (double p : plan.scenarios(f.scenarios, e).probability) total += p;
            EXPECT_NEAR(total, 1.0, 1e-12);
        }
        for (int c : seen) EXPECT_EQ(c, 1);
    }
}

TEST(SubsetFormation, CountOutOfRange) {
    const ScenarioSet s = equiprobable(3);
    EXPECT_THROW(form_subsets(s, 1), InvalidArgument);
    EXPECT_THROW(form_subsets(s, 4), InvalidArgument);
    EXPECT_THROW(form_subsets(s, 2, 0.0), InvalidArgument);
}

TEST(CompletionQuota, CeilingSemantics) {
    SubsetPlan plan;
    plan.subsets.resize(3);
    plan.gamma = 0.34;
    EXPECT_EQ(plan.completion_quota(), 2);
    plan.gamma = 1.0;
    EXPECT_EQ(plan.completion_quota(), 3);
    plan.gamma = 1.0 / 3.0;
    EXPECT_EQ(plan.completion_quota(), 1);
    plan.gamma = 0.01;
    EXPECT_EQ(plan.completion_quota(), 1);
    plan.subsets.resize(2);
    plan.gamma = 0.5;
    EXPECT_EQ(plan.completion_quota(), 1);
}

TEST(Intersect, SingleDifference) {
    Array2D<double> a(2, 4, 1.0), b(2, 4, 1.0);
    b(1, 2) = 0.0;
    const CommitmentFix fixed = intersect_commitments({completed(0, a), completed(1, b)});
    EXPECT_EQ(fixed.size(), 7u);
    EXPECT_FALSE(fixed.contains({1, 2}));
}

TEST(Intersect, OneOutcomeFixesEverything) {
    Array2D<double> a(2, 3, 0.0);
    a(0, 1) = 1.0;
    SubsetOutcome canceled;
    canceled.status = SubsetStatus::Canceled;
    const CommitmentFix fixed = intersect_commitments({canceled, completed(1, a)});
    EXPECT_EQ(fixed.size(), 6u);
    EXPECT_EQ(fixed.at({0, 1}), 1.0);
}

TEST(Intersect, IdenticalOutcomes) {
    Array2D<double> a(3, 2, 1.0);
    EXPECT_EQ(intersect_commitments({completed(0, a), completed(1, a), completed(2, a)}).size(), 6u);
}

TEST(Intersect, NeedsCompletedOutcome) {
    SubsetOutcome canceled;
    EXPECT_THROW(intersect_commitments({canceled}), InvalidArgument);
}

TEST(SolveSubsets, FullCompletion) {
    const Fixture f = load_fixture("toy-a");
    const SubsetPlan plan = form_subsets(f.scenarios, 2, 1.0);
    const auto outcomes = solve_subsets(f.instance, f.scenarios, plan, aggregated(), 2);
    ASSERT_EQ(outcomes.size(), 2u);
    for (const auto& o : outcomes) {
        EXPECT_EQ(o.status, SubsetStatus::Completed);
        EXPECT_GE(o.objective, 0.0);
        EXPECT_TRUE(suc::testing::commitment_violations(f.instance, o.commitment).empty());
    }
}

TEST(SolveSubsets, EarlyCutoff) {
    const Fixture f = load_fixture("toy-a");
    const SubsetPlan plan = form_subsets(f.scenarios, 3, 0.34);
    const auto outcomes = solve_subsets(f.instance, f.scenarios, plan, aggregated(), 1);
    int done = 0, canceled = 0;
    for (const auto& o : outcomes) {
        done += o.status == SubsetStatus::Completed;
        canceled += o.status == SubsetStatus::Canceled;
        if (o.status == SubsetStatus::Canceled) EXPECT_TRUE(o.commitment.empty());
    }
    EXPECT_EQ(done, 2);
    EXPECT_EQ(canceled, 1);
}

TEST(SolveSubsets, AllFailingIsError) {
    const Fixture f = load_fixture("toy-a");
    const SubsetPlan plan = form_subsets(f.scenarios, 2, 1.0);
    BendersConfig c = aggregated();
    c.max_iterations = 1;
    EXPECT_THROW(solve_subsets(f.instance, f.scenarios, plan, c, 1), Error);
}

TEST(RunOuter, ToyRecoversOptimum) {
    const Fixture f = load_fixture("toy-a");
    const double oracle = suc::testing::enumerate_commitments(f.instance, f.scenarios).objective;
    const OuterResult r = run_outer(f.instance, f.scenarios, aggregated(), 2, 1.0);
    ASSERT_TRUE(r.solution.converged());
    EXPECT_NEAR(r.solution.objective, oracle, 2e-6 * std::abs(oracle));
    double slowest = 0.0;
    for (const auto& o : r.outcomes)
        if (o.status == SubsetStatus::Completed) slowest = std::max(slowest, o.tau_s);
    EXPECT_EQ(r.t1, slowest);
    EXPECT_EQ(r.t2, r.solution.wall_time_s);
    EXPECT_GE(r.max_master_rows, r.solution.max_master_rows);
    const auto summary = r.summary();
    EXPECT_EQ(summary["subsets"].size(), 2u);
    EXPECT_EQ(summary["fixed_count"].get<int>() + summary["free_count"].get<int>(),
              f.instance.num_generators() * f.instance.horizon);
}

TEST(RunOuter, RestrictionNeverBeatsOracle) {
    const Fixture f = load_fixture("toy-a");
    const double oracle = suc::testing::enumerate_commitments(f.instance, f.scenarios).objective;
    const OuterResult r = run_outer(f.instance, f.scenarios, aggregated(), 3, 0.34);
    ASSERT_TRUE(r.solution.converged());
    EXPECT_GE(r.solution.objective, oracle - 1e-6);
}

TEST(RunOuter, SingleClusterRejected) {
    const Fixture f = load_fixture("toy-a");
    EXPECT_THROW(run_outer(f.instance, f.scenarios, aggregated(), 1, 1.0), InvalidArgument);
}
