#include <gtest/gtest.h>

#include <random>

#include "suc/cut_manager.hpp"
#include "suc/errors.hpp"
#include "suc/formulation.hpp"

using namespace suc;

namespace {

// Two generators, one farm, one line, two periods: 12 coupling entries.
const CouplingLayout kLayout{2, 1, 1, 2};

SubproblemResult result(int scenario, double q, std::vector<double> duals) {
    SubproblemResult r;
    r.scenario = scenario;
    r.recourse_cost = q;
    r.duals = std::move(duals);
    return r;
}

std::vector<SubproblemResult> random_results(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    std::vector<SubproblemResult> out;
    for (int s = 0; s < n; ++s) {
        std::vector<double> d(kLayout.size());
        for (double& v : d) v = u(rng);
        out.push_back(result(s, u(rng) + 100.0, d));
    }
    return out;
}

CutPool pool_with_iteration(int iteration, int clusters) {
    CutPool pool;
    for (int c = 0; c < clusters; ++c) {
        Cut cut;
        cut.iteration = iteration;
        cut.kind = CutKind::ClusterAggregate;
        cut.members = {c};
        cut.theta_weights = {0.25};
        cut.intercept = 10.0 * (c + 1);
        cut.slopes.assign(kLayout.size(), 1.0 + c);
        cut.anchor.assign(kLayout.size(), 0.0);
        pool.cuts.push_back(cut);
    }
    return pool;
}

}  // namespace

TEST(NormalizeDuals, AffineFamilyMap) {
    std::vector<SubproblemResult> rs;
    for (int s = 0; s < 3; ++s) {
        std::vector<double> d(kLayout.size(), 0.0);
        d[kLayout.wind(0, 0)] = 1.0 + 2.0 * s;  // 1, 3, 5
        d[kLayout.wind(0, 1)] = 3.0;
        rs.push_back(result(s, 0.0, d));
    }
    const Array2D<double> f = normalize_duals(rs, kLayout);
    EXPECT_EQ(f(0, kLayout.wind(0, 0)), 0.0);
    EXPECT_EQ(f(1, kLayout.wind(0, 0)), 0.5);
    EXPECT_EQ(f(2, kLayout.wind(0, 0)), 1.0);
    EXPECT_EQ(f(1, kLayout.wind(0, 1)), 0.5);  // (3 - 1) / (5 - 1)
}

TEST(NormalizeDuals, ConstantFamilyMapsToZero) {
    std::vector<SubproblemResult> rs;
    for (int s = 0; s < 3; ++s) {
        std::vector<double> d(kLayout.size(), 7.0);
        d[kLayout.flow(0, 0)] = s;
        rs.push_back(result(s, 0.0, d));
    }
    const Array2D<double> f = normalize_duals(rs, kLayout);
    for (int s = 0; s < 3; ++s) {
        EXPECT_EQ(f(s, kLayout.reserve_up(1, 1)), 0.0);
        EXPECT_EQ(f(s, kLayout.wind(0, 0)), 0.0);
        // Flow family spans 0..7.
        EXPECT_EQ(f(s, kLayout.flow(0, 1)), 1.0);
        EXPECT_DOUBLE_EQ(f(s, kLayout.flow(0, 0)), s / 7.0);
    }
}

TEST(NormalizeDuals, IdenticalScenariosGiveIdenticalRows) {
    auto rs = random_results(3, 1);
    rs[2].duals = rs[0].duals;
    const Array2D<double> f = normalize_duals(rs, kLayout);
    for (int i = 0; i < kLayout.size(); ++i) EXPECT_EQ(f(0, i), f(2, i));
}

TEST(NormalizeDuals, RandomTensorsInUnitRange) {
    for (unsigned seed = 0; seed < 20; ++seed) {
        const auto rs = random_results(6, seed);
        const Array2D<double> f = normalize_duals(rs, kLayout);
        for (double v : f.flat()) {
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, 1.0);
        }
    }
}

TEST(NormalizeDuals, SizeMismatch) {
    std::vector<SubproblemResult> rs{result(0, 0.0, {1.0, 2.0})};
    EXPECT_THROW(normalize_duals(rs, kLayout), DimensionError);
}

TEST(SelectAttributes, ObjectiveColumn) {
    std::vector<SubproblemResult> rs{result(0, 0.0, {}), result(1, 5.0, {}), result(2, 10.0, {})};
    AttributeSelector sel(ClusterAttribute::Objective);
    const Array2D<double>& f = sel.select(rs, ScenarioSet{}, kLayout);
    ASSERT_EQ(f.cols(), 1u);
    EXPECT_EQ(f(0, 0), 0.0);
    EXPECT_EQ(f(1, 0), 0.5);
    EXPECT_EQ(f(2, 0), 1.0);
}

TEST(SelectAttributes, WindIsCached) {
    ScenarioSet scen;
    for (int s = 0; s < 3; ++s) {
        scen.ids.push_back("s" + std::to_string(s));
        scen.probability.push_back(1.0 / 3.0);
        Array2D<double> w(1, 2);
        w(0, 0) = s;
        w(0, 1) = 2.0 * s;
        scen.wind.push_back(w);
    }
    AttributeSelector sel(ClusterAttribute::WindStatic);
    const Array2D<double> first = sel.select(random_results(3, 2), scen, kLayout);
    const Array2D<double> second = sel.select(random_results(3, 3), scen, kLayout);
    EXPECT_EQ(first, second);
    EXPECT_EQ(first.cols(), 2u);
    EXPECT_EQ(first(2, 1), 4.0);
}

TEST(SelectAttributes, ZeroDualsGiveZeroMatrix) {
    std::vector<SubproblemResult> rs;
    for (int s = 0; s < 4; ++s) rs.push_back(result(s, 0.0, std::vector<double>(kLayout.size(), 0.0)));
    AttributeSelector sel(ClusterAttribute::Duals);
    for (double v : sel.select(rs, ScenarioSet{}, kLayout).flat()) EXPECT_EQ(v, 0.0);
}

TEST(Aggregate, SingletonClustersScaleScenarioCuts) {
    const auto rs = random_results(3, 4);
    const std::vector<double> x(kLayout.size(), 2.0);
    const std::vector<double> pi{0.2, 0.3, 0.5};
    ClusterAssignment a{3, {0, 1, 2}, {}};
    CutPool pool;
    EXPECT_EQ(aggregate_and_add(pool, 1, rs, x, pi, a), 3);
    ASSERT_EQ(pool.cuts.size(), 3u);
    for (int s = 0; s < 3; ++s) {
        const Cut raw = per_scenario_cut(1, rs[s], x);
        const Cut& c = pool.cuts[s];
        EXPECT_EQ(c.members, std::vector<int>{s});
        EXPECT_DOUBLE_EQ(c.theta_weights[0], pi[s]);
        EXPECT_DOUBLE_EQ(c.intercept, pi[s] * raw.intercept);
        for (int i = 0; i < kLayout.size(); ++i) EXPECT_DOUBLE_EQ(c.slopes[i], pi[s] * raw.slopes[i]);
    }
}

TEST(Aggregate, LinearInMembers) {
    const auto rs = random_results(2, 5);
    const std::vector<double> x(kLayout.size(), 1.0);
    const std::vector<double> pi{0.5, 0.5};
    const Cut both = aggregate(1, CutKind::ClusterAggregate, rs, x, pi, {0, 1});
    const Cut a = aggregate(1, CutKind::ClusterAggregate, rs, x, pi, {0});
    const Cut b = aggregate(1, CutKind::ClusterAggregate, rs, x, pi, {1});
    EXPECT_NEAR(both.intercept, 0.5 * rs[0].recourse_cost + 0.5 * rs[1].recourse_cost, 1e-12);
    for (int i = 0; i < kLayout.size(); ++i) EXPECT_NEAR(both.slopes[i], a.slopes[i] + b.slopes[i], 1e-12);
}

TEST(Aggregate, EmptyClusterRejected) {
    const auto rs = random_results(3, 6);
    const std::vector<double> x(kLayout.size(), 0.0);
    const std::vector<double> pi{0.2, 0.3, 0.5};
    CutPool pool;
    EXPECT_THROW(aggregate_and_add(pool, 1, rs, x, pi, ClusterAssignment{3, {0, 0, 2}, {}}), InvalidArgument);
    EXPECT_THROW(aggregate(1, CutKind::ClusterAggregate, rs, x, pi, {}), InvalidArgument);
}

TEST(Aggregate, DominanceOnRandomPoints) {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    const auto rs = random_results(4, 8);
    const std::vector<double> anchor(kLayout.size(), 3.0);
    const std::vector<double> pi{0.1, 0.2, 0.3, 0.4};
    const Cut left = aggregate(1, CutKind::ClusterAggregate, rs, anchor, pi, {0, 1});
    const Cut right = aggregate(1, CutKind::ClusterAggregate, rs, anchor, pi, {2, 3});
    const Cut all = aggregate(1, CutKind::Consolidated, rs, anchor, pi, {0, 1, 2, 3});
    int tested = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        std::vector<double> x(kLayout.size());
        for (double& v : x) v = u(rng);
        std::vector<double> theta(4);
        for (double& v : theta) v = u(rng) * 20.0;
        bool per_scenario_ok = true;
        for (int s = 0; s < 4; ++s) per_scenario_ok &= theta[s] >= evaluate_cut(per_scenario_cut(1, rs[s], anchor), x);
        auto holds = [&](const Cut& c) {
            double lhs = 0.0;
            for (std::size_t m = 0; m < c.members.size(); ++m) lhs += c.theta_weights[m] * theta[c.members[m]];
            return lhs >= evaluate_cut(c, x) - 1e-9;
        };
        if (per_scenario_ok) {
            ++tested;
            EXPECT_TRUE(holds(left) && holds(right));
        }
        if (holds(left) && holds(right)) EXPECT_TRUE(holds(all));
    }
    // Points feasible for every scenario cut, built directly.
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> x(kLayout.size());
        for (double& v : x) v = u(rng);
        std::vector<double> theta(4);
        for (int s = 0; s < 4; ++s)
            theta[s] = evaluate_cut(per_scenario_cut(1, rs[s], anchor), x) + std::abs(u(rng));
        double lhs = 0.0;
        for (int s = 0; s < 4; ++s) lhs += pi[s] * theta[s];
        EXPECT_GE(lhs, evaluate_cut(all, x) - 1e-9);
        ++tested;
    }
    EXPECT_GT(tested, 0);
}

TEST(Consolidate, FiresAfterKappaInactiveSolves) {
    CutPool pool = pool_with_iteration(3, 4);
    const std::vector<double> zero(4, 0.0);
    EXPECT_EQ(track_and_consolidate(pool, zero, 0, 2), 0);  // master of iteration 4
    EXPECT_EQ(pool.inactivity.at(3), 1);
    EXPECT_EQ(track_and_consolidate(pool, zero, 0, 2), 3);  // iteration 5
    ASSERT_EQ(pool.cuts.size(), 1u);
    const Cut& c = pool.cuts[0];
    EXPECT_EQ(c.kind, CutKind::Consolidated);
    EXPECT_EQ(c.members, (std::vector<int>{0, 1, 2, 3}));
    EXPECT_DOUBLE_EQ(c.intercept, 100.0);
    EXPECT_DOUBLE_EQ(c.slopes[0], 10.0);
    EXPECT_EQ(pool.consolidated, std::vector<int>{3});
    EXPECT_TRUE(pool.is_consolidated(3));
    EXPECT_EQ(pool.count(CutKind::ClusterAggregate), 0);
    // Permanent: later solves leave it alone.
    EXPECT_EQ(track_and_consolidate(pool, std::vector<double>(1, 0.0), 0, 2), 0);
    EXPECT_EQ(pool.cuts.size(), 1u);
}

TEST(Consolidate, ActiveCutResetsCounter) {
    CutPool pool = pool_with_iteration(3, 3);
    const int begin = 5;
    std::vector<double> duals(begin + 3, 0.0);
    EXPECT_EQ(track_and_consolidate(pool, duals, begin, 2), 0);
    duals[begin + 1] = -0.3;
    EXPECT_EQ(track_and_consolidate(pool, duals, begin, 2), 0);
    EXPECT_EQ(pool.inactivity.at(3), 0);
    EXPECT_EQ(pool.cuts.size(), 3u);
}

TEST(Consolidate, ToleranceIsAbsolute) {
    CutPool pool = pool_with_iteration(1, 2);
    EXPECT_EQ(track_and_consolidate(pool, std::vector<double>{1e-10, -1e-9}, 0, 1), 1);
    CutPool other = pool_with_iteration(1, 2);
    EXPECT_EQ(track_and_consolidate(other, std::vector<double>{0.0, 2e-9}, 0, 1), 0);
}

TEST(Consolidate, DisabledLeavesPoolUnchanged) {
    CutPool pool = pool_with_iteration(3, 4);
    EXPECT_EQ(track_and_consolidate(pool, std::vector<double>(4, 0.0), 0, 1, false), 0);
    EXPECT_EQ(pool.cuts.size(), 4u);
    EXPECT_TRUE(pool.inactivity.empty());
}

TEST(Consolidate, MissingDualIsError) {
    CutPool pool = pool_with_iteration(3, 4);
    EXPECT_THROW(track_and_consolidate(pool, std::vector<double>(3, 0.0), 0, 2), InvalidArgument);
}

TEST(Consolidate, OnlyTheInactiveIterationMerges) {
    CutPool pool = pool_with_iteration(1, 2);
    CutPool later = pool_with_iteration(2, 3);
    pool.cuts.insert(pool.cuts.end(), later.cuts.begin(), later.cuts.end());
    std::vector<double> duals(5, 0.0);
    duals[4] = 1.0;  // a cut of iteration 2 binds
    EXPECT_EQ(track_and_consolidate(pool, duals, 0, 1), 1);
    ASSERT_EQ(pool.cuts.size(), 4u);
    EXPECT_EQ(pool.cuts[0].kind, CutKind::Consolidated);
    EXPECT_EQ(pool.count(CutKind::ClusterAggregate), 3);
}

TEST(Adaptive, GrowsBelowBand) {
    const DeadBand band = dead_band(100.0, 0.75);
    EXPECT_DOUBLE_EQ(band.up, 25.0);
    EXPECT_DOUBLE_EQ(band.down, 175.0);
    const AdaptiveSettings s{0.01, 0.75, 5};
    // P = 0.01 * 10000 = 100
    EXPECT_EQ(adapt_cluster_count(5, 10.0, 10000.0, s, 50), 10);
}

TEST(Adaptive, ShrinksAboveBandAndClampsToOne) {
    const AdaptiveSettings s{0.01, 0.75, 5};
    EXPECT_EQ(adapt_cluster_count(5, 200.0, 10000.0, s, 50), 1);
    EXPECT_EQ(adapt_cluster_count(12, 200.0, 10000.0, s, 50), 7);
}

TEST(Adaptive, HoldsInsideBand) {
    const AdaptiveSettings s{0.01, 0.75, 5};
    EXPECT_EQ(adapt_cluster_count(5, 100.0, 10000.0, s, 50), 5);
    EXPECT_EQ(adapt_cluster_count(5, 25.0, 10000.0, s, 50), 5);
    EXPECT_EQ(adapt_cluster_count(5, 175.0, 10000.0, s, 50), 5);
}

TEST(Adaptive, ClampsToScenarioCount) {
    const AdaptiveSettings s{0.01, 0.75, 5};
    EXPECT_EQ(adapt_cluster_count(8, 0.0, 10000.0, s, 10), 10);
    EXPECT_EQ(adapt_cluster_count(10, 0.0, 10000.0, s, 10), 10);
}

TEST(PoolSnapshot, Counts) {
    CutPool pool = pool_with_iteration(2, 3);
    track_and_consolidate(pool, std::vector<double>(3, 0.0), 0, 5);
    const auto snap = pool_snapshot(pool);
    EXPECT_EQ(snap["cuts"]["ClusterAggregate"], 3);
    EXPECT_EQ(snap["rows"], 3);
    EXPECT_EQ(snap["inactivity"]["2"], 1);
    EXPECT_TRUE(snap["consolidated_iterations"].empty());
}
