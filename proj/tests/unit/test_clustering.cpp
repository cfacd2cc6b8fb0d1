#include <gtest/gtest.h>

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

#include "suc/clustering.hpp"
#include "suc/errors.hpp"

using namespace suc;

namespace {

Array2D<double> line(std::initializer_list<double> values) {
    Array2D<double> p(values.size(), 1);
    std::size_t i = 0;
    for (double v : values) p(i++, 0) = v;
    return p;
}

Array2D<double> random_points(int n, int d, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Array2D<double> p(n, d);
    for (double& v : p.flat()) v = u(rng);
    return p;
}

double sq_dist(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return s;
}

double wcss(const Array2D<double>& p, const std::vector<int>& labels, int k) {
    const std::size_t d = p.cols();
    std::vector<std::vector<double>> mean(k, std::vector<double>(d, 0.0));
    std::vector<int> size(k, 0);
    for (std::size_t i = 0; i < p.rows(); ++i) {
        ++size[labels[i]];
        for (std::size_t c = 0; c < d; ++c) mean[labels[i]][c] += p(i, c);
    }
    for (int c = 0; c < k; ++c)
        for (double& v : mean[c]) v /= size[c];
    double total = 0.0;
    for (std::size_t i = 0; i < p.rows(); ++i) total += sq_dist(p.row(i), mean[labels[i]]);
    return total;
}

// Every labeling of n points into exactly k nonempty clusters.
template <class F>
void each_partition(int n, int k, F&& visit) {
    std::vector<int> labels(n, 0);
    const auto total = static_cast<long>(std::pow(k, n));
    for (long code = 0; code < total; ++code) {
        long c = code;
        for (int i = 0; i < n; ++i, c /= k) labels[i] = static_cast<int>(c % k);
        std::vector<bool> used(k, false);
        for (int l : labels) used[l] = true;
        if (std::all_of(used.begin(), used.end(), [](bool b) { return b; })) visit(labels);
    }
}

std::vector<int> brute_force_kmeans(const Array2D<double>& p, int k) {
    std::vector<int> best;
    double best_cost = std::numeric_limits<double>::infinity();
    each_partition(static_cast<int>(p.rows()), k, [&](const std::vector<int>& labels) {
        const double cost = wcss(p, labels, k);
        if (cost < best_cost - 1e-12) {
            best_cost = cost;
            best = labels;
        }
    });
    return best;
}

struct MedoidOracle {
    std::vector<int> medoids;
    double cost = std::numeric_limits<double>::infinity();
};

// Cheapest medoid set over all k-subsets; lexicographically smallest on ties.
MedoidOracle brute_force_medoids(const Array2D<double>& p, int k) {
    const int n = static_cast<int>(p.rows());
    MedoidOracle best;
    std::vector<int> pick(n, 0);
    std::fill(pick.begin(), pick.begin() + k, 1);
    do {
        std::vector<int> set;
        for (int i = 0; i < n; ++i)
            if (pick[i]) set.push_back(i);
        double cost = 0.0;
        for (int i = 0; i < n; ++i) {
            double nearest = std::numeric_limits<double>::infinity();
            for (int m : set) nearest = std::min(nearest, std::sqrt(sq_dist(p.row(i), p.row(m))));
            cost += nearest;
        }
        if (cost < best.cost - 1e-12) best = {set, cost};
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return best;
}

// Same partition up to renaming of cluster ids.
bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            if ((a[i] == a[j]) != (b[i] == b[j])) return false;
    return true;
}

void expect_valid(const ClusterAssignment& a, int n, int k) {
    ASSERT_EQ(a.k, k);
    ASSERT_EQ(static_cast<int>(a.labels.size()), n);
    std::vector<int> count(k, 0);
    for (int l : a.labels) {
        ASSERT_GE(l, 0);
        ASSERT_LT(l, k);
        ++count[l];
    }
    for (int c : count) EXPECT_GE(c, 1);
}

}  // namespace

TEST(Hierarchical, ThreePointsTwoClusters) {
    const auto p = line({0, 1, 10});
    const ClusterAssignment a = hierarchical(p, 2);
    EXPECT_EQ(a.labels, (std::vector<int>{0, 0, 1}));
    EXPECT_TRUE(same_partition(a.labels, brute_force_kmeans(p, 2)));
}

TEST(Hierarchical, ExtremeCounts) {
    const auto p = random_points(7, 3, 1);
    const ClusterAssignment all = hierarchical(p, 7);
    EXPECT_EQ(all.labels, (std::vector<int>{0, 1, 2, 3, 4, 5, 6}));
    const ClusterAssignment one = hierarchical(p, 1);
    EXPECT_EQ(one.labels, std::vector<int>(7, 0));
}

TEST(Hierarchical, TieBreaksOnSmallestPair) {
    // Equal gaps: the (0,1) merge comes first, then {0,1} vs 2 costs more than 2 vs 3.
    const ClusterAssignment a = hierarchical(line({0, 1, 2, 3}), 3);
    EXPECT_EQ(a.labels, (std::vector<int>{0, 0, 1, 2}));
}

TEST(Hierarchical, PermutationConsistent) {
    const auto p = random_points(9, 4, 2);
    const ClusterAssignment base = hierarchical(p, 3);
    std::vector<int> perm(9);
    std::iota(perm.begin(), perm.end(), 0);
    std::mt19937 rng(5);
    for (int trial = 0; trial < 5; ++trial) {
        std::shuffle(perm.begin(), perm.end(), rng);
        Array2D<double> q(9, 4);
        for (int i = 0; i < 9; ++i)
            for (int c = 0; c < 4; ++c) q(i, c) = p(perm[i], c);
        const ClusterAssignment shuffled = hierarchical(q, 3);
        std::vector<int> back(9);
        for (int i = 0; i < 9; ++i) back[perm[i]] = shuffled.labels[i];
        EXPECT_TRUE(same_partition(base.labels, back));
    }
}

TEST(KMeans, ThreePointsTwoClusters) {
    const auto p = line({0, 1, 10});
    const ClusterAssignment a = kmeans(p, 2);
    EXPECT_EQ(a.labels, (std::vector<int>{0, 0, 1}));
    EXPECT_TRUE(same_partition(a.labels, brute_force_kmeans(p, 2)));
}

TEST(KMeans, IdenticalPointsRepairLeavesPointZeroAlone) {
    const ClusterAssignment a = kmeans(line({4, 4, 4, 4}), 2);
    EXPECT_EQ(a.labels, (std::vector<int>{0, 1, 1, 1}));
}

TEST(KMeans, SingleCluster) {
    const auto p = random_points(6, 2, 3);
    EXPECT_EQ(kmeans(p, 1).labels, std::vector<int>(6, 0));
}

TEST(KMeans, WcssNonIncreasing) {
    for (unsigned seed = 10; seed < 20; ++seed) {
        const auto p = random_points(20, 3, seed);
        std::vector<double> trace;
        const ClusterAssignment a = kmeans(p, 4, &trace);
        expect_valid(a, 20, 4);
        ASSERT_FALSE(trace.empty());
        for (std::size_t i = 1; i < trace.size(); ++i) EXPECT_LE(trace[i], trace[i - 1] + 1e-12);
        EXPECT_NEAR(trace.back(), wcss(p, a.labels, 4), 1e-9);
    }
}

TEST(KMedoids, ThreePointsTwoClusters) {
    const auto p = line({0, 1, 10});
    const ClusterAssignment a = kmedoids(p, 2);
    const MedoidOracle oracle = brute_force_medoids(p, 2);
    EXPECT_EQ(oracle.medoids, (std::vector<int>{0, 2}));
    EXPECT_EQ(a.medoids, oracle.medoids);
    EXPECT_EQ(a.labels, (std::vector<int>{0, 0, 1}));
}

TEST(KMedoids, EveryPointItsOwnMedoid) {
    const ClusterAssignment a = kmedoids(random_points(5, 2, 4), 5);
    EXPECT_EQ(a.medoids, (std::vector<int>{0, 1, 2, 3, 4}));
}

TEST(KMedoids, DuplicateClusterTakesLowerIndex) {
    Array2D<double> p(3, 2);
    p(0, 0) = p(1, 0) = 1.0;
    p(0, 1) = p(1, 1) = 2.0;
    p(2, 0) = 7.0;
    p(2, 1) = -3.0;
    const ClusterAssignment a = kmedoids(p, 2);
    EXPECT_EQ(a.labels, (std::vector<int>{0, 0, 1}));
    EXPECT_EQ(a.medoids, (std::vector<int>{0, 2}));
}

TEST(KMedoids, MedoidsBelongToTheirClusters) {
    for (unsigned seed = 30; seed < 40; ++seed) {
        const auto p = random_points(12, 3, seed);
        const ClusterAssignment a = kmedoids(p, 3);
        expect_valid(a, 12, 3);
        ASSERT_EQ(a.medoids.size(), 3u);
        for (int c = 0; c < 3; ++c) EXPECT_EQ(a.labels[a.medoids[c]], c);
        // Every point sits with its nearest medoid.
        for (int i = 0; i < 12; ++i) {
            const double own = sq_dist(p.row(i), p.row(a.medoids[a.labels[i]]));
            for (int m : a.medoids) EXPECT_LE(own, sq_dist(p.row(i), p.row(m)) + 1e-12);
        }
    }
}

TEST(KMedoids, NearOptimalOnSmallSets) {
    for (unsigned seed = 50; seed < 55; ++seed) {
        const auto p = random_points(8, 2, seed);
        const ClusterAssignment a = kmedoids(p, 3);
        double cost = 0.0;
        for (int i = 0; i < 8; ++i) cost += std::sqrt(sq_dist(p.row(i), p.row(a.medoids[a.labels[i]])));
        // PAM is a local search; on these sets it reaches the global optimum.
        EXPECT_NEAR(cost, brute_force_medoids(p, 3).cost, 1e-9);
    }
}

TEST(Clustering, LabelsCanonicalByFirstAppearance) {
    for (auto* algo : {&hierarchical, &kmedoids}) {
        const ClusterAssignment a = (*algo)(random_points(10, 2, 60), 4);
        int next = 0;
        for (int l : a.labels) {
            EXPECT_LE(l, next);
            if (l == next) ++next;
        }
    }
}

TEST(Clustering, DeterministicAcrossRuns) {
    const auto p = random_points(15, 5, 70);
    for (ClusterMethod m : {ClusterMethod::Hierarchical, ClusterMethod::KMeans}) {
        const ClusterAssignment first = cluster(m, p, 4);
        for (int run = 0; run < 5; ++run) EXPECT_EQ(cluster(m, p, 4).labels, first.labels);
    }
    const ClusterAssignment first = kmedoids(p, 4);
    for (int run = 0; run < 5; ++run) {
        const ClusterAssignment again = kmedoids(p, 4);
        EXPECT_EQ(again.labels, first.labels);
        EXPECT_EQ(again.medoids, first.medoids);
    }
}

TEST(Clustering, CountOutOfRange) {
    const auto p = line({0, 1, 2});
    EXPECT_THROW(hierarchical(p, 0), InvalidArgument);
    EXPECT_THROW(kmeans(p, 4), InvalidArgument);
    EXPECT_THROW(kmedoids(p, -1), InvalidArgument);
}

TEST(Clustering, Members) {
    ClusterAssignment a;
    a.k = 2;
    a.labels = {1, 0, 1, 0};
    EXPECT_EQ(a.members(), (std::vector<std::vector<int>>{{1, 3}, {0, 2}}));
}
