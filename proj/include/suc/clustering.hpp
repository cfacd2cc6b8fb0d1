// SPDX-FileCopyrightText: Contributors to the suc-benders project
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "suc/array2d.hpp"

namespace suc {

enum class ClusterMethod { Hierarchical, KMeans };

const char* to_string(ClusterMethod method);

/// Partition of N points into k nonempty clusters. Cluster ids are numbered
/// by first appearance in point order, so point 0 is always in cluster 0.
struct ClusterAssignment {
    int k = 0;
    std::vector<int> labels;
    std::vector<int> medoids;  // k-medoids only; medoids[c] is a member of cluster c

    /// Member point indices of every cluster, ascending.
    [[nodiscard]] std::vector<std::vector<int>> members() const;
};

/// Ward-linkage agglomeration down to k clusters. Equal merge costs go to the
/// lexicographically smallest pair of cluster slots.
ClusterAssignment hierarchical(const Array2D<double>& points, int k);

/// Lloyd's algorithm from farthest-first seeds starting at point 0. When
/// `wcss_trace` is given it receives the within-cluster sum of squares after
/// every iteration.
ClusterAssignment kmeans(const Array2D<double>& points, int k, std::vector<double>* wcss_trace = nullptr);

/// PAM (BUILD + SWAP) with Euclidean distances and lowest-index tie-breaks.
ClusterAssignment kmedoids(const Array2D<double>& points, int k);

ClusterAssignment cluster(ClusterMethod method, const Array2D<double>& points, int k);

}  // namespace suc
