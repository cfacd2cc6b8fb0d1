// SPDX-FileCopyrightText: Contributors to the suc-benders project
//
// SPDX-License-Identifier: Apache-2.0

#include "suc/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "suc/errors.hpp"

namespace suc {

namespace {

void check_k(const Array2D<double>& points, int k) {
    if (points.rows() == 0) throw InvalidArgument("clustering needs at least one point");
    if (k < 1 || k > static_cast<int>(points.rows()))
        throw InvalidArgument("cluster count " + std::to_string(k) + " outside [1, " +
                              std::to_string(points.rows()) + "]");
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] - b[i]) * (a[i] - b[i]);
    return d;
}

/// Renumbers raw labels by first appearance; `order` maps new id -> raw id.
ClusterAssignment canonical(const std::vector<int>& raw, int k, std::vector<int>* order = nullptr) {
    std::vector<int> map(raw.empty() ? 0 : *std::max_element(raw.begin(), raw.end()) + 1, -1);
    ClusterAssignment out;
    out.k = k;
    out.labels.resize(raw.size());
    std::vector<int> seen;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (map[raw[i]] < 0) {
            map[raw[i]] = static_cast<int>(seen.size());
            seen.push_back(raw[i]);
        }
        out.labels[i] = map[raw[i]];
    }
    if (static_cast<int>(seen.size()) != k) throw InternalError("clustering produced an empty cluster");
    if (order) *order = seen;
    return out;
}

Array2D<double> centroids(const Array2D<double>& points, const std::vector<int>& labels, int k) {
    Array2D<double> c(k, points.cols(), 0.0);
    std::vector<int> size(k, 0);
    for (std::size_t i = 0; i < points.rows(); ++i) {
        ++size[labels[i]];
        for (std::size_t d = 0; d < points.cols(); ++d) c(labels[i], d) += points(i, d);
    }
    for (int j = 0; j < k; ++j)
        if (size[j] > 0)
            for (std::size_t d = 0; d < points.cols(); ++d) c(j, d) /= size[j];
    return c;
}

double wcss(const Array2D<double>& points, const std::vector<int>& labels, const Array2D<double>& c) {
    double total = 0.0;
    for (std::size_t i = 0; i < points.rows(); ++i) total += squared_distance(points.row(i), c.row(labels[i]));
    return total;
}

}  // namespace

const char* to_string(ClusterMethod method) {
    return method == ClusterMethod::Hierarchical ? "hierarchical" : "kmeans";
}

std::vector<std::vector<int>> ClusterAssignment::members() const {
    std::vector<std::vector<int>> out(k);
    for (std::size_t i = 0; i < labels.size(); ++i) out[labels[i]].push_back(static_cast<int>(i));
    return out;
}

ClusterAssignment hierarchical(const Array2D<double>& points, int k) {
    check_k(points, k);
    const std::size_t n = points.rows();
    const std::size_t dim = points.cols();

    // Slot i holds the cluster whose smallest point index is i.
    Array2D<double> centre = points;
    std::vector<double> size(n, 1.0);
    std::vector<bool> alive(n, true);
    std::vector<int> label(n);
    std::iota(label.begin(), label.end(), 0);

    for (std::size_t clusters = n; clusters > static_cast<std::size_t>(k); --clusters) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!alive[i]) continue;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!alive[j]) continue;
                const double cost =
                    size[i] * size[j] / (size[i] + size[j]) * squared_distance(centre.row(i), centre.row(j));
                if (cost < best) {
                    best = cost;
                    bi = i;
                    bj = j;
                }
            }
        }
        const double total = size[bi] + size[bj];
        for (std::size_t d = 0; d < dim; ++d)
            centre(bi, d) = (size[bi] * centre(bi, d) + size[bj] * centre(bj, d)) / total;
        size[bi] = total;
        alive[bj] = false;
        for (auto& l : label)
            if (l == static_cast<int>(bj)) l = static_cast<int>(bi);
    }
    return canonical(label, k);
}

ClusterAssignment kmeans(const Array2D<double>& points, int k, std::vector<double>* wcss_trace) {
    check_k(points, k);
    const std::size_t n = points.rows();

    std::vector<std::size_t> seeds{0};
    std::vector<double> nearest(n);
    for (std::size_t i = 0; i < n; ++i) nearest[i] = squared_distance(points.row(i), points.row(0));
    std::vector<bool> chosen(n, false);
    chosen[0] = true;
    while (seeds.size() < static_cast<std::size_t>(k)) {
        std::size_t pick = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!chosen[i] && (pick == n || nearest[i] > nearest[pick])) pick = i;
        seeds.push_back(pick);
        chosen[pick] = true;
        for (std::size_t i = 0; i < n; ++i)
            nearest[i] = std::min(nearest[i], squared_distance(points.row(i), points.row(pick)));
    }
    Array2D<double> c(k, points.cols());
    for (int j = 0; j < k; ++j)
        std::copy(points.row(seeds[j]).begin(), points.row(seeds[j]).end(), c.row(j).begin());

    std::vector<int> labels(n, -1);
    if (wcss_trace) wcss_trace->clear();
    for (int iter = 0; iter < 100; ++iter) {
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            // Ties keep the current cluster, or go to the lowest id on the first pass.
            int best = labels[i];
            double best_d = best >= 0 ? squared_distance(points.row(i), c.row(best))
                                      : std::numeric_limits<double>::infinity();
            for (int j = 0; j < k; ++j) {
                const double d = squared_distance(points.row(i), c.row(j));
                if (d < best_d) {
                    best = j;
                    best_d = d;
                }
            }
            if (best != labels[i]) changed = true;
            labels[i] = best;
        }

        // Empty clusters take the point farthest from its own centroid.
        std::vector<int> count(k, 0);
        for (int l : labels) ++count[l];
        for (int j = 0; j < k; ++j) {
            if (count[j] > 0) continue;
            std::size_t pick = n;
            double far = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (count[labels[i]] < 2) continue;
                const double d = squared_distance(points.row(i), c.row(labels[i]));
                if (d > far) {
                    far = d;
                    pick = i;
                }
            }
            --count[labels[pick]];
            labels[pick] = j;
            count[j] = 1;
            std::copy(points.row(pick).begin(), points.row(pick).end(), c.row(j).begin());
            changed = true;
        }

        c = centroids(points, labels, k);
        if (wcss_trace) wcss_trace->push_back(wcss(points, labels, c));
        if (!changed) break;
    }
    return canonical(labels, k);
}

ClusterAssignment kmedoids(const Array2D<double>& points, int k) {
    check_k(points, k);
    const std::size_t n = points.rows();
    Array2D<double> dist(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) dist(i, j) = dist(j, i) = std::sqrt(squared_distance(points.row(i), points.row(j)));

    auto total_cost = [&](const std::vector<std::size_t>& medoids) {
        double cost = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t m : medoids) best = std::min(best, dist(i, m));
            cost += best;
        }
        return cost;
    };

    // BUILD
    std::vector<std::size_t> medoids;
    std::vector<bool> is_medoid(n, false);
    std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
    {
        std::size_t first = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < n; ++c) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += dist(i, c);
            if (s < best) {
                best = s;
                first = c;
            }
        }
        medoids.push_back(first);
        is_medoid[first] = true;
        for (std::size_t i = 0; i < n; ++i) nearest[i] = dist(i, first);
    }
    while (medoids.size() < static_cast<std::size_t>(k)) {
        std::size_t pick = n;
        double best_gain = -1.0;
        for (std::size_t c = 0; c < n; ++c) {
            if (is_medoid[c]) continue;
            double gain = 0.0;
            for (std::size_t i = 0; i < n; ++i) gain += std::max(nearest[i] - dist(i, c), 0.0);
            if (gain > best_gain) {
                best_gain = gain;
                pick = c;
            }
        }
        medoids.push_back(pick);
        is_medoid[pick] = true;
        for (std::size_t i = 0; i < n; ++i) nearest[i] = std::min(nearest[i], dist(i, pick));
    }

    // SWAP. A swap is taken when it lowers the cost, or when it keeps the cost
    // and brings in a lower index, so equal-cost configurations settle on the
    // lowest indices.
    double cost = total_cost(medoids);
    for (;;) {
        const double tol = 1e-12 * std::max(1.0, std::abs(cost));
        double best = cost;
        std::size_t best_m = 0, best_o = n;
        std::size_t tie_m = 0, tie_o = n;
        for (std::size_t m = 0; m < medoids.size(); ++m) {
            for (std::size_t o = 0; o < n; ++o) {
                if (is_medoid[o]) continue;
                auto trial = medoids;
                trial[m] = o;
                const double c = total_cost(trial);
                if (c < best - tol) {
                    best = c;
                    best_m = m;
                    best_o = o;
                } else if (std::abs(c - cost) <= tol && o < medoids[m] && tie_o == n) {
                    tie_m = m;
                    tie_o = o;
                }
            }
        }
        std::size_t m = best_m, o = best_o;
        if (o == n) {
            if (tie_o == n) break;
            m = tie_m;
            o = tie_o;
        }
        is_medoid[medoids[m]] = false;
        is_medoid[o] = true;
        medoids[m] = o;
        cost = total_cost(medoids);
    }

    std::vector<int> raw(n);
    for (std::size_t i = 0; i < n; ++i) {
        int best = -1;
        for (std::size_t j = 0; j < medoids.size(); ++j) {
            if (best < 0 || dist(i, medoids[j]) < dist(i, medoids[best]) ||
                (dist(i, medoids[j]) == dist(i, medoids[best]) && medoids[j] < medoids[best]))
                best = static_cast<int>(j);
        }
        raw[i] = best;
    }
    // Duplicate points may sit at distance 0 from two medoids.
    for (std::size_t j = 0; j < medoids.size(); ++j) raw[medoids[j]] = static_cast<int>(j);

    std::vector<int> order;
    ClusterAssignment out = canonical(raw, k, &order);
    for (int raw_id : order) out.medoids.push_back(static_cast<int>(medoids[raw_id]));
    return out;
}

ClusterAssignment cluster(ClusterMethod method, const Array2D<double>& points, int k) {
    return method == ClusterMethod::Hierarchical ? hierarchical(points, k) : kmeans(points, k);
}

}  // namespace suc
