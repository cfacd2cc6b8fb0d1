// SPDX-FileCopyrightText: Contributors to the suc-benders project
//
// SPDX-License-Identifier: Apache-2.0

#include "suc/cut_manager.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "suc/errors.hpp"

namespace suc {

namespace {

void min_max(Array2D<double>& m, std::size_t col_begin, std::size_t col_end) {
    if (col_begin == col_end || m.rows() == 0) return;
    double lo = m(0, col_begin), hi = lo;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = col_begin; c < col_end; ++c) {
            lo = std::min(lo, m(r, c));
            hi = std::max(hi, m(r, c));
        }
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = col_begin; c < col_end; ++c) {
            // Keeps the extremes at exactly 0 and 1.
            double& v = m(r, c);
            if (hi == lo)
                v = 0.0;
            else if (v == hi)
                v = 1.0;
            else
                v = (v - lo) / (hi - lo);
        }
}

}  // namespace

const char* to_string(ClusterAttribute attribute) {
    switch (attribute) {
        case ClusterAttribute::Duals:
            return "duals";
        case ClusterAttribute::Objective:
            return "objective";
        case ClusterAttribute::WindStatic:
            return "wind";
    }
    return "?";
}

Array2D<double> normalize_duals(std::span<const SubproblemResult> results, const CouplingLayout& layout) {
    const auto dim = static_cast<std::size_t>(layout.size());
    Array2D<double> f(results.size(), dim, 0.0);
    for (std::size_t r = 0; r < results.size(); ++r) {
        if (results[r].duals.size() != dim) throw DimensionError("normalize_duals: dual vector size mismatch");
        std::copy(results[r].duals.begin(), results[r].duals.end(), f.row(r).begin());
    }
    const std::size_t T = layout.periods;
    const std::size_t bounds[] = {0, layout.generators * T, 2 * layout.generators * T,
                                  (2 * layout.generators + layout.farms) * T, dim};
    for (int family = 0; family < 4; ++family) min_max(f, bounds[family], bounds[family + 1]);
    return f;
}

const Array2D<double>& AttributeSelector::select(std::span<const SubproblemResult> results,
                                                 const ScenarioSet& scenarios, const CouplingLayout& layout) {
    switch (attribute_) {
        case ClusterAttribute::Duals:
            features_ = normalize_duals(results, layout);
            break;
        case ClusterAttribute::Objective:
            features_ = Array2D<double>(results.size(), 1);
            for (std::size_t r = 0; r < results.size(); ++r) features_(r, 0) = results[r].recourse_cost;
            min_max(features_, 0, 1);
            break;
        case ClusterAttribute::WindStatic:
            if (!wind_cached_) {
                const std::size_t width = scenarios.size() > 0 ? scenarios.wind[0].size() : 0;
                features_ = Array2D<double>(scenarios.size(), width);
                for (int s = 0; s < scenarios.size(); ++s)
                    std::copy(scenarios.wind[s].flat().begin(), scenarios.wind[s].flat().end(),
                              features_.row(s).begin());
                wind_cached_ = true;
            }
            break;
    }
    return features_;
}

Cut aggregate(int iteration, CutKind kind, std::span<const SubproblemResult> results, std::span<const double> x_hat,
              std::span<const double> probability, const std::vector<int>& members) {
    if (members.empty()) throw InvalidArgument("aggregate: empty cluster");
    Cut cut;
    cut.iteration = iteration;
    cut.kind = kind;
    cut.slopes.assign(x_hat.size(), 0.0);
    cut.anchor.assign(x_hat.begin(), x_hat.end());
    for (int s : members) {
        if (s < 0 || static_cast<std::size_t>(s) >= results.size() || results[s].scenario != s)
            throw InvalidArgument("aggregate: results must be indexed by scenario");
        if (results[s].duals.size() != x_hat.size()) throw DimensionError("aggregate: dual vector size mismatch");
        const double p = probability[s];
        cut.members.push_back(s);
        cut.theta_weights.push_back(p);
        cut.intercept += p * results[s].recourse_cost;
        for (std::size_t i = 0; i < x_hat.size(); ++i) cut.slopes[i] += p * results[s].duals[i];
    }
    return cut;
}

int aggregate_and_add(CutPool& pool, int iteration, std::span<const SubproblemResult> results,
                      std::span<const double> x_hat, std::span<const double> probability,
                      const ClusterAssignment& assignment) {
    if (assignment.labels.size() != results.size())
        throw DimensionError("aggregate_and_add: assignment does not cover every scenario");
    const auto clusters = assignment.members();
    for (const auto& members : clusters)
        if (members.empty()) throw InvalidArgument("aggregate_and_add: empty cluster");
    for (const auto& members : clusters)
        pool.cuts.push_back(aggregate(iteration, CutKind::ClusterAggregate, results, x_hat, probability, members));
    return static_cast<int>(clusters.size());
}

int track_and_consolidate(CutPool& pool, std::span<const double> row_duals, int cut_row_begin, int kappa,
                          bool enabled) {
    if (!enabled) return 0;
    if (kappa < 1) throw InvalidArgument("kappa must be at least 1");

    std::map<int, bool> active;
    for (std::size_t c = 0; c < pool.cuts.size(); ++c) {
        const Cut& cut = pool.cuts[c];
        if (cut.kind != CutKind::ClusterAggregate) continue;
        const std::size_t row = cut_row_begin + c;
        if (row >= row_duals.size())
            throw InvalidArgument("missing master dual for cut of iteration " + std::to_string(cut.iteration));
        active[cut.iteration] = active[cut.iteration] || std::abs(row_duals[row]) > kInactiveTolerance;
    }

    std::set<int> fire;
    for (const auto& [k, is_active] : active) {
        int& a = pool.inactivity[k];
        a = is_active ? 0 : a + 1;
        if (a >= kappa && !pool.is_consolidated(k)) fire.insert(k);
    }
    if (fire.empty()) return 0;

    int removed = 0;
    std::vector<Cut> next;
    next.reserve(pool.cuts.size());
    std::map<int, std::size_t> slot;
    for (auto& cut : pool.cuts) {
        if (cut.kind != CutKind::ClusterAggregate || !fire.contains(cut.iteration)) {
            next.push_back(std::move(cut));
            continue;
        }
        auto it = slot.find(cut.iteration);
        if (it == slot.end()) {
            cut.kind = CutKind::Consolidated;
            slot[cut.iteration] = next.size();
            next.push_back(std::move(cut));
            continue;
        }
        Cut& merged = next[it->second];
        merged.members.insert(merged.members.end(), cut.members.begin(), cut.members.end());
        merged.theta_weights.insert(merged.theta_weights.end(), cut.theta_weights.begin(), cut.theta_weights.end());
        merged.intercept += cut.intercept;
        for (std::size_t i = 0; i < merged.slopes.size(); ++i) merged.slopes[i] += cut.slopes[i];
        ++removed;
    }
    pool.cuts = std::move(next);
    for (int k : fire) {
        pool.consolidated.push_back(k);
        pool.inactivity.erase(k);
    }
    return removed;
}

DeadBand dead_band(double base, double zeta) { return {(1.0 - zeta) * base, (1.0 + zeta) * base}; }

int adapt_cluster_count(int current, double delta, double best_upper_bound, const AdaptiveSettings& settings,
                        int num_scenarios) {
    const DeadBand band = dead_band(settings.alpha * best_upper_bound, settings.zeta);
    int next = current;
    if (delta < band.up)
        next += settings.rho;
    else if (delta > band.down)
        next -= settings.rho;
    return std::clamp(next, 1, std::max(1, num_scenarios));
}

nlohmann::json pool_snapshot(const CutPool& pool) {
    nlohmann::json counters = nlohmann::json::object();
    for (const auto& [k, a] : pool.inactivity) counters[std::to_string(k)] = a;
    return {{"cuts",
             {{"PerScenario", pool.count(CutKind::PerScenario)},
              {"ClusterAggregate", pool.count(CutKind::ClusterAggregate)},
              {"Consolidated", pool.count(CutKind::Consolidated)}}},
            {"rows", pool.live_rows()},
            {"consolidated_iterations", pool.consolidated},
            {"inactivity", counters}};
}

}  // namespace suc
