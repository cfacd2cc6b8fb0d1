// SPDX-FileCopyrightText: Contributors to the suc-benders project
//
// SPDX-License-Identifier: Apache-2.0

#include "suc/outer_parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <string>
#include <thread>

#include "suc/errors.hpp"

namespace suc {

int SubsetPlan::completion_quota() const {
    const int n = static_cast<int>(subsets.size());
    return std::clamp(static_cast<int>(std::ceil(gamma * n - 1e-9)), 1, n);
}

ScenarioSet SubsetPlan::scenarios(const ScenarioSet& all, int subset) const { return all.subset(subsets.at(subset)); }

SubsetPlan subsets_from_clusters(const ClusterAssignment& clusters, double gamma) {
    if (!(gamma > 0.0 && gamma <= 1.0)) throw InvalidArgument("gamma must lie in (0, 1]");
    if (clusters.k < 2) throw InvalidArgument("outer parallelization needs at least 2 clusters");
    if (static_cast<int>(clusters.medoids.size()) != clusters.k)
        throw InvalidArgument("subset formation needs one medoid per cluster");
    SubsetPlan plan;
    plan.clusters = clusters;
    plan.gamma = gamma;
    const auto members = clusters.members();
    for (int e = 0; e < clusters.k; ++e) {
        std::vector<int> subset = members[e];
        for (int other = 0; other < clusters.k; ++other)
            if (other != e) subset.push_back(clusters.medoids[other]);
        plan.subsets.push_back(std::move(subset));
    }
    return plan;
}

SubsetPlan form_subsets(const ScenarioSet& scenarios, int num_clusters, double gamma) {
    if (num_clusters < 2 || num_clusters > scenarios.size())
        throw InvalidArgument("subset count " + std::to_string(num_clusters) + " outside [2, " +
                              std::to_string(scenarios.size()) + "]");
    const std::size_t width = scenarios.wind.front().size();
    Array2D<double> features(scenarios.size(), width);
    for (int s = 0; s < scenarios.size(); ++s)
        std::copy(scenarios.wind[s].flat().begin(), scenarios.wind[s].flat().end(), features.row(s).begin());
    return subsets_from_clusters(kmedoids(features, num_clusters), gamma);
}

const char* to_string(SubsetStatus status) {
    switch (status) {
        case SubsetStatus::Completed:
            return "Completed";
        case SubsetStatus::Canceled:
            return "Canceled";
        case SubsetStatus::Failed:
            return "Failed";
    }
    return "?";
}

std::vector<SubsetOutcome> solve_subsets(const SystemInstance& instance, const ScenarioSet& scenarios,
                                         const SubsetPlan& plan, const BendersConfig& config, int workers) {
    const int n = static_cast<int>(plan.subsets.size());
    const int quota = plan.completion_quota();
    std::vector<SubsetOutcome> outcomes(n);
    std::atomic<bool> stop{false};
    std::atomic<int> next{0};
    std::mutex mutex;
    int completed = 0;

    auto work = [&] {
        for (int e = next++; e < n; e = next++) {
            SubsetOutcome& out = outcomes[e];
            out.id = e;
            if (stop) {
                out.status = SubsetStatus::Canceled;
                continue;
            }
            BendersConfig cfg = config;
            cfg.cancel = &stop;
            cfg.trace = nullptr;
            cfg.record = false;
            cfg.workers = 1;
            try {
                const ScenarioSet subset = plan.scenarios(scenarios, e);
                cfg.initial_clusters = std::min(cfg.initial_clusters, subset.size());
                const ConvergedSolution sol = run(instance, subset, cfg);
                out.tau_s = sol.wall_time_s;
                out.iterations = sol.state.iteration;
                out.max_master_rows = sol.max_master_rows;
                out.objective = sol.objective;
                std::lock_guard lock(mutex);
                if (sol.status == RunStatus::Converged && completed < quota) {
                    out.status = SubsetStatus::Completed;
                    out.commitment = sol.solution.commitment;
                    if (++completed == quota) stop = true;
                } else if (sol.status == RunStatus::NotConverged) {
                    out.status = SubsetStatus::Failed;
                    out.message = "not converged after " + std::to_string(sol.state.iteration) + " iterations";
                } else {
                    out.status = SubsetStatus::Canceled;
                }
            } catch (const std::exception& ex) {
                out.status = SubsetStatus::Failed;
                out.message = ex.what();
            }
        }
    };
    const int threads = std::clamp(workers, 1, n);
    if (threads == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(work);
    }
    if (completed == 0) {
        std::string why;
        for (const auto& o : outcomes)
            if (!o.message.empty()) why += "; subset " + std::to_string(o.id) + ": " + o.message;
        throw Error("no subset solve completed" + why);
    }
    return outcomes;
}

CommitmentFix intersect_commitments(const std::vector<SubsetOutcome>& outcomes) {
    const SubsetOutcome* first = nullptr;
    for (const auto& o : outcomes)
        if (o.status == SubsetStatus::Completed) {
            first = &o;
            break;
        }
    if (!first) throw InvalidArgument("intersect_commitments: no Completed outcome");
    CommitmentFix fixed;
    for (std::size_t g = 0; g < first->commitment.rows(); ++g) {
        for (std::size_t t = 0; t < first->commitment.cols(); ++t) {
            const double value = first->commitment(g, t);
            const bool common = std::all_of(outcomes.begin(), outcomes.end(), [&](const SubsetOutcome& o) {
                return o.status != SubsetStatus::Completed || o.commitment(g, t) == value;
            });
            if (common) fixed[{static_cast<int>(g), static_cast<int>(t)}] = value;
        }
    }
    return fixed;
}

int OuterResult::free_count() const {
    if (outcomes.empty()) return 0;
    for (const auto& o : outcomes)
        if (o.status == SubsetStatus::Completed) return static_cast<int>(o.commitment.size() - fixed.size());
    return 0;
}

nlohmann::json OuterResult::summary() const {
    nlohmann::json subsets = nlohmann::json::array();
    for (const auto& o : outcomes) {
        nlohmann::json item = {{"id", o.id},
                               {"status", to_string(o.status)},
                               {"tau_s", o.tau_s},
                               {"iterations", o.iterations}};
        item["objective"] = o.status == SubsetStatus::Completed ? nlohmann::json(o.objective) : nlohmann::json();
        if (!o.message.empty()) item["message"] = o.message;
        subsets.push_back(std::move(item));
    }
    return {{"subsets", subsets},
            {"T1", t1},
            {"T2", t2},
            {"fixed_count", fixed.size()},
            {"free_count", free_count()}};
}

OuterResult run_outer(const SystemInstance& instance, const ScenarioSet& scenarios, const BendersConfig& config,
                      int num_clusters, double gamma) {
    OuterResult result;
    result.plan = form_subsets(scenarios, num_clusters, gamma);
    result.outcomes = solve_subsets(instance, scenarios, result.plan, config, config.workers);
    for (const auto& o : result.outcomes) {
        if (o.status == SubsetStatus::Completed) result.t1 = std::max(result.t1, o.tau_s);
        result.max_master_rows = std::max(result.max_master_rows, o.max_master_rows);
    }
    result.fixed = intersect_commitments(result.outcomes);

    BendersConfig second = config;
    second.fixed_commitment = result.fixed;
    result.solution = run(instance, scenarios, second);
    result.t2 = result.solution.wall_time_s;
    result.max_master_rows = std::max(result.max_master_rows, result.solution.max_master_rows);
    return result;
}

}  // namespace suc
