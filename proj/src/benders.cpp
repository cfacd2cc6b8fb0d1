// SPDX-FileCopyrightText: Contributors to the suc-benders project
//
// SPDX-License-Identifier: Apache-2.0

#include "suc/benders.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "suc/errors.hpp"
#include "suc/lp_backend.hpp"

namespace suc {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::map<int, double> commitment_fixing(const MasterModel& master, const CommitmentFix& fix) {
    std::map<int, double> out;
    for (const auto& [gt, value] : fix) out[master.first.commitment(gt.first, gt.second)] = value;
    return out;
}

}  // namespace

void BendersConfig::validate(int num_scenarios) const {
    if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
    if (!(mip_gap >= 0.0)) throw InvalidArgument("mip gap must be non-negative");
    if (max_iterations < 1) throw InvalidArgument("max iterations must be at least 1");
    if (!(adaptive_settings.zeta > 0.0 && adaptive_settings.zeta < 1.0))
        throw InvalidArgument("zeta must lie in (0, 1)");
    if (adaptive_settings.rho < 1) throw InvalidArgument("rho must be at least 1");
    if (!(adaptive_settings.alpha > 0.0)) throw InvalidArgument("alpha must be positive");
    if (kappa < 1) throw InvalidArgument("kappa must be at least 1");
    if (initial_clusters < 1 || initial_clusters > num_scenarios)
        throw InvalidArgument("initial cluster count " + std::to_string(initial_clusters) + " outside [1, " +
                              std::to_string(num_scenarios) + "]");
    if (workers < 1) throw InvalidArgument("worker count must be at least 1");
}

nlohmann::json IterationRecord::to_json() const {
    return {{"iter", iteration},
            {"lb", lower_bound},
            {"master_obj", master_objective},
            {"ub", upper_bound},
            {"gap", gap()},
            {"clusters", clusters},
            {"master_rows", master_rows},
            {"master_time_s", master_time_s},
            {"max_sub_time_s", max_sub_time_s}};
}

const char* to_string(RunStatus status) {
    switch (status) {
        case RunStatus::Converged:
            return "Converged";
        case RunStatus::NotConverged:
            return "NotConverged";
        case RunStatus::Canceled:
            return "Canceled";
    }
    return "?";
}

Bounds compute_bounds(double day_ahead_cost, std::span<const SubproblemResult> results,
                      std::span<const double> probability, double master_objective) {
    if (results.size() != probability.size())
        throw InvalidArgument("compute_bounds: expected " + std::to_string(probability.size()) +
                              " subproblem results, got " + std::to_string(results.size()));
    double upper = day_ahead_cost;
    for (std::size_t s = 0; s < results.size(); ++s) {
        if (results[s].scenario != static_cast<int>(s))
            throw InvalidArgument("compute_bounds: missing result for scenario " + std::to_string(s));
        upper += probability[s] * results[s].recourse_cost;
    }
    return {upper, master_objective};
}

SubproblemResult solve_subproblem(const SystemInstance& instance, const ScenarioSet& scenarios, int scenario,
                                  const FirstStageSolution& x_hat) {
    const SubproblemModel sub = build_subproblem(instance, scenarios, scenario, x_hat);
    const SolveResult lp = solve_lp(sub.model);
    if (!lp.optimal())
        throw InternalError("recourse LP of scenario " + scenarios.ids[scenario] + " is " + to_string(lp.status) +
                            (lp.message.empty() ? "" : ": " + lp.message));
    SubproblemResult result;
    result.scenario = scenario;
    result.recourse_cost = lp.objective;
    result.wall_time_s = lp.wall_time_s;
    result.duals.reserve(sub.fixing_rows.size());
    for (int row : sub.fixing_rows) result.duals.push_back(lp.duals[row]);
    return result;
}

std::vector<SubproblemResult> solve_subproblems(const SystemInstance& instance, const ScenarioSet& scenarios,
                                                const FirstStageSolution& x_hat, int workers) {
    const int n = scenarios.size();
    std::vector<SubproblemResult> results(n);
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (int s = next++; s < n; s = next++) {
            try {
                results[s] = solve_subproblem(instance, scenarios, s, x_hat);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = n;
            }
        }
    };
    const int threads = std::clamp(workers, 1, std::max(1, n));
    if (threads == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);
    return results;
}

ConvergedSolution run(const SystemInstance& instance, const ScenarioSet& scenarios, const BendersConfig& config) {
    config.validate(scenarios.size());
    const auto start = Clock::now();
    const double theta_min = config.theta_min.value_or(default_theta_min(instance));
    const CouplingLayout layout = CouplingLayout::of(instance);
    const int S = scenarios.size();

    ConvergedSolution out;
    BendersState& state = out.state;
    state.upper_bound = kInf;
    state.lower_bound = -kInf;
    state.clusters = config.mode == CutMode::MultiCut ? S : config.mode == CutMode::SingleCut ? 1 : config.initial_clusters;
    AttributeSelector selector(config.attribute);
    double previous_lower = -kInf;
    const bool consolidating = config.mode == CutMode::Aggregated && config.consolidate;

    for (int nu = 1; nu <= config.max_iterations; ++nu) {
        if (config.cancel && config.cancel->load()) {
            out.status = RunStatus::Canceled;
            break;
        }
        state.iteration = nu;
        IterationRecord rec;
        rec.iteration = nu;

        const MasterModel master = build_master(instance, scenarios, config.mode, out.pool, theta_min);
        const SolveResult ms = solve_milp(master.model, config.mip_gap, commitment_fixing(master, config.fixed_commitment));
        if (!ms.optimal())
            throw Error("iteration " + std::to_string(nu) + ": master problem is " + to_string(ms.status) +
                        (ms.message.empty() ? "" : " (" + ms.message + ")"));
        rec.master_rows = ms.row_count;
        rec.master_time_s = ms.wall_time_s;
        out.max_master_rows = std::max(out.max_master_rows, ms.row_count);
        const FirstStageSolution x = extract_first_stage(instance, master.first, ms.primal);
        rec.master_objective = ms.objective;

        if (consolidating && out.pool.count(CutKind::ClusterAggregate) > 0) {
            const SolveResult lp = solve_lp(fix_integers(master.model, ms.primal));
            if (!lp.optimal())
                throw InternalError("iteration " + std::to_string(nu) + ": fixed-commitment master LP is " +
                                    to_string(lp.status));
            rec.master_time_s += lp.wall_time_s;
            rec.rows_removed = track_and_consolidate(out.pool, lp.duals, master.cut_row_begin, config.kappa);
        }

        const auto results = solve_subproblems(instance, scenarios, x, config.workers);
        for (const auto& r : results) rec.max_sub_time_s = std::max(rec.max_sub_time_s, r.wall_time_s);
        const Bounds bounds = compute_bounds(x.day_ahead_cost, results, scenarios.probability, ms.objective);
        rec.upper_candidate = bounds.upper_candidate;
        if (bounds.upper_candidate < state.upper_bound) {
            state.upper_bound = bounds.upper_candidate;
            state.incumbent = x;
        }
        // A consolidated master is looser, so its optimum may fall back.
        state.lower_bound = std::max(state.lower_bound, bounds.lower);
        rec.lower_bound = state.lower_bound;
        rec.upper_bound = state.upper_bound;

        const std::vector<double> point = x.coupling();
        if (config.record) out.recorded.push_back({nu, point, x, results});

        const bool converged = std::abs(state.upper_bound - state.lower_bound) <= config.epsilon;
        if (!converged) {
            switch (config.mode) {
                case CutMode::MultiCut:
                    for (const auto& r : results) out.pool.cuts.push_back(per_scenario_cut(nu, r, point));
                    rec.clusters = S;
                    break;
                case CutMode::SingleCut: {
                    std::vector<int> all(S);
                    for (int s = 0; s < S; ++s) all[s] = s;
                    out.pool.cuts.push_back(
                        aggregate(nu, CutKind::ClusterAggregate, results, point, scenarios.probability, all));
                    rec.clusters = 1;
                    break;
                }
                case CutMode::Aggregated: {
                    if (config.adaptive && nu >= 2)
                        state.clusters = adapt_cluster_count(state.clusters, state.lower_bound - previous_lower,
                                                             state.upper_bound, config.adaptive_settings, S);
                    const auto& features = selector.select(results, scenarios, layout);
                    const ClusterAssignment assignment = cluster(config.clustering, features, state.clusters);
                    rec.clusters = aggregate_and_add(out.pool, nu, results, point, scenarios.probability, assignment);
                    break;
                }
            }
        }
        previous_lower = state.lower_bound;
        state.history.push_back(rec);
        if (config.trace) {
            nlohmann::json line = rec.to_json();
            line["pool"] = pool_snapshot(out.pool);
            *config.trace << line.dump() << '\n';
        }
        if (converged) {
            out.status = RunStatus::Converged;
            break;
        }
    }

    out.objective = state.upper_bound;
    out.solution = state.incumbent;
    out.wall_time_s = seconds_since(start);
    return out;
}

}  // namespace suc
