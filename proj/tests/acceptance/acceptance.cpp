// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "suc/benders.hpp"
#include "suc/clustering.hpp"
#include "suc/errors.hpp"
#include "suc/cut_manager.hpp"
#include "suc/formulation.hpp"
#include "suc/lp_backend.hpp"
#include "suc/outer_parallel.hpp"
#include "suc/report.hpp"
#include "support/checks.hpp"
#include "support/fixtures.hpp"

using namespace suc;
using suc::testing::Fixture;
using suc::testing::load_fixture;

namespace {

constexpr double kEps = 1e-6;

// a and b agree within `tol` relative to max(1, |b|).
bool close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

std::string num(double v) {
    std::ostringstream s;
    s.precision(10);
    s << v;
    return s.str();
}

/// Collects failures of one criterion.
class Verdict {
public:
    void expect(bool ok, const std::string& what) {
        ++checks_;
        if (!ok && failures_.size() < 5) failures_.push_back(what);
        failed_ = failed_ || !ok;
    }
    void note(const std::string& text) { notes_.push_back(text); }

    [[nodiscard]] bool passed() const { return !failed_; }
    [[nodiscard]] std::string detail() const {
        std::string out = std::to_string(checks_) + " checks";
        for (const auto& n : notes_) out += "; " + n;
        for (const auto& f : failures_) out += "; " + f;
        return out;
    }

private:
    int checks_ = 0;
    bool failed_ = false;
    std::vector<std::string> failures_;
    std::vector<std::string> notes_;
};

BendersConfig base_config(CutMode mode) {
    BendersConfig c;
    c.mode = mode;
    c.record = true;
    return c;
}

/// Every run one fixture needs, computed on first use.
class FixtureRuns {
public:
    explicit FixtureRuns(std::string name) : name_(std::move(name)), data_(load_fixture(name_)) {}

    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] const Fixture& data() const { return data_; }
    [[nodiscard]] int scenarios() const { return data_.scenarios.size(); }

    double oracle() {
        if (!oracle_) {
            MethodOptions options;
            const RunReport r = run_method(Method::Extensive, data_.instance, data_.scenarios, options);
            if (!r.objective) throw Error(name_ + ": extensive form has status " + r.status);
            oracle_ = *r.objective;
        }
        return *oracle_;
    }

    const ConvergedSolution& benders(const std::string& key) {
        auto it = runs_.find(key);
        if (it != runs_.end()) return it->second;
        return runs_.emplace(key, run(data_.instance, data_.scenarios, config_for(key))).first->second;
    }

    const OuterResult& outer(int subsets, double gamma) {
        const auto key = std::make_pair(subsets, gamma);
        auto it = outer_.find(key);
        if (it != outer_.end()) return it->second;
        BendersConfig cfg = base_config(CutMode::Aggregated);
        cfg.record = false;
        return outer_.emplace(key, run_outer(data_.instance, data_.scenarios, cfg, subsets, gamma)).first->second;
    }

    [[nodiscard]] const std::map<std::string, ConvergedSolution>& all_benders() const { return runs_; }
    [[nodiscard]] const std::map<std::pair<int, double>, OuterResult>& all_outer() const { return outer_; }

private:
    BendersConfig config_for(const std::string& key) const {
        if (key == "single") return base_config(CutMode::SingleCut);
        if (key == "multi") return base_config(CutMode::MultiCut);
        BendersConfig c = base_config(CutMode::Aggregated);
        if (key == "aggregated") return c;
        if (key == "consolidate-5" || key == "consolidate-2") {
            c.consolidate = true;
            c.kappa = key == "consolidate-5" ? 5 : 2;
            return c;
        }
        if (key == "forced-1" || key == "forced-all") {
            c.adaptive = false;
            c.initial_clusters = key == "forced-1" ? 1 : scenarios();
            return c;
        }
        throw InvalidArgument("unknown run " + key);
    }

    std::string name_;
    Fixture data_;
    std::optional<double> oracle_;
    std::map<std::string, ConvergedSolution> runs_;
    std::map<std::pair<int, double>, OuterResult> outer_;
};

// ---------------------------------------------------------------------------

void method_equivalence(FixtureRuns& f, Verdict& v) {
    const double ref = f.oracle();
    v.note(f.name() + " optimum " + num(ref));
    for (const std::string key : {"single", "multi", "aggregated", "consolidate-5"}) {
        const auto& r = f.benders(key);
        v.expect(r.converged(), f.name() + " " + key + " did not converge");
        v.expect(close(r.objective, ref, 2e-6), f.name() + " " + key + " objective " + num(r.objective));
    }
    for (int E : {2, 3}) {
        const auto& o = f.outer(E, 1.0);
        v.expect(o.solution.converged(), f.name() + " outer E=" + std::to_string(E) + " did not converge");
        v.expect(close(o.solution.objective, ref, 2e-6),
                 f.name() + " outer E=" + std::to_string(E) + " objective " + num(o.solution.objective));
    }
}

void check_history(const std::string& label, const BendersState& state, RunStatus status, Verdict& v) {
    const auto& h = state.history;
    for (std::size_t i = 1; i < h.size(); ++i)
        v.expect(h[i].lower_bound >= h[i - 1].lower_bound - 1e-9,
                 label + " lower bound drops at iteration " + std::to_string(h[i].iteration));
    if (status == RunStatus::Converged && !h.empty())
        v.expect(std::abs(h.back().upper_bound - h.back().lower_bound) <= kEps, label + " final gap too wide");
    else
        v.expect(false, label + " did not converge");
}

void bound_behavior(FixtureRuns& f, Verdict& v) {
    f.benders("consolidate-2");
    if (f.scenarios() <= 3) {
        f.benders("forced-1");
        f.benders("forced-all");
    }
    for (const auto& [key, r] : f.all_benders()) check_history(f.name() + " " + key, r.state, r.status, v);
    for (const auto& [key, o] : f.all_outer())
        check_history(f.name() + " outer E=" + std::to_string(key.first), o.solution.state, o.solution.status, v);
}

/// Feasible first-stage points: recorded commitments with every binary fixed
/// and a random linear objective on the dispatch, reserve and wind variables.
std::vector<FirstStageSolution> random_points(FixtureRuns& f, int count, unsigned seed) {
    const auto& inst = f.data().instance;
    std::vector<const FirstStageSolution*> schedules;
    for (const auto& [key, r] : f.all_benders())
        for (const auto& it : r.recorded) schedules.push_back(&it.solution);
    if (schedules.empty()) throw Error("no recorded master solutions");

    MasterModel master = build_master(inst, f.data().scenarios, CutMode::MultiCut, CutPool{}, default_theta_min(inst));
    for (int id : master.theta) master.model.set_cost(id, 0.0);
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> cost(-1.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, schedules.size() - 1);
    std::vector<FirstStageSolution> out;
    while (static_cast<int>(out.size()) < count) {
        const FirstStageSolution& s = *schedules[pick(rng)];
        std::map<int, double> fixed;
        for (int g = 0; g < inst.num_generators(); ++g)
            for (int t = 0; t < inst.horizon; ++t) {
                fixed[master.first.commitment(g, t)] = std::round(s.commitment(g, t));
                fixed[master.first.startup(g, t)] = std::round(s.startup(g, t));
                fixed[master.first.shutdown(g, t)] = std::round(s.shutdown(g, t));
            }
        for (const auto* vars : {&master.first.power, &master.first.reserve_up, &master.first.reserve_down,
                                 &master.first.wind})
            for (int id : vars->flat()) master.model.set_cost(id, cost(rng));
        const SolveResult r = solve_milp(master.model, 0.0, fixed);
        if (!r.optimal()) throw Error("random point solve: " + std::string(to_string(r.status)));
        out.push_back(extract_first_stage(inst, master.first, r.primal));
    }
    return out;
}

double weighted_value(const Cut& cut, const std::vector<SubproblemResult>& q) {
    double total = 0.0;
    for (std::size_t m = 0; m < cut.members.size(); ++m) total += cut.theta_weights[m] * q[cut.members[m]].recourse_cost;
    return total;
}

void cut_validity(FixtureRuns& f, Verdict& v) {
    const auto& inst = f.data().instance;
    const auto& scen = f.data().scenarios;
    std::vector<std::pair<std::string, const ConvergedSolution*>> runs;
    for (const auto& [key, r] : f.all_benders()) runs.emplace_back(key, &r);

    // Tightness at the anchor against the recorded subproblem values.
    int tight = 0;
    for (const auto& [key, r] : runs) {
        std::map<int, const IterationData*> by_iteration;
        for (const auto& it : r->recorded) by_iteration[it.iteration] = &it;
        for (const auto& cut : r->pool.cuts) {
            if (cut.kind == CutKind::Consolidated) continue;
            const IterationData* it = by_iteration.at(cut.iteration);
            const double at_anchor = evaluate_cut(cut, it->point);
            v.expect(std::abs(at_anchor - weighted_value(cut, it->results)) <= 1e-6,
                     f.name() + " " + key + " cut of iteration " + std::to_string(cut.iteration) + " not tight");
            ++tight;
        }
    }

    // Validity at random feasible points.
    const auto points = random_points(f, 100, 7);
    double worst_infeasibility = 0.0;
    double worst_excess = -std::numeric_limits<double>::infinity();
    int validity = 0;
    for (const auto& x : points) {
        worst_infeasibility = std::max(worst_infeasibility, suc::testing::first_stage_violation(inst, x));
        const auto q = solve_subproblems(inst, scen, x, 1);
        const auto xc = x.coupling();
        for (const auto& [key, r] : runs)
            for (const auto& cut : r->pool.cuts) {
                const double excess = evaluate_cut(cut, xc) - weighted_value(cut, q);
                worst_excess = std::max(worst_excess, excess);
                ++validity;
                v.expect(excess <= 1e-6, f.name() + " " + key + " cut over-estimates by " + num(excess));
            }
    }
    v.expect(worst_infeasibility <= 1e-6, f.name() + " random point infeasible by " + num(worst_infeasibility));
    v.note(f.name() + ": " + std::to_string(tight) + " anchors, " + std::to_string(validity) +
           " point-cut pairs, worst excess " + num(worst_excess));
}

void aggregation_identities(FixtureRuns& f, Verdict& v) {
    const auto compare = [&](const std::string& forced, const std::string& reference) {
        const auto& a = f.benders(forced).state.history;
        const auto& b = f.benders(reference).state.history;
        v.expect(a.size() == b.size(), f.name() + " " + forced + " ran " + std::to_string(a.size()) + " iterations vs " +
                                           std::to_string(b.size()) + " for " + reference);
        for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i)
            v.expect(close(a[i].master_objective, b[i].master_objective, 1e-9),
                     f.name() + " " + forced + " master objective differs at iteration " + std::to_string(i + 1));
    };
    compare("forced-1", "single");
    compare("forced-all", "multi");
}

/// Master optimum over the first `upto` recorded iterations of a multi-cut
/// run, with that iteration data aggregated per `clusters` (0 = per scenario).
double master_optimum(FixtureRuns& f, const ConvergedSolution& multi, std::size_t upto, int clusters) {
    const auto& inst = f.data().instance;
    const auto& scen = f.data().scenarios;
    const CouplingLayout layout = CouplingLayout::of(inst);
    const int S = scen.size();
    CutPool pool;
    for (std::size_t i = 0; i < upto; ++i) {
        const IterationData& it = multi.recorded[i];
        if (clusters == 0) {
            for (const auto& r : it.results) pool.cuts.push_back(per_scenario_cut(it.iteration, r, it.point));
        } else {
            const ClusterAssignment a = hierarchical(normalize_duals(it.results, layout), clusters);
            aggregate_and_add(pool, it.iteration, it.results, it.point, scen.probability, a);
        }
    }
    const CutMode mode = clusters == 0 ? CutMode::MultiCut : clusters == 1 && S > 1 ? CutMode::SingleCut
                                                                                    : CutMode::Aggregated;
    const MasterModel m = build_master(inst, scen, mode, pool, default_theta_min(inst));
    const SolveResult r = solve_milp(m.model, 0.0);
    if (!r.optimal()) throw Error("relaxation master: " + std::string(to_string(r.status)));
    return r.objective;
}

void relaxation_chain(FixtureRuns& f, Verdict& v) {
    const auto& multi = f.benders("multi");
    const std::size_t n = multi.recorded.size();
    std::vector<std::size_t> states{1, std::max<std::size_t>(1, n / 2), n};
    states.erase(std::unique(states.begin(), states.end()), states.end());
    const int mid = std::max(2, f.scenarios() / 2);
    for (std::size_t k : states) {
        const double full = master_optimum(f, multi, k, 0);
        const double clustered = master_optimum(f, multi, k, mid);
        const double single = master_optimum(f, multi, k, 1);
        const std::string at = f.name() + " after " + std::to_string(k) + " iterations: ";
        v.expect(full >= clustered - 1e-9 * std::max(1.0, std::abs(full)),
                 at + "multi " + num(full) + " < clustered " + num(clustered));
        v.expect(clustered >= single - 1e-9 * std::max(1.0, std::abs(clustered)),
                 at + "clustered " + num(clustered) + " < single " + num(single));
    }
}

void iteration_ordering(FixtureRuns& f, Verdict& v) {
    const auto& single = f.benders("single");
    const auto& multi = f.benders("multi");
    const auto& agg = f.benders("aggregated");
    const int rows_single = single.state.history.back().master_rows;
    const int rows_multi = multi.state.history.back().master_rows;
    const int rows_agg = agg.state.history.back().master_rows;
    v.note("iterations single " + std::to_string(single.state.iteration) + " multi " +
           std::to_string(multi.state.iteration) + " aggregated " + std::to_string(agg.state.iteration));
    v.note("rows multi " + std::to_string(rows_multi) + " aggregated " + std::to_string(rows_agg) + " single " +
           std::to_string(rows_single));
    v.expect(single.state.iteration >= multi.state.iteration, "single-cut needs fewer iterations than multi-cut");
    v.expect(rows_multi >= rows_agg, "multi-cut master smaller than aggregated");
    v.expect(rows_agg >= rows_single, "aggregated master smaller than single-cut");
}

void consolidation(FixtureRuns& f, Verdict& v) {
    const auto& off = f.benders("aggregated");
    const int rows_off = off.state.history.back().master_rows;
    for (const std::string key : {"consolidate-2", "consolidate-5"}) {
        const auto& on = f.benders(key);
        const int rows_on = on.state.history.back().master_rows;
        int removed = 0;
        for (const auto& rec : on.state.history) removed += rec.rows_removed;
        v.expect(on.converged(), f.name() + " " + key + " did not converge");
        v.expect(close(on.objective, off.objective, 2 * kEps),
                 f.name() + " " + key + " objective " + num(on.objective) + " vs " + num(off.objective));
        v.expect(rows_on <= rows_off,
                 f.name() + " " + key + " rows " + std::to_string(rows_on) + " > " + std::to_string(rows_off));
        v.note(f.name() + " " + key + " rows " + std::to_string(rows_on) + "/" + std::to_string(rows_off) + ", " +
               std::to_string(removed) + " removed");
    }
}

void outer_restriction(FixtureRuns& f, Verdict& v) {
    const double ref = f.oracle();
    int max_free = 0;
    for (int E : {2, 3}) {
        for (double gamma : {1.0, 0.5}) {
            const auto& o = f.outer(E, gamma);
            const std::string label = f.name() + " E=" + std::to_string(E) + " gamma=" + num(gamma);
            v.expect(o.solution.converged(), label + " did not converge");
            v.expect(o.solution.objective >= ref - kEps * std::max(1.0, std::abs(ref)),
                     label + " objective " + num(o.solution.objective) + " below optimum");
            if (gamma == 1.0)
                v.expect(close(o.solution.objective, ref, 2 * kEps), label + " objective " + num(o.solution.objective));
            max_free = std::max(max_free, o.free_count());
        }
    }
    v.expect(max_free > 0, f.name() + ": every subset schedule agreed");
    v.note(f.name() + " largest free set " + std::to_string(max_free));
}

// --- clustering -------------------------------------------------------------

Array2D<double> on_line(std::initializer_list<double> values) {
    Array2D<double> p(values.size(), 1);
    std::size_t i = 0;
    for (double x : values) p(i++, 0) = x;
    return p;
}

double sq(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return s;
}

bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            if ((a[i] == a[j]) != (b[i] == b[j])) return false;
    return true;
}

// Cheapest 2-partition by within-cluster sum of squares.
std::vector<int> best_two_partition(const Array2D<double>& p) {
    const int n = static_cast<int>(p.rows());
    std::vector<int> best;
    double best_cost = std::numeric_limits<double>::infinity();
    for (int mask = 1; mask < (1 << n) - 1; ++mask) {
        std::vector<int> labels(n);
        for (int i = 0; i < n; ++i) labels[i] = (mask >> i) & 1;
        double cost = 0.0;
        for (int c = 0; c < 2; ++c) {
            std::vector<double> mean(p.cols(), 0.0);
            int size = 0;
            for (int i = 0; i < n; ++i)
                if (labels[i] == c) {
                    ++size;
                    for (std::size_t d = 0; d < p.cols(); ++d) mean[d] += p(i, d);
                }
            for (double& m : mean) m /= size;
            for (int i = 0; i < n; ++i)
                if (labels[i] == c) cost += sq(p.row(i), mean);
        }
        if (cost < best_cost - 1e-12) {
            best_cost = cost;
            best = labels;
        }
    }
    return best;
}

// Medoid pair minimizing the summed distance to the nearest medoid.
std::vector<int> best_medoid_pair(const Array2D<double>& p) {
    const int n = static_cast<int>(p.rows());
    std::vector<int> best;
    double best_cost = std::numeric_limits<double>::infinity();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            double cost = 0.0;
            for (int i = 0; i < n; ++i)
                cost += std::min(std::sqrt(sq(p.row(i), p.row(a))), std::sqrt(sq(p.row(i), p.row(b))));
            if (cost < best_cost - 1e-12) {
                best_cost = cost;
                best = {a, b};
            }
        }
    return best;
}

void clustering_suite(Verdict& v) {
    // Subsets from three clusters of six scenarios with medoids w1, w3, w6.
    const SubsetPlan plan = subsets_from_clusters({3, {0, 0, 1, 1, 2, 2}, {0, 2, 5}}, 1.0);
    v.expect(plan.subsets == std::vector<std::vector<int>>{{0, 1, 2, 5}, {2, 3, 0, 5}, {4, 5, 0, 2}},
             "subset formation example");

    const Array2D<double> p = on_line({0.0, 1.0, 10.0});
    const std::vector<int> partition = best_two_partition(p);
    for (ClusterMethod m : {ClusterMethod::Hierarchical, ClusterMethod::KMeans}) {
        const ClusterAssignment a = cluster(m, p, 2);
        v.expect(a.labels == std::vector<int>{0, 0, 1}, std::string(to_string(m)) + " labels on {0,1,10}");
        v.expect(same_partition(a.labels, partition), std::string(to_string(m)) + " differs from brute force");
    }
    const ClusterAssignment pam = kmedoids(p, 2);
    v.expect(pam.labels == std::vector<int>{0, 0, 1}, "k-medoids labels on {0,1,10}");
    v.expect(pam.medoids == best_medoid_pair(p), "k-medoids medoids differ from brute force");
    v.expect(pam.medoids == std::vector<int>{0, 2}, "k-medoids medoids on {0,1,10}");

    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Array2D<double> cloud(12, 3);
    for (double& x : cloud.flat()) x = u(rng);
    for (ClusterMethod m : {ClusterMethod::Hierarchical, ClusterMethod::KMeans}) {
        const ClusterAssignment first = cluster(m, cloud, 4);
        for (int rep = 0; rep < 4; ++rep)
            v.expect(cluster(m, cloud, 4).labels == first.labels, std::string(to_string(m)) + " not deterministic");
    }
    const ClusterAssignment first = kmedoids(cloud, 4);
    for (int rep = 0; rep < 4; ++rep) {
        const ClusterAssignment again = kmedoids(cloud, 4);
        v.expect(again.labels == first.labels && again.medoids == first.medoids, "k-medoids not deterministic");
    }
}

void adaptive_suite(Verdict& v) {
    const AdaptiveSettings s{0.01, 0.75, 5};
    const DeadBand band = dead_band(100.0, 0.75);
    v.expect(band.up == 25.0 && band.down == 175.0, "dead band of base 100");
    v.expect(adapt_cluster_count(5, 10.0, 10000.0, s, 50) == 10, "slow progress grows 5 to 10");
    v.expect(adapt_cluster_count(5, 200.0, 10000.0, s, 50) == 1, "fast progress shrinks 5 to 1");
    v.expect(adapt_cluster_count(12, 200.0, 10000.0, s, 50) == 7, "fast progress shrinks 12 to 7");
    for (double delta : {25.0, 100.0, 175.0})
        v.expect(adapt_cluster_count(5, delta, 10000.0, s, 50) == 5, "progress " + num(delta) + " inside band");
    v.expect(adapt_cluster_count(8, 0.0, 10000.0, s, 10) == 10, "growth clamps to the scenario count");
    v.expect(adapt_cluster_count(1, 1e6, 10000.0, s, 10) == 1, "shrink clamps to one");
}

void normalization_suite(Verdict& v) {
    const CouplingLayout layout{3, 2, 2, 4};
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    const std::vector<std::pair<int, int>> families{{0, layout.reserve_down(0, 0)},
                                                     {layout.reserve_down(0, 0), layout.wind(0, 0)},
                                                     {layout.wind(0, 0), layout.flow(0, 0)},
                                                     {layout.flow(0, 0), layout.size()}};
    for (int trial = 0; trial < 25; ++trial) {
        const int S = 2 + trial % 7;
        std::vector<SubproblemResult> rs(S);
        for (int s = 0; s < S; ++s) {
            rs[s].scenario = s;
            rs[s].duals.resize(layout.size());
            for (double& d : rs[s].duals) d = u(rng);
        }
        // One family held constant in every other trial.
        const auto constant = families[trial % 4];
        if (trial % 2 == 1)
            for (auto& r : rs) std::fill(r.duals.begin() + constant.first, r.duals.begin() + constant.second, 3.5);
        const Array2D<double> f = normalize_duals(rs, layout);
        for (std::size_t k = 0; k < families.size(); ++k) {
            const auto [lo, hi] = families[k];
            double mn = std::numeric_limits<double>::infinity();
            double mx = -mn;
            for (const auto& r : rs)
                for (int i = lo; i < hi; ++i) {
                    mn = std::min(mn, r.duals[i]);
                    mx = std::max(mx, r.duals[i]);
                }
            bool saw_zero = false;
            bool saw_one = false;
            for (int s = 0; s < S; ++s)
                for (int i = lo; i < hi; ++i) {
                    const double x = f(s, i);
                    v.expect(x >= 0.0 && x <= 1.0, "normalized entry outside [0,1]");
                    if (mx == mn) {
                        v.expect(x == 0.0, "constant family not mapped to 0");
                        continue;
                    }
                    v.expect(std::abs(x - (rs[s].duals[i] - mn) / (mx - mn)) <= 1e-12, "min-max map mismatch");
                    if (rs[s].duals[i] == mn) v.expect(x == 0.0, "family minimum not exactly 0");
                    if (rs[s].duals[i] == mx) v.expect(x == 1.0, "family maximum not exactly 1");
                    saw_zero = saw_zero || x == 0.0;
                    saw_one = saw_one || x == 1.0;
                }
            if (mx != mn) v.expect(saw_zero && saw_one, "family extremes missing");
        }
    }
}

}  // namespace

int main() {
    using Clock = std::chrono::steady_clock;
    std::vector<std::unique_ptr<FixtureRuns>> fixtures;
    fixtures.push_back(std::make_unique<FixtureRuns>("toy-a"));
    fixtures.push_back(std::make_unique<FixtureRuns>("med-b"));
    FixtureRuns& toy = *fixtures[0];
    FixtureRuns& med = *fixtures[1];

    const auto each = [&](auto&& body) {
        return [&, body](Verdict& v) {
            for (auto& f : fixtures) body(*f, v);
        };
    };
    const std::vector<std::pair<std::string, std::function<void(Verdict&)>>> criteria{
        {"method equivalence", each(method_equivalence)},
        {"bound behavior", each(bound_behavior)},
        {"cut tightness and validity", each(cut_validity)},
        {"aggregation identities", [&](Verdict& v) { aggregation_identities(toy, v); }},
        {"relaxation chain", each(relaxation_chain)},
        {"iteration ordering", [&](Verdict& v) { iteration_ordering(med, v); }},
        {"consolidation", each(consolidation)},
        {"outer restriction bound", [&](Verdict& v) { outer_restriction(med, v); }},
        {"clustering", clustering_suite},
        {"adaptive controller", adaptive_suite},
        {"normalization", normalization_suite},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        const auto start = Clock::now();
        try {
            criteria[i].second(v);
        } catch (const std::exception& e) {
            v.expect(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(Clock::now() - start).count();
        failed += v.passed() ? 0 : 1;
        std::cout << (v.passed() ? "PASS" : "FAIL") << ' ' << (i + 1) << ' ' << criteria[i].first << " (" << v.detail()
                  << ", " << num(secs) << " s)" << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
