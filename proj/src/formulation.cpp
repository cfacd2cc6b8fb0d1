// SPDX-FileCopyrightText: Contributors to the suc-benders project
//
// SPDX-License-Identifier: Apache-2.0

#include "suc/formulation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "suc/errors.hpp"

namespace suc {

namespace {

std::string name2(const char* base, const std::string& a, int t) {
    return std::string(base) + "(" + a + "," + std::to_string(t + 1) + ")";
}

std::string name3(const char* base, const std::string& a, int t, int s) {
    return std::string(base) + "(" + a + "," + std::to_string(t + 1) + ",s" + std::to_string(s + 1) + ")";
}

Array2D<int> ids(std::size_t rows, std::size_t cols) { return Array2D<int>(rows, cols, -1); }

/// Variables and rows of the day-ahead problem; objective = day-ahead cost.
FirstStageVars add_first_stage(ModelHandle& m, const SystemInstance& inst) {
    const int G = inst.num_generators();
    const int J = inst.num_farms();
    const int N = inst.num_nodes();
    const int L = inst.num_lines();
    const int T = inst.horizon;

    FirstStageVars v;
    v.commitment = ids(G, T);
    v.startup = ids(G, T);
    v.shutdown = ids(G, T);
    v.power = ids(G, T);
    v.reserve_up = ids(G, T);
    v.reserve_down = ids(G, T);
    v.wind = ids(J, T);
    v.angle = ids(N, T);
    v.flow = ids(L, T);

    for (int g = 0; g < G; ++g) {
        const auto& gen = inst.generators[g];
        for (int t = 0; t < T; ++t) {
            v.commitment(g, t) = m.add_binary(name2("u", gen.id, t), 0.0);
            v.startup(g, t) = m.add_binary(name2("y", gen.id, t), gen.startup_cost);
            v.shutdown(g, t) = m.add_binary(name2("z", gen.id, t), 0.0);
            v.power(g, t) = m.add_variable(name2("p", gen.id, t), 0.0, kInf, gen.cost);
            v.reserve_up(g, t) = m.add_variable(name2("rup", gen.id, t), 0.0, kInf, gen.reserve_up_cost);
            v.reserve_down(g, t) = m.add_variable(name2("rdn", gen.id, t), 0.0, kInf, gen.reserve_down_cost);
        }
    }
    for (int j = 0; j < J; ++j)
        for (int t = 0; t < T; ++t) v.wind(j, t) = m.add_variable(name2("w", inst.wind_farms[j].id, t), 0.0, kInf, 0.0);
    for (int n = 0; n < N; ++n) {
        const bool ref = n == inst.ref_node;
        for (int t = 0; t < T; ++t)
            v.angle(n, t) = m.add_variable(name2("da", inst.nodes[n], t), ref ? 0.0 : -kInf, ref ? 0.0 : kInf, 0.0);
    }
    for (int l = 0; l < L; ++l)
        for (int t = 0; t < T; ++t) v.flow(l, t) = m.add_variable(name2("fda", inst.lines[l].id, t), -kInf, kInf, 0.0);

    for (int g = 0; g < G; ++g) {
        const auto& gen = inst.generators[g];
        const double u0 = gen.initial_status;
        const int forced = std::min(T, gen.initial_on_periods + gen.initial_off_periods);
        auto u = [&](int t) { return v.commitment(g, t); };
        auto y = [&](int t) { return v.startup(g, t); };
        auto z = [&](int t) { return v.shutdown(g, t); };
        auto p = [&](int t) { return v.power(g, t); };
        auto rup = [&](int t) { return v.reserve_up(g, t); };
        auto rdn = [&](int t) { return v.reserve_down(g, t); };

        // initial status
        for (int t = 0; t < forced; ++t) m.add_constraint(name2("init", gen.id, t), {{u(t), 1.0}}, Sense::Equal, u0);
        // minimum up / down time
        for (int t = forced; t < T; ++t) {
            std::vector<Term> up{{u(t), -1.0}};
            for (int k = std::max(0, t - gen.min_up + 1); k <= t; ++k) up.push_back({y(k), 1.0});
            m.add_constraint(name2("minup", gen.id, t), std::move(up), Sense::LessEqual, 0.0);
        }
        for (int t = forced; t < T; ++t) {
            std::vector<Term> down{{u(t), 1.0}};
            for (int k = std::max(0, t - gen.min_down + 1); k <= t; ++k) down.push_back({z(k), 1.0});
            m.add_constraint(name2("mindn", gen.id, t), std::move(down), Sense::LessEqual, 1.0);
        }
        // state transitions
        for (int t = 0; t < T; ++t) {
            if (t == 0)
                m.add_constraint(name2("trans", gen.id, t), {{y(t), 1.0}, {z(t), -1.0}, {u(t), -1.0}}, Sense::Equal, -u0);
            else
                m.add_constraint(name2("trans", gen.id, t), {{y(t), 1.0}, {z(t), -1.0}, {u(t), -1.0}, {u(t - 1), 1.0}},
                                 Sense::Equal, 0.0);
        }
        for (int t = 0; t < T; ++t)
            m.add_constraint(name2("onoff", gen.id, t), {{y(t), 1.0}, {z(t), 1.0}}, Sense::LessEqual, 1.0);

        // Ramping; the pre-horizon unit sits at p_min when on, without reserves.
        const double p_prev0 = u0 * gen.p_min;
        for (int t = 0; t < T; ++t) {
            if (t == 0)
                m.add_constraint(name2("rampup", gen.id, t), {{p(t), 1.0}, {rup(t), 1.0}, {y(t), -gen.ramp_up}},
                                 Sense::LessEqual, p_prev0 + gen.ramp_up * u0);
            else
                m.add_constraint(name2("rampup", gen.id, t),
                                 {{p(t), 1.0}, {rup(t), 1.0}, {p(t - 1), -1.0}, {rup(t - 1), -1.0},
                                  {u(t - 1), -gen.ramp_up}, {y(t), -gen.ramp_up}},
                                 Sense::LessEqual, 0.0);
        }
        for (int t = 0; t < T; ++t) {
            if (t == 0)
                m.add_constraint(name2("rampdn", gen.id, t),
                                 {{p(t), -1.0}, {rdn(t), 1.0}, {u(t), -gen.ramp_down}, {z(t), -gen.ramp_down}},
                                 Sense::LessEqual, -p_prev0);
            else
                m.add_constraint(name2("rampdn", gen.id, t),
                                 {{p(t - 1), 1.0}, {rdn(t - 1), -1.0}, {p(t), -1.0}, {rdn(t), 1.0},
                                  {u(t), -gen.ramp_down}, {z(t), -gen.ramp_down}},
                                 Sense::LessEqual, 0.0);
        }
        for (int t = 0; t < T; ++t)
            m.add_constraint(name2("pmin", gen.id, t), {{p(t), 1.0}, {rdn(t), -1.0}, {u(t), -gen.p_min}},
                             Sense::GreaterEqual, 0.0);
        // No shutdown is scheduled after the horizon (z at T+1 is zero).
        for (int t = 0; t < T; ++t) {
            std::vector<Term> row{{p(t), 1.0}, {rup(t), 1.0}, {u(t), -gen.p_max}};
            if (t + 1 < T) row.push_back({z(t + 1), gen.p_max - gen.ramp_down});
            m.add_constraint(name2("pmax", gen.id, t), std::move(row), Sense::LessEqual, 0.0);
        }
        for (int t = 0; t < T; ++t)
            m.add_constraint(name2("rupmax", gen.id, t), {{rup(t), 1.0}}, Sense::LessEqual, gen.reserve_up_max);
        for (int t = 0; t < T; ++t)
            m.add_constraint(name2("rdnmax", gen.id, t), {{rdn(t), 1.0}}, Sense::LessEqual, gen.reserve_down_max);
    }

    for (int j = 0; j < J; ++j)
        for (int t = 0; t < T; ++t)
            m.add_constraint(name2("wmax", inst.wind_farms[j].id, t), {{v.wind(j, t), 1.0}}, Sense::LessEqual,
                             inst.wind_farms[j].capacity);

    // Nodal balance: generation + wind + inflow - outflow = load, with flow
    // positive in the from -> to direction.
    for (int n = 0; n < N; ++n) {
        for (int t = 0; t < T; ++t) {
            std::vector<Term> row;
            for (int g = 0; g < G; ++g)
                if (inst.generators[g].node == n) row.push_back({v.power(g, t), 1.0});
            for (int j = 0; j < J; ++j)
                if (inst.wind_farms[j].node == n) row.push_back({v.wind(j, t), 1.0});
            for (int l = 0; l < L; ++l) {
                if (inst.lines[l].to == n) row.push_back({v.flow(l, t), 1.0});
                if (inst.lines[l].from == n) row.push_back({v.flow(l, t), -1.0});
            }
            m.add_constraint(name2("bal", inst.nodes[n], t), std::move(row), Sense::Equal, inst.load(n, t));
        }
    }
    for (int l = 0; l < L; ++l)
        for (int t = 0; t < T; ++t)
            m.add_range(name2("fcap", inst.lines[l].id, t), {{v.flow(l, t), 1.0}}, -inst.lines[l].capacity,
                        inst.lines[l].capacity);
    for (int l = 0; l < L; ++l) {
        const auto& line = inst.lines[l];
        for (int t = 0; t < T; ++t)
            m.add_constraint(name2("fdef", line.id, t),
                             {{v.flow(l, t), 1.0}, {v.angle(line.from, t), -line.susceptance},
                              {v.angle(line.to, t), line.susceptance}},
                             Sense::Equal, 0.0);
    }
    return v;
}

/// Coupling variable ids seen by one scenario's recourse rows.
struct CouplingIds {
    const Array2D<int>& reserve_up;
    const Array2D<int>& reserve_down;
    const Array2D<int>& wind;
    const Array2D<int>& flow;
};

/// Recourse variables and rows of one scenario; objective weighted by `weight`.
RecourseVars add_recourse(ModelHandle& m, const SystemInstance& inst, const Array2D<double>& realized, int s,
                          const CouplingIds& x, double weight) {
    const int G = inst.num_generators();
    const int J = inst.num_farms();
    const int N = inst.num_nodes();
    const int L = inst.num_lines();
    const int T = inst.horizon;

    RecourseVars v;
    v.deploy_up = ids(G, T);
    v.deploy_down = ids(G, T);
    v.spill = ids(J, T);
    v.shed = ids(N, T);
    v.flow = ids(L, T);
    v.angle = ids(N, T);

    for (int g = 0; g < G; ++g) {
        const auto& gen = inst.generators[g];
        for (int t = 0; t < T; ++t) {
            v.deploy_up(g, t) = m.add_variable(name3("pup", gen.id, t, s), 0.0, kInf, weight * gen.deploy_up_price);
            v.deploy_down(g, t) =
                m.add_variable(name3("pdn", gen.id, t, s), 0.0, kInf, -weight * gen.deploy_down_price);
        }
    }
    for (int j = 0; j < J; ++j)
        for (int t = 0; t < T; ++t) v.spill(j, t) = m.add_variable(name3("spill", inst.wind_farms[j].id, t, s), 0.0, kInf, 0.0);
    for (int n = 0; n < N; ++n)
        for (int t = 0; t < T; ++t) v.shed(n, t) = m.add_variable(name3("shed", inst.nodes[n], t, s), 0.0, kInf, weight * inst.shed_cost);
    for (int l = 0; l < L; ++l)
        for (int t = 0; t < T; ++t) v.flow(l, t) = m.add_variable(name3("frt", inst.lines[l].id, t, s), -kInf, kInf, 0.0);
    for (int n = 0; n < N; ++n) {
        const bool ref = n == inst.ref_node;
        for (int t = 0; t < T; ++t)
            v.angle(n, t) = m.add_variable(name3("drt", inst.nodes[n], t, s), ref ? 0.0 : -kInf, ref ? 0.0 : kInf, 0.0);
    }

    // Real-time balance, expressed as deviations from the day-ahead balance:
    //   sum(p+ - p-) + sum(W* - w - spill) + shed + in(f~ - f^) - out(f~ - f^) = 0
    for (int n = 0; n < N; ++n) {
        for (int t = 0; t < T; ++t) {
            std::vector<Term> row;
            double rhs = 0.0;
            for (int g = 0; g < G; ++g) {
                if (inst.generators[g].node != n) continue;
                row.push_back({v.deploy_up(g, t), 1.0});
                row.push_back({v.deploy_down(g, t), -1.0});
            }
            for (int j = 0; j < J; ++j) {
                if (inst.wind_farms[j].node != n) continue;
                row.push_back({x.wind(j, t), -1.0});
                row.push_back({v.spill(j, t), -1.0});
                rhs -= realized(j, t);
            }
            row.push_back({v.shed(n, t), 1.0});
            for (int l = 0; l < L; ++l) {
                const double sign = inst.lines[l].to == n ? 1.0 : (inst.lines[l].from == n ? -1.0 : 0.0);
                if (sign == 0.0) continue;
                row.push_back({v.flow(l, t), sign});
                row.push_back({x.flow(l, t), -sign});
            }
            m.add_constraint(name3("rtbal", inst.nodes[n], t, s), std::move(row), Sense::Equal, rhs);
        }
    }
    for (int g = 0; g < G; ++g)
        for (int t = 0; t < T; ++t)
            m.add_constraint(name3("pupmax", inst.generators[g].id, t, s),
                             {{v.deploy_up(g, t), 1.0}, {x.reserve_up(g, t), -1.0}}, Sense::LessEqual, 0.0);
    for (int g = 0; g < G; ++g)
        for (int t = 0; t < T; ++t)
            m.add_constraint(name3("pdnmax", inst.generators[g].id, t, s),
                             {{v.deploy_down(g, t), 1.0}, {x.reserve_down(g, t), -1.0}}, Sense::LessEqual, 0.0);
    for (int j = 0; j < J; ++j)
        for (int t = 0; t < T; ++t)
            m.add_constraint(name3("spillmax", inst.wind_farms[j].id, t, s), {{v.spill(j, t), 1.0}}, Sense::LessEqual,
                             realized(j, t));
    for (int n = 0; n < N; ++n)
        for (int t = 0; t < T; ++t)
            m.add_constraint(name3("shedmax", inst.nodes[n], t, s), {{v.shed(n, t), 1.0}}, Sense::LessEqual,
                             inst.load(n, t));
    for (int l = 0; l < L; ++l)
        for (int t = 0; t < T; ++t)
            m.add_range(name3("frtcap", inst.lines[l].id, t, s), {{v.flow(l, t), 1.0}}, -inst.lines[l].capacity,
                        inst.lines[l].capacity);
    for (int l = 0; l < L; ++l) {
        const auto& line = inst.lines[l];
        for (int t = 0; t < T; ++t)
            m.add_constraint(name3("frtdef", line.id, t, s),
                             {{v.flow(l, t), 1.0}, {v.angle(line.from, t), -line.susceptance},
                              {v.angle(line.to, t), line.susceptance}},
                             Sense::Equal, 0.0);
    }
    return v;
}

Array2D<double> read(const Array2D<int>& vars, std::span<const double> primal) {
    Array2D<double> out(vars.rows(), vars.cols(), 0.0);
    for (std::size_t r = 0; r < vars.rows(); ++r)
        for (std::size_t c = 0; c < vars.cols(); ++c) out(r, c) = primal[vars(r, c)];
    return out;
}

void check_dimensions(const SystemInstance& inst, const FirstStageSolution& x) {
    const auto G = static_cast<std::size_t>(inst.num_generators());
    const auto T = static_cast<std::size_t>(inst.horizon);
    auto fits = [T](const Array2D<double>& a, std::size_t rows) { return a.rows() == rows && a.cols() == T; };
    if (!fits(x.reserve_up, G) || !fits(x.reserve_down, G) || !fits(x.wind, inst.wind_farms.size()) ||
        !fits(x.flow, inst.lines.size()))
        throw DimensionError("first-stage solution does not match the instance dimensions");
}

}  // namespace

CouplingLayout CouplingLayout::of(const SystemInstance& instance) {
    return {instance.num_generators(), instance.num_farms(), instance.num_lines(), instance.horizon};
}

std::vector<double> FirstStageSolution::coupling() const {
    std::vector<double> out;
    out.reserve(reserve_up.size() + reserve_down.size() + wind.size() + flow.size());
    for (const auto* block : {&reserve_up, &reserve_down, &wind, &flow})
        out.insert(out.end(), block->flat().begin(), block->flat().end());
    return out;
}

std::vector<int> FirstStageVars::coupling(const CouplingLayout& layout) const {
    std::vector<int> out;
    out.reserve(layout.size());
    for (const auto* block : {&reserve_up, &reserve_down, &wind, &flow})
        out.insert(out.end(), block->flat().begin(), block->flat().end());
    return out;
}

double default_theta_min(const SystemInstance& instance) {
    double bound = 0.0;
    for (const auto& g : instance.generators) bound -= g.deploy_down_price * g.reserve_down_max;
    return bound * instance.horizon;
}

double day_ahead_cost(const SystemInstance& inst, const FirstStageSolution& x) {
    double cost = 0.0;
    for (int g = 0; g < inst.num_generators(); ++g) {
        const auto& gen = inst.generators[g];
        for (int t = 0; t < inst.horizon; ++t)
            cost += gen.cost * x.power(g, t) + gen.startup_cost * x.startup(g, t) +
                    gen.reserve_up_cost * x.reserve_up(g, t) + gen.reserve_down_cost * x.reserve_down(g, t);
    }
    return cost;
}

ExtensiveModel build_extensive(const SystemInstance& instance, const ScenarioSet& scenarios) {
    ExtensiveModel ext;
    ext.first = add_first_stage(ext.model, instance);
    const CouplingIds x{ext.first.reserve_up, ext.first.reserve_down, ext.first.wind, ext.first.flow};
    for (int s = 0; s < scenarios.size(); ++s)
        ext.recourse.push_back(add_recourse(ext.model, instance, scenarios.wind[s], s, x, scenarios.probability[s]));
    return ext;
}

MasterModel build_master(const SystemInstance& instance, const ScenarioSet& scenarios, CutMode mode,
                         const CutPool& pool, double theta_min) {
    const CouplingLayout layout = CouplingLayout::of(instance);
    const int S = scenarios.size();

    for (const auto& cut : pool.cuts) {
        if (static_cast<int>(cut.slopes.size()) != layout.size() || cut.anchor.size() != cut.slopes.size())
            throw DimensionError("cut of iteration " + std::to_string(cut.iteration) +
                                 " does not match the instance coupling dimension");
        if (cut.members.size() != cut.theta_weights.size() || cut.members.empty())
            throw InvalidArgument("cut of iteration " + std::to_string(cut.iteration) + " has malformed members");
        for (int m : cut.members)
            if (m < 0 || m >= S) throw InvalidArgument("cut member outside the scenario set");
        const bool ok = [&] {
            switch (mode) {
                case CutMode::MultiCut:
                    return cut.kind == CutKind::PerScenario;
                case CutMode::Aggregated:
                    return cut.kind != CutKind::PerScenario;
                case CutMode::SingleCut:
                    return cut.kind != CutKind::PerScenario && static_cast<int>(cut.members.size()) == S;
            }
            return false;
        }();
        if (!ok)
            throw InvalidArgument(std::string(to_string(cut.kind)) + " cut of iteration " +
                                  std::to_string(cut.iteration) + " cannot be used in a " + to_string(mode) +
                                  " master");
    }

    MasterModel master;
    master.first = add_first_stage(master.model, instance);
    master.first_stage_rows = master.model.num_rows();

    if (mode == CutMode::SingleCut) {
        master.theta.push_back(master.model.add_variable("theta", -kInf, kInf, 1.0));
        master.model.add_constraint("thetamin", {{master.theta[0], 1.0}}, Sense::GreaterEqual, theta_min);
    } else {
        for (int s = 0; s < S; ++s)
            master.theta.push_back(master.model.add_variable("theta(" + scenarios.ids[s] + ")", -kInf, kInf,
                                                             scenarios.probability[s]));
        for (int s = 0; s < S; ++s)
            master.model.add_constraint("thetamin(" + scenarios.ids[s] + ")", {{master.theta[s], 1.0}},
                                        Sense::GreaterEqual, theta_min);
    }

    const std::vector<int> x = master.first.coupling(layout);
    master.cut_row_begin = master.model.num_rows();
    for (std::size_t c = 0; c < pool.cuts.size(); ++c) {
        const Cut& cut = pool.cuts[c];
        std::vector<Term> row;
        // Rows are scaled so the theta weights sum to one. Scenario cuts are
        // first weighted by their probability, so a scenario cut and the
        // singleton cluster cut of the same scenario give identical rows.
        double weight = 1.0;
        double scale = 1.0;
        if (mode == CutMode::SingleCut) {
            row.push_back({master.theta[0], 1.0});
        } else {
            if (cut.kind == CutKind::PerScenario) weight = scenarios.probability[cut.members[0]];
            scale = 0.0;
            for (double w : cut.theta_weights) scale += w * weight;
            for (std::size_t m = 0; m < cut.members.size(); ++m)
                row.push_back({master.theta[cut.members[m]], cut.theta_weights[m] * weight / scale});
        }
        double rhs = cut.intercept * weight / scale;
        for (std::size_t i = 0; i < cut.slopes.size(); ++i) {
            if (cut.slopes[i] == 0.0) continue;
            const double slope = cut.slopes[i] * weight / scale;
            row.push_back({x[i], -slope});
            rhs -= slope * cut.anchor[i];
        }
        master.model.add_constraint("cut" + std::to_string(c) + "(k" + std::to_string(cut.iteration) + ")",
                                    std::move(row), Sense::GreaterEqual, rhs);
    }
    return master;
}

SubproblemModel build_subproblem(const SystemInstance& instance, const ScenarioSet& scenarios, int scenario,
                                 const FirstStageSolution& x_hat) {
    if (scenario < 0 || scenario >= scenarios.size()) throw InvalidArgument("scenario index out of range");
    check_dimensions(instance, x_hat);
    const int G = instance.num_generators();
    const int J = instance.num_farms();
    const int L = instance.num_lines();
    const int T = instance.horizon;

    SubproblemModel sub;
    ModelHandle& m = sub.model;
    Array2D<int> rup = ids(G, T), rdn = ids(G, T), w = ids(J, T), f = ids(L, T);
    for (int g = 0; g < G; ++g)
        for (int t = 0; t < T; ++t) {
            rup(g, t) = m.add_variable(name2("rup", instance.generators[g].id, t), -kInf, kInf, 0.0);
            rdn(g, t) = m.add_variable(name2("rdn", instance.generators[g].id, t), -kInf, kInf, 0.0);
        }
    for (int j = 0; j < J; ++j)
        for (int t = 0; t < T; ++t) w(j, t) = m.add_variable(name2("w", instance.wind_farms[j].id, t), -kInf, kInf, 0.0);
    for (int l = 0; l < L; ++l)
        for (int t = 0; t < T; ++t) f(l, t) = m.add_variable(name2("fda", instance.lines[l].id, t), -kInf, kInf, 0.0);

    sub.vars = add_recourse(m, instance, scenarios.wind[scenario], scenario, CouplingIds{rup, rdn, w, f}, 1.0);

    const CouplingLayout layout = CouplingLayout::of(instance);
    sub.fixing_rows.assign(layout.size(), -1);
    for (int g = 0; g < G; ++g)
        for (int t = 0; t < T; ++t)
            sub.fixing_rows[layout.reserve_up(g, t)] =
                m.add_constraint(name2("fixrup", instance.generators[g].id, t), {{rup(g, t), 1.0}}, Sense::Equal,
                                 x_hat.reserve_up(g, t));
    for (int g = 0; g < G; ++g)
        for (int t = 0; t < T; ++t)
            sub.fixing_rows[layout.reserve_down(g, t)] =
                m.add_constraint(name2("fixrdn", instance.generators[g].id, t), {{rdn(g, t), 1.0}}, Sense::Equal,
                                 x_hat.reserve_down(g, t));
    for (int j = 0; j < J; ++j)
        for (int t = 0; t < T; ++t)
            sub.fixing_rows[layout.wind(j, t)] = m.add_constraint(name2("fixw", instance.wind_farms[j].id, t),
                                                                  {{w(j, t), 1.0}}, Sense::Equal, x_hat.wind(j, t));
    for (int l = 0; l < L; ++l)
        for (int t = 0; t < T; ++t)
            sub.fixing_rows[layout.flow(l, t)] = m.add_constraint(name2("fixf", instance.lines[l].id, t),
                                                                  {{f(l, t), 1.0}}, Sense::Equal, x_hat.flow(l, t));
    return sub;
}

FirstStageSolution extract_first_stage(const SystemInstance& instance, const FirstStageVars& vars,
                                       std::span<const double> primal) {
    FirstStageSolution x;
    x.commitment = read(vars.commitment, primal);
    x.startup = read(vars.startup, primal);
    x.shutdown = read(vars.shutdown, primal);
    for (auto* binary : {&x.commitment, &x.startup, &x.shutdown})
        for (double& v : binary->flat()) v = std::round(v);
    x.power = read(vars.power, primal);
    x.reserve_up = read(vars.reserve_up, primal);
    x.reserve_down = read(vars.reserve_down, primal);
    x.wind = read(vars.wind, primal);
    x.angle = read(vars.angle, primal);
    x.flow = read(vars.flow, primal);
    x.day_ahead_cost = day_ahead_cost(instance, x);
    return x;
}

SecondStageSolution extract_second_stage(const SystemInstance& instance, const RecourseVars& vars,
                                         std::span<const double> primal) {
    SecondStageSolution r;
    r.deploy_up = read(vars.deploy_up, primal);
    r.deploy_down = read(vars.deploy_down, primal);
    r.spill = read(vars.spill, primal);
    r.shed = read(vars.shed, primal);
    r.flow = read(vars.flow, primal);
    r.angle = read(vars.angle, primal);
    for (int g = 0; g < instance.num_generators(); ++g) {
        const auto& gen = instance.generators[g];
        for (int t = 0; t < instance.horizon; ++t)
            r.recourse_cost += gen.deploy_up_price * r.deploy_up(g, t) - gen.deploy_down_price * r.deploy_down(g, t);
    }
    for (double shed : r.shed.flat()) r.recourse_cost += instance.shed_cost * shed;
    return r;
}

double evaluate_cut(const Cut& cut, std::span<const double> x) {
    if (x.size() != cut.slopes.size() || cut.anchor.size() != cut.slopes.size())
        throw DimensionError("evaluate_cut: coupling dimension mismatch");
    double value = cut.intercept;
    for (std::size_t i = 0; i < x.size(); ++i) value += cut.slopes[i] * (x[i] - cut.anchor[i]);
    return value;
}

double evaluate_cut(const Cut& cut, const FirstStageSolution& x) {
    const auto coupling = x.coupling();
    return evaluate_cut(cut, coupling);
}

Cut per_scenario_cut(int iteration, const SubproblemResult& result, std::span<const double> x_hat) {
    if (result.duals.size() != x_hat.size()) throw DimensionError("per_scenario_cut: dual/coupling size mismatch");
    Cut cut;
    cut.iteration = iteration;
    cut.kind = CutKind::PerScenario;
    cut.members = {result.scenario};
    cut.theta_weights = {1.0};
    cut.intercept = result.recourse_cost;
    cut.slopes = result.duals;
    cut.anchor.assign(x_hat.begin(), x_hat.end());
    return cut;
}

const char* to_string(CutMode mode) {
    switch (mode) {
        case CutMode::SingleCut:
            return "single-cut";
        case CutMode::MultiCut:
            return "multi-cut";
        case CutMode::Aggregated:
            return "aggregated";
    }
    return "?";
}

const char* to_string(CutKind kind) {
    switch (kind) {
        case CutKind::PerScenario:
            return "PerScenario";
        case CutKind::ClusterAggregate:
            return "ClusterAggregate";
        case CutKind::Consolidated:
            return "Consolidated";
    }
    return "?";
}

int CutPool::count(CutKind kind) const {
    return static_cast<int>(std::count_if(cuts.begin(), cuts.end(), [kind](const Cut& c) { return c.kind == kind; }));
}

bool CutPool::is_consolidated(int iteration) const {
    return std::find(consolidated.begin(), consolidated.end(), iteration) != consolidated.end();
}

}  // namespace suc
