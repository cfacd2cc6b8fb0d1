#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "suc/array2d.hpp"
#include "suc/formulation.hpp"
#include "suc/power_system.hpp"

namespace suc::testing {

/// Violations of the commitment logic (initial periods, minimum up and down
/// times) by a G x T on/off schedule.
inline std::vector<std::string> commitment_violations(const SystemInstance& inst, const Array2D<double>& u) {
    std::vector<std::string> out;
    const int T = inst.horizon;
    for (int g = 0; g < inst.num_generators(); ++g) {
        const auto& gen = inst.generators[g];
        const std::string id = gen.id;
        for (int t = 0; t < T; ++t)
            if (u(g, t) != 0.0 && u(g, t) != 1.0) out.push_back(id + ": non-binary status");
        const int forced = std::min(T, gen.initial_on_periods + gen.initial_off_periods);
        for (int t = 0; t < forced; ++t)
            if (u(g, t) != gen.initial_status) out.push_back(id + ": initial period " + std::to_string(t));
        double prev = gen.initial_status;
        for (int t = 0; t < T; ++t) {
            const double cur = u(g, t);
            if (cur != prev) {
                const int hold = cur == 1.0 ? gen.min_up : gen.min_down;
                for (int k = t; k < std::min(T, t + hold); ++k)
                    if (u(g, k) != cur) out.push_back(id + ": minimum time broken at " + std::to_string(t));
            }
            prev = cur;
        }
    }
    return out;
}

/// Largest violation of the day-ahead balance, flow definition, flow limits
/// and unit limits by a first-stage solution.
inline double first_stage_violation(const SystemInstance& inst, const FirstStageSolution& x) {
    double worst = 0.0;
    auto note = [&](double v) { worst = std::max(worst, v); };
    const int T = inst.horizon;
    for (int t = 0; t < T; ++t) {
        std::vector<double> net(inst.num_nodes(), 0.0);
        for (int g = 0; g < inst.num_generators(); ++g) {
            const auto& gen = inst.generators[g];
            net[gen.node] += x.power(g, t);
            const double u = x.commitment(g, t);
            note(gen.p_min * u - (x.power(g, t) - x.reserve_down(g, t)));
            note(x.power(g, t) + x.reserve_up(g, t) - gen.p_max * u);
            note(-x.reserve_up(g, t));
            note(-x.reserve_down(g, t));
            note(x.reserve_up(g, t) - gen.reserve_up_max);
            note(x.reserve_down(g, t) - gen.reserve_down_max);
        }
        for (int j = 0; j < inst.num_farms(); ++j) {
            net[inst.wind_farms[j].node] += x.wind(j, t);
            note(-x.wind(j, t));
            note(x.wind(j, t) - inst.wind_farms[j].capacity);
        }
        for (int l = 0; l < inst.num_lines(); ++l) {
            const auto& line = inst.lines[l];
            net[line.from] -= x.flow(l, t);
            net[line.to] += x.flow(l, t);
            note(std::abs(x.flow(l, t)) - line.capacity);
            note(std::abs(x.flow(l, t) - line.susceptance * (x.angle(line.from, t) - x.angle(line.to, t))));
        }
        for (int n = 0; n < inst.num_nodes(); ++n) note(std::abs(net[n] - inst.load(n, t)));
        note(std::abs(x.angle(inst.ref_node, t)));
    }
    return worst;
}

}  // namespace suc::testing
