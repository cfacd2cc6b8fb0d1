#pragma once

#include <cmath>
#include <limits>
#include <map>

#include "suc/formulation.hpp"
#include "suc/lp_backend.hpp"

namespace suc::testing {

struct EnumerationResult {
    double objective = std::numeric_limits<double>::infinity();
    int feasible_patterns = 0;
};

/// Solves the extensive form once per commitment pattern (2^(G*T) of them)
/// with every binary pinned, and keeps the cheapest. Start-up and shut-down
/// indicators follow from the pattern and the initial status.
inline EnumerationResult enumerate_commitments(const SystemInstance& inst, const ScenarioSet& scen) {
    const ExtensiveModel ext = build_extensive(inst, scen);
    const int G = inst.num_generators();
    const int T = inst.horizon;
    const int bits = G * T;
    EnumerationResult best;
    for (long pattern = 0; pattern < (1L << bits); ++pattern) {
        std::map<int, double> fixed;
        for (int g = 0; g < G; ++g) {
            double prev = inst.generators[g].initial_status;
            for (int t = 0; t < T; ++t) {
                const double u = (pattern >> (g * T + t)) & 1L;
                fixed[ext.first.commitment(g, t)] = u;
                fixed[ext.first.startup(g, t)] = u > prev ? 1.0 : 0.0;
                fixed[ext.first.shutdown(g, t)] = u < prev ? 1.0 : 0.0;
                prev = u;
            }
        }
        const SolveResult r = solve_milp(ext.model, 0.0, fixed);
        if (!r.optimal()) continue;
        ++best.feasible_patterns;
        best.objective = std::min(best.objective, r.objective);
    }
    return best;
}

}  // namespace suc::testing
