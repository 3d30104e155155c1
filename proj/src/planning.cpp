// SPDX-License-Identifier: BSD-3-Clause

#include "bitplan/planning.hpp"

#include <cmath>
#include <stdexcept>

namespace bitplan {

void StopCondition::validate() const {
    if (!bounded()) throw std::invalid_argument("stop: at least one bound must be set");
    if (time_budget && !(*time_budget > 0.0))
        throw std::invalid_argument("time_budget: must be positive");
    if (target_cost && !(*target_cost > 0.0))
        throw std::invalid_argument("target_cost: must be positive");
}

void record_convergence(std::vector<ConvergencePoint>& trace, const ConvergencePoint& p) {
    if (!trace.empty() && p.elapsed <= trace.back().elapsed) {
        const double kept = trace.back().elapsed;
        trace.back() = p;
        trace.back().elapsed = kept;
        return;
    }
    trace.push_back(p);
}

Cost path_length(const std::vector<State>& path) {
    Cost total = 0.0;
    for (std::size_t i = 1; i < path.size(); ++i) total += c_hat(path[i - 1], path[i]);
    return total;
}

}  // namespace bitplan
