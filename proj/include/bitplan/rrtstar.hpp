// SPDX-License-Identifier: BSD-3-Clause
//
// RRT* baseline: sample, steer, choose parent, rewire.

#pragma once

#include <cstddef>

#include "bitplan/planning.hpp"
#include "bitplan/space.hpp"
#include "bitplan/world.hpp"

namespace bitplan {

struct RrtParams {
    double steer_distance = 1.0;         // eta; also the neighbor radius
    std::size_t max_neighbors = 100;     // alpha
    std::size_t goal_period = 50;        // every goal_period-th sample is the goal center
    std::size_t samples_per_batch = 100; // how StopCondition::max_batches maps to samples
    StopCondition stop;

    void validate() const;
};

/// `to` if within `eta` of `from`, else the point at distance eta toward `to`.
[[nodiscard]] State steer(const State& from, const State& to, double eta);

[[nodiscard]] PlanResult rrtstar_plan(const ProblemDef& problem, const World& world,
                                      const RrtParams& params, RngStream rng);

}  // namespace bitplan
