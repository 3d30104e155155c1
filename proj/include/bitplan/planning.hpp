// SPDX-License-Identifier: BSD-3-Clause
//
// Pieces shared by the planners: stopping rules, clocks and results.

#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "bitplan/space.hpp"

namespace bitplan {

/// How elapsed planning time is measured.
///  - wall: monotonic wall clock.
///  - work: a deterministic model charged per collision-check point and per
///    heuristic distance evaluation, so time-stamped output is reproducible.
enum class ClockMode { wall, work };

/// Work-clock rates; roughly the cost of each operation on a desktop core.
inline constexpr double kWorkSecondsPerCollisionPoint = 2.2e-8;
inline constexpr double kWorkSecondsPerDistanceEval = 1.9e-8;

struct WorkCounters {
    std::uint64_t collision_points = 0;
    std::uint64_t distance_evals = 0;
};

class PlanningClock {
public:
    explicit PlanningClock(ClockMode mode)
        : mode_(mode), start_(std::chrono::steady_clock::now()) {}

    [[nodiscard]] ClockMode mode() const noexcept { return mode_; }

    [[nodiscard]] double elapsed(const WorkCounters& work) const {
        if (mode_ == ClockMode::work) {
            return static_cast<double>(work.collision_points) * kWorkSecondsPerCollisionPoint +
                   static_cast<double>(work.distance_evals) * kWorkSecondsPerDistanceEval;
        }
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    ClockMode mode_;
    std::chrono::steady_clock::time_point start_;
};

/// Any-of stopping rule. At least one bound must be set.
struct StopCondition {
    std::optional<double> time_budget;      // seconds
    std::optional<std::size_t> max_batches; // sampled batches after batch 0
    std::optional<Cost> target_cost;
    ClockMode clock = ClockMode::wall;

    [[nodiscard]] bool bounded() const noexcept {
        return time_budget.has_value() || max_batches.has_value() || target_cost.has_value();
    }
    /// Throws std::invalid_argument when unbounded or a bound is not positive.
    void validate() const;
};

struct ConvergencePoint {
    double elapsed = 0.0;
    Cost cost = kInfiniteCost;
    std::size_t batch = 0;
    std::size_t tree_vertices = 0;
    std::uint64_t samples_drawn = 0;
};

struct PlanResult {
    std::optional<std::vector<State>> path;
    Cost cost = kInfiniteCost;
    /// One point per strict improvement of the incumbent plus one at stop.
    /// Elapsed strictly increasing, cost non-increasing.
    std::vector<ConvergencePoint> convergence;
    /// True when an informed batch could not be filled and planning ended early.
    bool sampler_starved = false;
};

/// Appends `p`, replacing the last point when the clock has not advanced.
void record_convergence(std::vector<ConvergencePoint>& trace, const ConvergencePoint& p);

/// Sum of straight-line segment lengths.
[[nodiscard]] Cost path_length(const std::vector<State>& path);

}  // namespace bitplan
