// SPDX-License-Identifier: BSD-3-Clause
//
// Seeded multi-trial runs, convergence aggregation and CSV output.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "bitplan/bitstar.hpp"
#include "bitplan/planning.hpp"
#include "bitplan/scenario.hpp"

namespace bitplan {

enum class PlannerKind { bitstar, rrtstar };

/// "bitstar" or "rrtstar"; throws std::invalid_argument otherwise.
[[nodiscard]] PlannerKind parse_planner(std::string_view name);
[[nodiscard]] std::string_view planner_name(PlannerKind kind);

struct ConvergenceSeries {
    PlannerKind planner = PlannerKind::bitstar;
    std::uint64_t seed = 0;
    std::vector<ConvergencePoint> points;
    bool sampler_starved = false;

    [[nodiscard]] Cost final_cost() const {
        return points.empty() ? kInfiniteCost : points.back().cost;
    }
};

/// One planner run. The observer is only consulted by BIT*.
[[nodiscard]] PlanResult run_trial(const Scenario& scenario, PlannerKind kind, std::uint64_t seed,
                                   PlannerObserver* observer = nullptr);

/// Trial k (0-based) uses seed base_seed + k. Results come back in seed order
/// regardless of `jobs`. Planner errors are rethrown as std::runtime_error
/// naming the seed.
[[nodiscard]] std::vector<ConvergenceSeries> run_trials(const Scenario& scenario, PlannerKind kind,
                                                        std::size_t n, std::uint64_t base_seed,
                                                        std::size_t jobs = 1);

/// Staircase value of a series at t: last cost with elapsed <= t, or infinity.
[[nodiscard]] Cost cost_at(const std::vector<ConvergencePoint>& points, double t);

struct AggregateRow {
    double t = 0.0;
    std::size_t n_solved = 0;
    Cost median = kInfiniteCost;  // NaN when n_solved == 0
    Cost mean = kInfiniteCost;
};

struct AggregateTable {
    std::vector<AggregateRow> rows;
};

/// Grid t = k * step for k = 0, 1, ... while t <= horizon (plus a small
/// tolerance). Statistics are over trials with a finite cost at t.
[[nodiscard]] AggregateTable aggregate(const std::vector<ConvergenceSeries>& series, double step,
                                       double horizon);

/// Median of the final costs that are finite; NaN when none are.
[[nodiscard]] Cost median_final_cost(const std::vector<ConvergenceSeries>& series);

/// `elapsed_s,cost` header plus one row per point.
void write_series_csv(const std::vector<ConvergencePoint>& points, const std::filesystem::path& out);
/// `elapsed_s,cost,batch,tree_vertices,samples_drawn`.
void write_trial_csv(const std::vector<ConvergencePoint>& points, const std::filesystem::path& out);
/// `t_s,n_solved,median_cost,mean_cost`.
void write_aggregate_csv(const AggregateTable& table, const std::filesystem::path& out);

/// Fixed six-decimal formatting; "inf" and "nan" for non-finite values.
[[nodiscard]] std::string format_fixed(double v);

}  // namespace bitplan
