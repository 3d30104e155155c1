// SPDX-License-Identifier: BSD-3-Clause
//
// Scenario files: a line-oriented `key = value` format with [sections].
//
//   # comment
//   name = demo
//   root = 0 -8
//   goal_center = 0 8
//   goal_radius = 0.5
//   goal_sample = 0 8            (repeatable; defaults to goal_center)
//   bounds_min = -10 -10         (geometric worlds only)
//   bounds_max = 10 10
//   checks_per_meter = 4
//   trials = 20
//   seed = 1
//
//   [world]
//   circle = cx cy r             (repeatable)
//   rect = x0 y0 x1 y1           (repeatable; min corner then max corner)
//   grid = map.pgm               (relative to the scenario file)
//   meters_per_cell = 0.1
//   origin = 0 0
//   threshold = 127
//
//   [bitstar]
//   batch_size = 100
//   rho = 8
//
//   [rrtstar]
//   eta = 8
//   alpha = 100
//   target_period = 50
//   samples_per_batch = 100
//
//   [stop]
//   time_budget = 1.0
//   max_batches = 10
//   target_cost = 16.5
//   clock = wall | work

#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "bitplan/bitstar.hpp"
#include "bitplan/rrtstar.hpp"
#include "bitplan/space.hpp"
#include "bitplan/world.hpp"

namespace bitplan {

class ScenarioError : public std::runtime_error {
public:
    ScenarioError(const std::string& source, std::size_t line, const std::string& field,
                  const std::string& what);
    [[nodiscard]] const std::string& field() const noexcept { return field_; }
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::string field_;
    std::size_t line_;
};

struct Scenario {
    std::string name;
    ProblemDef problem;
    World world;
    PlannerParams bitstar;
    RrtParams rrtstar;
    std::size_t trials = 1;
    std::uint64_t seed = 0;

    /// Replaces the stop condition of both planners.
    void set_stop(const StopCondition& stop);
};

/// Parses scenario text. `base_dir` resolves relative grid paths; `source`
/// names the text in error messages.
[[nodiscard]] Scenario parse_scenario(std::string_view text, const std::string& source,
                                      const std::filesystem::path& base_dir = ".");

[[nodiscard]] Scenario load_scenario(const std::filesystem::path& path);

/// Text of the built-in three-circle demonstration scenario.
[[nodiscard]] std::string_view demo_scenario_text();

/// "demo" names the built-in scenario unless a file of that name exists;
/// anything else is loaded as a file.
[[nodiscard]] Scenario resolve_scenario(const std::string& name_or_path);

}  // namespace bitplan
