// SPDX-License-Identifier: BSD-3-Clause
//
// SVG snapshots of a planning run (first two coordinates only).

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bitplan/bitstar.hpp"
#include "bitplan/space.hpp"
#include "bitplan/world.hpp"

namespace bitplan {

/// {x : |x - a| + |x - b| < transverse}.
struct InformedEllipse {
    State focus_a;
    State focus_b;
    Cost transverse = 0.0;

    [[nodiscard]] double semi_major() const { return 0.5 * transverse; }
    /// 0.5 * sqrt(transverse^2 - |a - b|^2), clamped at zero.
    [[nodiscard]] double semi_minor() const;
};

struct SceneSnapshot {
    std::vector<std::pair<State, State>> tree_edges;  // parent -> child
    std::vector<State> samples;                       // unconnected
    std::vector<State> path;                          // incumbent, may be empty
    std::optional<InformedEllipse> ellipse;
    std::optional<State> root;
    std::optional<GoalRegion> goal;
    std::string title;
};

/// Captures a BIT* context. The ellipse is present only once a solution exists.
[[nodiscard]] SceneSnapshot take_snapshot(const PlannerContext& ctx, const ProblemDef& problem);

/// One <path> per tree edge, the incumbent as a <polyline>, the informed set
/// as an <ellipse>.
[[nodiscard]] std::string render_svg(const World& world, const SceneSnapshot& scene);

void write_svg(const World& world, const SceneSnapshot& scene, const std::filesystem::path& out);

}  // namespace bitplan
