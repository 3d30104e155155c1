// SPDX-License-Identifier: BSD-3-Clause
//
// Fixtures shared by the unit and acceptance tests.

#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "bitplan/space.hpp"
#include "bitplan/world.hpp"

namespace bitplan::testing {

inline Bounds square(double half) { return Bounds{State{-half, -half}, State{half, half}}; }

/// Three circles of radius 1.5 at (0,0), (-7,0) and (7,0) in [-10,10]^2.
inline World demo_world() {
    return World(square(10.0), {CircleObstacle{State{0.0, 0.0}, 1.5}, CircleObstacle{State{-7.0, 0.0}, 1.5},
                                CircleObstacle{State{7.0, 0.0}, 1.5}});
}

inline World empty_world(double half = 10.0) { return World(square(half), {}); }

/// Root (0,-8), goal (0,8) with the given radius, bounds [-10,10]^2.
inline ProblemDef demo_problem(double goal_radius = 0.5) {
    ProblemDef p;
    p.root = State{0.0, -8.0};
    p.goal_samples = {State{0.0, 8.0}};
    p.goal_region = GoalRegion{State{0.0, 8.0}, goal_radius};
    p.bounds = square(10.0);
    return p;
}

inline ProblemDef point_problem(State root, State goal, double half = 10.0) {
    ProblemDef p;
    p.root = std::move(root);
    p.goal_samples = {goal};
    p.goal_region = GoalRegion{std::move(goal), 0.0};
    p.bounds = square(half);
    return p;
}

/// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("bitplan_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void spit(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

}  // namespace bitplan::testing
