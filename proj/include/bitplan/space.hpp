// SPDX-License-Identifier: BSD-3-Clause
//
// States, straight-line cost heuristics, informed-set membership and batch
// sampling for Euclidean planning spaces.

#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bitplan {

class World;

/// Path length in meters. +infinity means blocked or unreachable.
using Cost = double;

inline constexpr Cost kInfiniteCost = std::numeric_limits<double>::infinity();

/// A point in R^d.
class State {
public:
    State() = default;
    State(std::initializer_list<double> coords);
    explicit State(std::vector<double> coords);

    [[nodiscard]] std::size_t dimension() const noexcept { return coords_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return coords_[i]; }
    [[nodiscard]] std::span<const double> coords() const noexcept { return coords_; }

    friend bool operator==(const State&, const State&) = default;
    friend auto operator<=>(const State&, const State&) = default;

private:
    std::vector<double> coords_;
};

/// Axis-aligned box. Membership is inclusive on both ends.
struct Bounds {
    State min;
    State max;

    [[nodiscard]] std::size_t dimension() const noexcept { return min.dimension(); }
    [[nodiscard]] bool contains(const State& x) const;
};

/// Closed ball around `center`; the target set of a planning problem.
struct GoalRegion {
    State center;
    double radius = 0.0;

    [[nodiscard]] bool contains(const State& x) const;
};

struct ProblemDef {
    State root;
    std::vector<State> goal_samples;
    GoalRegion goal_region;
    Bounds bounds;

    /// Checks the structural invariants that do not need a world; throws
    /// std::invalid_argument naming the offending field.
    void validate() const;
};

/// Raised when rejection sampling cannot find an admissible state.
class SamplerStarved : public std::runtime_error {
public:
    SamplerStarved(std::uint64_t attempts, double acceptance_estimate);

    [[nodiscard]] double acceptance_estimate() const noexcept { return acceptance_estimate_; }
    [[nodiscard]] std::uint64_t attempts() const noexcept { return attempts_; }

private:
    std::uint64_t attempts_;
    double acceptance_estimate_;
};

/// Seeded random stream. Same seed gives the same sequence on one build.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi);
    State uniform_in(const Bounds& bounds);

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

/// Euclidean distance ||x - y||. Throws std::invalid_argument on dimension mismatch.
[[nodiscard]] Cost c_hat(const State& x, const State& y);

/// Admissible cost-to-come estimate ||root - x||.
[[nodiscard]] Cost g_hat(const State& x, const ProblemDef& problem);

/// Minimum straight-line distance from x to any goal sample.
/// Throws std::invalid_argument if `goal_samples` is empty.
[[nodiscard]] Cost h_hat(const State& x, std::span<const State> goal_samples);

/// Cost-to-go estimate used by the planners: straight-line distance from x
/// to the goal region, max(0, ||x - center|| - radius). Equals
/// h_hat(x, goal_samples) when the region is a single point.
[[nodiscard]] Cost h_hat(const State& x, const ProblemDef& problem);

/// True iff g_hat(x) + h_hat(x) < c_sol. Always true when c_sol is infinite.
[[nodiscard]] bool informed_contains(const State& x, const ProblemDef& problem, Cost c_sol);

/// Consecutive rejections tolerated before a single draw is abandoned.
inline constexpr std::uint64_t kRejectionBudget = 100'000;

/// Draws `m` states uniformly from bounds ∩ free space ∩ informed set by
/// rejection. Throws SamplerStarved after kRejectionBudget consecutive
/// rejections. When `attempts` is given it is incremented by the number of
/// candidate states drawn.
[[nodiscard]] std::vector<State> sample_batch(std::size_t m, const ProblemDef& problem,
                                              const World& world, Cost c_sol, RngStream& rng,
                                              std::uint64_t* attempts = nullptr);

}  // namespace bitplan
