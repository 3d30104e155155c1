// SPDX-License-Identifier: BSD-3-Clause

#include "bitplan/space.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bitplan/world.hpp"

namespace bitplan {

namespace {

void check_finite(std::span<const double> coords) {
    for (double c : coords) {
        if (!std::isfinite(c)) throw std::invalid_argument("state coordinate is not finite");
    }
}

}  // namespace

State::State(std::initializer_list<double> coords) : coords_(coords) { check_finite(coords_); }

State::State(std::vector<double> coords) : coords_(std::move(coords)) { check_finite(coords_); }

bool Bounds::contains(const State& x) const {
    if (x.dimension() != min.dimension()) return false;
    for (std::size_t i = 0; i < x.dimension(); ++i) {
        if (x[i] < min[i] || x[i] > max[i]) return false;
    }
    return true;
}

bool GoalRegion::contains(const State& x) const { return c_hat(x, center) <= radius; }

void ProblemDef::validate() const {
    const std::size_t d = root.dimension();
    if (d < 2) throw std::invalid_argument("root: dimension must be at least 2");
    if (bounds.min.dimension() != d || bounds.max.dimension() != d)
        throw std::invalid_argument("bounds: dimension does not match root");
    for (std::size_t i = 0; i < d; ++i) {
        if (!(bounds.min[i] < bounds.max[i]))
            throw std::invalid_argument("bounds: min must be below max in every axis");
    }
    if (!bounds.contains(root)) throw std::invalid_argument("root: outside bounds");
    if (goal_region.center.dimension() != d)
        throw std::invalid_argument("goal_center: dimension does not match root");
    if (!(goal_region.radius >= 0.0) || !std::isfinite(goal_region.radius))
        throw std::invalid_argument("goal_radius: must be finite and non-negative");
    if (goal_samples.empty()) throw std::invalid_argument("goal_samples: must not be empty");
    for (const State& g : goal_samples) {
        if (g.dimension() != d) throw std::invalid_argument("goal_samples: dimension mismatch");
        if (!bounds.contains(g)) throw std::invalid_argument("goal_samples: outside bounds");
        if (!goal_region.contains(g))
            throw std::invalid_argument("goal_samples: sample outside the goal region");
    }
}

SamplerStarved::SamplerStarved(std::uint64_t attempts, double acceptance_estimate)
    : std::runtime_error("sampler starved after " + std::to_string(attempts) +
                         " consecutive rejections (estimated acceptance rate " +
                         std::to_string(acceptance_estimate) + ")"),
      attempts_(attempts),
      acceptance_estimate_(acceptance_estimate) {}

double RngStream::uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

State RngStream::uniform_in(const Bounds& bounds) {
    std::vector<double> coords(bounds.dimension());
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = uniform(bounds.min[i], bounds.max[i]);
    return State(std::move(coords));
}

Cost c_hat(const State& x, const State& y) {
    if (x.dimension() != y.dimension()) throw std::invalid_argument("c_hat: dimension mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < x.dimension(); ++i) {
        const double d = x[i] - y[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

Cost g_hat(const State& x, const ProblemDef& problem) { return c_hat(problem.root, x); }

Cost h_hat(const State& x, std::span<const State> goal_samples) {
    if (goal_samples.empty()) throw std::invalid_argument("h_hat: empty goal set");
    Cost best = kInfiniteCost;
    for (const State& g : goal_samples) best = std::min(best, c_hat(x, g));
    return best;
}

Cost h_hat(const State& x, const ProblemDef& problem) {
    return std::max(0.0, c_hat(x, problem.goal_region.center) - problem.goal_region.radius);
}

bool informed_contains(const State& x, const ProblemDef& problem, Cost c_sol) {
    if (c_sol == kInfiniteCost) return true;
    return g_hat(x, problem) + h_hat(x, problem) < c_sol;
}

std::vector<State> sample_batch(std::size_t m, const ProblemDef& problem, const World& world,
                                Cost c_sol, RngStream& rng, std::uint64_t* attempts) {
    if (m == 0) throw std::invalid_argument("sample_batch: m must be positive");
    std::vector<State> out;
    out.reserve(m);
    std::uint64_t total_attempts = 0;
    while (out.size() < m) {
        std::uint64_t rejections = 0;
        for (;;) {
            State x = rng.uniform_in(problem.bounds);
            ++total_attempts;
            if (attempts) ++*attempts;
            if (world.is_free(x) && informed_contains(x, problem, c_sol)) {
                out.push_back(std::move(x));
                break;
            }
            if (++rejections >= kRejectionBudget) {
                throw SamplerStarved(rejections, static_cast<double>(out.size()) /
                                                     static_cast<double>(total_attempts));
            }
        }
    }
    return out;
}

}  // namespace bitplan
