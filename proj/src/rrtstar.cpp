// SPDX-License-Identifier: BSD-3-Clause

#include "bitplan/rrtstar.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bitplan/tree.hpp"

namespace bitplan {

void RrtParams::validate() const {
    if (!(steer_distance > 0.0)) throw std::invalid_argument("eta: must be positive");
    if (max_neighbors == 0) throw std::invalid_argument("alpha: must be positive");
    if (goal_period == 0) throw std::invalid_argument("target_period: must be positive");
    if (samples_per_batch == 0) throw std::invalid_argument("samples_per_batch: must be positive");
    stop.validate();
}

State steer(const State& from, const State& to, double eta) {
    if (!(eta > 0.0)) throw std::invalid_argument("steer: eta must be positive");
    const Cost d = c_hat(from, to);
    if (d <= eta) return to;
    std::vector<double> out(from.dimension());
    const double t = eta / d;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = from[i] + (to[i] - from[i]) * t;
    return State(std::move(out));
}

namespace {

class RrtStar {
public:
    RrtStar(const ProblemDef& problem, const World& world, const RrtParams& params, RngStream rng)
        : problem_(problem), world_(world), params_(params), rng_(rng), tree_(problem.root) {
        problem_.validate();
        params_.validate();
        if (problem_.root.dimension() != world_.bounds().dimension() || !world_.is_free(problem_.root))
            throw std::invalid_argument("root: not in free space");
        if (problem_.goal_region.contains(problem_.root)) v_sol_.insert(tree_.root());
        c_sol_ = best_solution_cost();
    }

    PlanResult run() {
        const StopCondition& stop = params_.stop;
        const PlanningClock clock(stop.clock);
        const Cost lower_bound = h_hat(problem_.root, problem_);
        std::vector<ConvergencePoint> trace;
        auto point = [&] {
            return ConvergencePoint{clock.elapsed(work_), c_sol_, samples_ / params_.samples_per_batch,
                                    tree_.size(), samples_};
        };
        Cost recorded = kInfiniteCost;
        if (c_sol_ < kInfiniteCost) {
            record_convergence(trace, point());
            recorded = c_sol_;
        }
        for (;;) {
            if (stop.target_cost && c_sol_ <= *stop.target_cost) break;
            if (stop.time_budget && clock.elapsed(work_) >= *stop.time_budget) break;
            if (stop.max_batches && samples_ >= *stop.max_batches * params_.samples_per_batch) break;
            if (c_sol_ <= lower_bound) break;

            iterate();
            if (c_sol_ < recorded) {
                record_convergence(trace, point());
                recorded = c_sol_;
            }
        }
        record_convergence(trace, point());

        PlanResult result;
        result.cost = c_sol_;
        if (const auto v = best_solution_vertex()) result.path = tree_.solution(*v);
        result.convergence = std::move(trace);
        return result;
    }

private:
    Cost distance(const State& a, const State& b) {
        ++work_.distance_evals;
        return c_hat(a, b);
    }

    Cost true_cost(const State& a, const State& b) {
        work_.collision_points += world_.check_count(c_hat(a, b));
        return world_.true_cost(a, b);
    }

    Cost best_solution_cost() const {
        Cost best = kInfiniteCost;
        for (VertexId v : v_sol_) best = std::min(best, tree_.g_t(v));
        return best;
    }

    std::optional<VertexId> best_solution_vertex() const {
        std::optional<VertexId> best;
        for (VertexId v : v_sol_) {
            if (!best || tree_.g_t(v) < tree_.g_t(*best)) best = v;
        }
        return best;
    }

    void iterate() {
        ++samples_;
        const State target = samples_ % params_.goal_period == 0 ? problem_.goal_region.center
                                                                 : rng_.uniform_in(problem_.bounds);

        // Nearest vertex and the candidate neighborhood of the steered point.
        VertexId nearest = tree_.root();
        Cost nearest_d = kInfiniteCost;
        tree_.for_each_vertex([&](VertexId v) {
            const Cost d = distance(tree_.state(v), target);
            if (d < nearest_d) {
                nearest_d = d;
                nearest = v;
            }
        });
        const State x_new = steer(tree_.state(nearest), target, params_.steer_distance);
        if (c_hat(tree_.state(nearest), x_new) == 0.0) return;
        ++work_.collision_points;
        if (!world_.is_free(x_new)) return;

        std::vector<std::pair<Cost, VertexId>> neighbors;
        tree_.for_each_vertex([&](VertexId v) {
            const Cost d = distance(tree_.state(v), x_new);
            if (d <= params_.steer_distance) neighbors.emplace_back(d, v);
        });
        std::sort(neighbors.begin(), neighbors.end(), [](const auto& a, const auto& b) {
            return a.first != b.first ? a.first < b.first : index(a.second) < index(b.second);
        });
        if (neighbors.size() > params_.max_neighbors) neighbors.resize(params_.max_neighbors);

        VertexId parent = nearest;
        Cost parent_edge = true_cost(tree_.state(nearest), x_new);
        if (parent_edge == kInfiniteCost) return;
        Cost best = tree_.g_t(nearest) + parent_edge;
        for (const auto& [d, v] : neighbors) {
            if (v == nearest || tree_.g_t(v) + d >= best) continue;
            const Cost c = true_cost(tree_.state(v), x_new);
            if (tree_.g_t(v) + c < best) {
                best = tree_.g_t(v) + c;
                parent = v;
                parent_edge = c;
            }
        }
        const VertexId added = tree_.add_child(parent, x_new, parent_edge);
        bool refresh = false;
        if (problem_.goal_region.contains(x_new)) {
            v_sol_.insert(added);
            refresh = true;
        }

        const Cost g_new = tree_.g_t(added);
        for (const auto& [d, v] : neighbors) {
            if (v == parent || g_new + d >= tree_.g_t(v)) continue;
            const Cost c = true_cost(x_new, tree_.state(v));
            if (c < kInfiniteCost && g_new + c < tree_.g_t(v)) {
                tree_.rewire(v, added, c);
                refresh = true;
            }
        }
        if (refresh) c_sol_ = best_solution_cost();
    }

    const ProblemDef& problem_;
    const World& world_;
    const RrtParams& params_;
    RngStream rng_;
    Tree tree_;
    std::set<VertexId> v_sol_;
    Cost c_sol_ = kInfiniteCost;
    std::uint64_t samples_ = 0;
    WorkCounters work_;
};

}  // namespace

PlanResult rrtstar_plan(const ProblemDef& problem, const World& world, const RrtParams& params,
                        RngStream rng) {
    return RrtStar(problem, world, params, rng).run();
}

}  // namespace bitplan
