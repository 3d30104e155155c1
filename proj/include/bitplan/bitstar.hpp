// SPDX-License-Identifier: BSD-3-Clause
//
// Batch Informed Trees (BIT*): batched informed sampling, lazy edge
// evaluation ordered by heuristic queues, and informed pruning.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "bitplan/planning.hpp"
#include "bitplan/queues.hpp"
#include "bitplan/space.hpp"
#include "bitplan/tree.hpp"
#include "bitplan/world.hpp"

namespace bitplan {

struct PlannerParams {
    std::size_t batch_size = 100;  // m
    Cost radius = 1.0;             // rho, constant
    StopCondition stop;

    void validate() const;
};

/// Indices of `candidates` within straight-line distance `radius` of x
/// (boundary included), in input order.
[[nodiscard]] std::vector<std::size_t> near(const State& x, std::span<const State> candidates,
                                            Cost radius);

/// Everything threaded through one planner run.
struct PlannerContext {
    explicit PlannerContext(State root) : tree(std::move(root)) {}

    Tree tree;
    VertexQueue qv;
    EdgeQueue qe;

    /// Every state the run has seen, indexed by SampleId.
    std::vector<State> samples;
    /// Tree vertex currently holding each sample, if connected.
    std::vector<std::optional<VertexId>> sample_vertex;
    /// Sample behind each vertex id (indexed by vertex id, including dead ones).
    std::vector<SampleId> vertex_sample;

    std::set<SampleId> x_ncon;
    std::set<SampleId> x_new;
    std::set<VertexId> v_exp;
    std::set<VertexId> v_rewire;
    std::set<VertexId> v_sol;
    Cost c_sol = kInfiniteCost;

    std::size_t batch = 0;
    std::uint64_t samples_drawn = 0;
    std::uint64_t sample_attempts = 0;
    WorkCounters work;

    [[nodiscard]] const State& state_of(SampleId s) const { return samples[static_cast<std::size_t>(s)]; }
    [[nodiscard]] std::optional<VertexId> vertex_of(SampleId s) const {
        return sample_vertex[static_cast<std::size_t>(s)];
    }
    [[nodiscard]] SampleId sample_of(VertexId v) const { return vertex_sample[index(v)]; }

    /// Registers a new unconnected state and returns its id.
    SampleId add_sample(State x);
    /// Connects an unconnected sample to the tree under `parent`.
    VertexId connect(SampleId s, VertexId parent, Cost edge_cost);
    /// min over v_sol of g_T, or infinity.
    [[nodiscard]] Cost best_solution_cost() const;
    [[nodiscard]] std::optional<VertexId> best_solution_vertex() const;
};

/// What the main loop did on one iteration.
enum class StepKind { new_batch, expand_vertex, expand_edge };

/// Optional hooks into a planning run. Default implementations do nothing.
class PlannerObserver {
public:
    virtual ~PlannerObserver() = default;
    /// Called before the branch is taken, with the queue values it was chosen on.
    virtual void on_step(StepKind, Cost /*qv_best*/, Cost /*qe_best*/, const PlannerContext&) {}
    /// Both queues are empty and a new batch is about to start (or planning is
    /// about to stop at a batch limit).
    virtual void on_batch_end(const PlannerContext&) {}
    virtual void after_prune(const PlannerContext&) {}
};

class BitStarPlanner {
public:
    /// Validates the problem against the world and builds the initial context
    /// (tree = {root}, Q_V = {root}, X_ncon = X_new = X_goal).
    BitStarPlanner(const ProblemDef& problem, const World& world, PlannerParams params,
                   RngStream rng);

    /// Runs until the stop condition holds and returns the incumbent.
    PlanResult plan(PlannerObserver* observer = nullptr);

    /// Prunes, draws a batch, and refills Q_V with every tree vertex.
    void start_new_batch();
    /// Removes states that cannot improve the incumbent; returns X_reuse.
    std::vector<SampleId> prune();
    void expand_vertex();
    void expand_edge();

    [[nodiscard]] PlannerContext& context() noexcept { return ctx_; }
    [[nodiscard]] const PlannerContext& context() const noexcept { return ctx_; }
    [[nodiscard]] const ProblemDef& problem() const noexcept { return problem_; }
    [[nodiscard]] const PlannerParams& params() const noexcept { return params_; }

    [[nodiscard]] Cost vertex_key(VertexId v) const;
    [[nodiscard]] Cost h_hat_of(SampleId s) const { return h_hat(ctx_.state_of(s), problem_); }
    [[nodiscard]] Cost g_hat_of(SampleId s) const { return g_hat(ctx_.state_of(s), problem_); }

    /// Incumbent path and cost, or no path.
    [[nodiscard]] PlanResult current_result() const;

private:
    void push_vertex(VertexId v);
    void push_edge(VertexId source, SampleId target);
    [[nodiscard]] Cost distance(const State& a, const State& b);
    [[nodiscard]] Cost true_cost(const State& a, const State& b);
    [[nodiscard]] bool in_goal_region(SampleId s) const;

    ProblemDef problem_;
    const World& world_;
    PlannerParams params_;
    RngStream rng_;
    PlannerContext ctx_;
    PlannerObserver* observer_ = nullptr;
};

/// Convenience wrapper: construct and plan.
[[nodiscard]] PlanResult bitstar_plan(const ProblemDef& problem, const World& world,
                                      const PlannerParams& params, RngStream rng,
                                      PlannerObserver* observer = nullptr);

}  // namespace bitplan
