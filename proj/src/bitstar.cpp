// SPDX-License-Identifier: BSD-3-Clause

#include "bitplan/bitstar.hpp"

#include <algorithm>
#include <stdexcept>

namespace bitplan {

void PlannerParams::validate() const {
    if (batch_size == 0) throw std::invalid_argument("batch_size: must be positive");
    if (!(radius > 0.0)) throw std::invalid_argument("rho: must be positive");
    stop.validate();
}

std::vector<std::size_t> near(const State& x, std::span<const State> candidates, Cost radius) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (c_hat(x, candidates[i]) <= radius) out.push_back(i);
    }
    return out;
}

SampleId PlannerContext::add_sample(State x) {
    const SampleId id{static_cast<std::uint32_t>(samples.size())};
    samples.push_back(std::move(x));
    sample_vertex.push_back(std::nullopt);
    return id;
}

VertexId PlannerContext::connect(SampleId s, VertexId parent, Cost edge_cost) {
    const VertexId v = tree.add_child(parent, state_of(s), edge_cost);
    sample_vertex[static_cast<std::size_t>(s)] = v;
    if (vertex_sample.size() <= index(v)) vertex_sample.resize(index(v) + 1, SampleId{0});
    vertex_sample[index(v)] = s;
    return v;
}

Cost PlannerContext::best_solution_cost() const {
    Cost best = kInfiniteCost;
    for (VertexId v : v_sol) best = std::min(best, tree.g_t(v));
    return best;
}

std::optional<VertexId> PlannerContext::best_solution_vertex() const {
    std::optional<VertexId> best;
    for (VertexId v : v_sol) {
        if (!best || tree.g_t(v) < tree.g_t(*best)) best = v;
    }
    return best;
}

namespace {

void require_free(const World& world, const State& x, const char* field) {
    if (x.dimension() != world.bounds().dimension())
        throw std::invalid_argument(std::string(field) + ": dimension does not match the world");
    if (!world.is_free(x)) throw std::invalid_argument(std::string(field) + ": not in free space");
}

}  // namespace

BitStarPlanner::BitStarPlanner(const ProblemDef& problem, const World& world, PlannerParams params,
                               RngStream rng)
    : problem_(problem), world_(world), params_(std::move(params)), rng_(rng), ctx_(problem.root) {
    problem_.validate();
    params_.validate();
    require_free(world_, problem_.root, "root");
    for (const State& g : problem_.goal_samples) require_free(world_, g, "goal_samples");

    ctx_.samples.push_back(problem_.root);
    ctx_.sample_vertex.push_back(ctx_.tree.root());
    ctx_.vertex_sample.push_back(SampleId{0});

    for (const State& g : problem_.goal_samples) {
        const SampleId s = ctx_.add_sample(g);
        ctx_.x_ncon.insert(s);
        ctx_.x_new.insert(s);
    }
    if (problem_.goal_region.contains(problem_.root)) ctx_.v_sol.insert(ctx_.tree.root());
    ctx_.c_sol = ctx_.best_solution_cost();
    push_vertex(ctx_.tree.root());
}

Cost BitStarPlanner::distance(const State& a, const State& b) {
    ++ctx_.work.distance_evals;
    return c_hat(a, b);
}

Cost BitStarPlanner::true_cost(const State& a, const State& b) {
    ctx_.work.collision_points += world_.check_count(c_hat(a, b));
    return world_.true_cost(a, b);
}

bool BitStarPlanner::in_goal_region(SampleId s) const {
    return problem_.goal_region.contains(ctx_.state_of(s));
}

Cost BitStarPlanner::vertex_key(VertexId v) const {
    return ctx_.tree.g_t(v) + h_hat(ctx_.tree.state(v), problem_);
}

void BitStarPlanner::push_vertex(VertexId v) {
    const Cost g = ctx_.tree.g_t(v);
    ctx_.qv.insert(VertexQueueEntry{v, g + h_hat(ctx_.tree.state(v), problem_), g});
}

void BitStarPlanner::push_edge(VertexId source, SampleId target) {
    const Cost g = ctx_.tree.g_t(source);
    const Cost through = g + c_hat(ctx_.tree.state(source), ctx_.state_of(target));
    ctx_.qe.insert(EdgeQueueEntry{source, target, through + h_hat_of(target), through});
}

std::vector<SampleId> BitStarPlanner::prune() {
    std::vector<SampleId> reuse;
    const Cost c_sol = ctx_.c_sol;
    if (c_sol == kInfiniteCost) return reuse;

    std::erase_if(ctx_.x_ncon, [&](SampleId s) { return g_hat_of(s) + h_hat_of(s) >= c_sol; });

    // Root-first sweep. A vertex failing the test takes its whole subtree with
    // it; every removed state is classified for reuse on its own.
    std::vector<VertexId> frontier{ctx_.tree.root()};
    while (!frontier.empty()) {
        const VertexId u = frontier.back();
        frontier.pop_back();
        const std::vector<VertexId> kids = ctx_.tree.children(u);
        for (VertexId c : kids) {
            if (vertex_key(c) <= c_sol) {
                frontier.push_back(c);
                continue;
            }
            for (auto& [vid, state] : ctx_.tree.remove_subtree(c)) {
                ctx_.v_exp.erase(vid);
                ctx_.v_rewire.erase(vid);
                ctx_.v_sol.erase(vid);
                const SampleId s = ctx_.sample_of(vid);
                ctx_.sample_vertex[static_cast<std::size_t>(s)].reset();
                if (g_hat(state, problem_) + h_hat(state, problem_) < c_sol) reuse.push_back(s);
            }
        }
    }
    return reuse;
}

void BitStarPlanner::start_new_batch() {
    const std::vector<SampleId> reuse = prune();
    if (observer_) observer_->after_prune(ctx_);

    std::uint64_t attempts = 0;
    std::vector<State> fresh;
    try {
        fresh = sample_batch(params_.batch_size, problem_, world_, ctx_.c_sol, rng_, &attempts);
    } catch (const SamplerStarved&) {
        ctx_.sample_attempts += attempts;
        ctx_.work.collision_points += attempts;
        throw;
    }
    ctx_.sample_attempts += attempts;
    ctx_.work.collision_points += attempts;

    ctx_.x_new.clear();
    for (State& x : fresh) {
        const SampleId s = ctx_.add_sample(std::move(x));
        ctx_.x_new.insert(s);
        ctx_.x_ncon.insert(s);
    }
    ctx_.x_ncon.insert(reuse.begin(), reuse.end());
    ctx_.samples_drawn += fresh.size();

    ctx_.qv.clear();
    ctx_.tree.for_each_vertex([&](VertexId v) { push_vertex(v); });
    ++ctx_.batch;
}

void BitStarPlanner::expand_vertex() {
    const VertexId vb = ctx_.qv.pop_best().vertex;
    if (!ctx_.tree.contains(vb)) return;
    const State& xb = ctx_.tree.state(vb);
    const Cost g_hat_vb = g_hat(xb, problem_);
    const Cost c_sol = ctx_.c_sol;

    auto consider_sample = [&](SampleId s) {
        const Cost d = distance(xb, ctx_.state_of(s));
        if (d <= params_.radius && g_hat_vb + d + h_hat_of(s) < c_sol) push_edge(vb, s);
    };
    if (ctx_.v_exp.insert(vb).second) {
        for (SampleId s : ctx_.x_ncon) consider_sample(s);
    } else {
        for (SampleId s : ctx_.x_new) {
            if (ctx_.x_ncon.contains(s)) consider_sample(s);
        }
    }

    if (!ctx_.v_rewire.contains(vb) && c_sol < kInfiniteCost) {
        ctx_.v_rewire.insert(vb);
        ctx_.tree.for_each_vertex([&](VertexId w) {
            if (w == vb) return;
            const State& xw = ctx_.tree.state(w);
            const Cost d = distance(xb, xw);
            if (d > params_.radius) return;
            if (ctx_.tree.par(w) == vb) return;
            if (g_hat_vb + d < ctx_.tree.g_t(w) && g_hat_vb + d + h_hat(xw, problem_) < c_sol)
                push_edge(vb, ctx_.sample_of(w));
        });
    }
}

void BitStarPlanner::expand_edge() {
    const EdgeQueueEntry edge = ctx_.qe.pop_best();
    const VertexId vb = edge.source;
    const SampleId xb = edge.target;
    if (!ctx_.tree.contains(vb)) return;

    const State& source = ctx_.tree.state(vb);
    const State& target = ctx_.state_of(xb);
    const Cost g_vb = ctx_.tree.g_t(vb);
    const Cost c_hat_edge = distance(source, target);
    const Cost h_xb = h_hat_of(xb);

    if (g_vb + c_hat_edge + h_xb >= ctx_.c_sol) {
        ctx_.qe.clear();
        ctx_.qv.clear();
        return;
    }

    if (ctx_.x_ncon.contains(xb)) {
        const Cost c = true_cost(source, target);
        if (g_vb + c + h_xb < ctx_.c_sol) {
            ctx_.x_ncon.erase(xb);
            const VertexId v = ctx_.connect(xb, vb, c);
            push_vertex(v);
            if (in_goal_region(xb)) {
                ctx_.v_sol.insert(v);
                ctx_.c_sol = ctx_.best_solution_cost();
            }
        }
        return;
    }

    const std::optional<VertexId> w = ctx_.vertex_of(xb);
    if (!w) return;
    const Cost g_w = ctx_.tree.g_t(*w);
    if (g_vb + c_hat_edge < g_w) {
        const Cost c = true_cost(source, target);
        if (g_vb + c + h_xb < ctx_.c_sol && g_vb + c < g_w) {
            ctx_.tree.rewire(*w, vb, c);
            ctx_.c_sol = ctx_.best_solution_cost();
        }
    }
}

PlanResult BitStarPlanner::current_result() const {
    PlanResult r;
    r.cost = ctx_.c_sol;
    if (const auto v = ctx_.best_solution_vertex()) r.path = ctx_.tree.solution(*v);
    return r;
}

PlanResult BitStarPlanner::plan(PlannerObserver* observer) {
    observer_ = observer;
    const StopCondition& stop = params_.stop;
    const PlanningClock clock(stop.clock);
    std::vector<ConvergencePoint> trace;
    bool starved = false;

    auto point = [&] {
        return ConvergencePoint{clock.elapsed(ctx_.work), ctx_.c_sol, ctx_.batch, ctx_.tree.size(),
                                ctx_.samples_drawn};
    };
    Cost recorded = kInfiniteCost;
    if (ctx_.c_sol < kInfiniteCost) {
        record_convergence(trace, point());
        recorded = ctx_.c_sol;
    }
    // Nothing in the informed set can beat a solution at this cost.
    const Cost lower_bound = h_hat(problem_.root, problem_);

    for (;;) {
        if (stop.target_cost && ctx_.c_sol <= *stop.target_cost) break;
        if (stop.time_budget && clock.elapsed(ctx_.work) >= *stop.time_budget) break;

        const Cost qv_best = ctx_.qv.best_value();
        const Cost qe_best = ctx_.qe.best_value();
        if (ctx_.qv.empty() && ctx_.qe.empty()) {
            if (observer_) observer_->on_batch_end(ctx_);
            if (stop.max_batches && ctx_.batch >= *stop.max_batches) break;
            if (ctx_.c_sol <= lower_bound) break;
            if (observer_) observer_->on_step(StepKind::new_batch, qv_best, qe_best, ctx_);
            try {
                start_new_batch();
            } catch (const SamplerStarved&) {
                starved = true;
                break;
            }
        } else if (qv_best <= qe_best) {
            if (observer_) observer_->on_step(StepKind::expand_vertex, qv_best, qe_best, ctx_);
            expand_vertex();
        } else {
            if (observer_) observer_->on_step(StepKind::expand_edge, qv_best, qe_best, ctx_);
            expand_edge();
        }

        if (ctx_.c_sol < recorded) {
            record_convergence(trace, point());
            recorded = ctx_.c_sol;
        }
    }
    record_convergence(trace, point());
    observer_ = nullptr;

    PlanResult result = current_result();
    result.convergence = std::move(trace);
    result.sampler_starved = starved;
    return result;
}

PlanResult bitstar_plan(const ProblemDef& problem, const World& world, const PlannerParams& params,
                        RngStream rng, PlannerObserver* observer) {
    BitStarPlanner planner(problem, world, params, rng);
    return planner.plan(observer);
}

}  // namespace bitplan
