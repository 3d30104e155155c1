// SPDX-License-Identifier: BSD-3-Clause
//
// bitplan: run BIT* / RRT* on a scenario, benchmark them, or render the demo.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bitplan/bench.hpp"
#include "bitplan/bitstar.hpp"
#include "bitplan/scenario.hpp"
#include "bitplan/svg.hpp"

namespace fs = std::filesystem;
using namespace bitplan;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonOptions {
    std::string scenario = "demo";
    std::optional<std::uint64_t> seed;
    std::optional<double> time_budget;
    std::optional<std::size_t> max_batches;
    std::optional<double> target_cost;
    std::string clock;
};

void add_common(CLI::App& cmd, CommonOptions& o) {
    cmd.add_option("--scenario", o.scenario, "Scenario file, or 'demo' for the built-in world");
    cmd.add_option("--seed", o.seed, "Seed (bench: base seed); defaults to the scenario's");
    cmd.add_option("--time-budget", o.time_budget, "Planning time per trial in seconds")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--max-batches", o.max_batches, "Sampled batches after the initial one");
    cmd.add_option("--target-cost", o.target_cost, "Stop once the incumbent reaches this cost")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--clock", o.clock, "wall or work")->check(CLI::IsMember({"wall", "work"}));
}

Scenario load(const CommonOptions& o) {
    Scenario s = resolve_scenario(o.scenario);
    StopCondition stop = s.bitstar.stop;
    if (o.time_budget || o.max_batches) {
        stop.time_budget = o.time_budget;
        stop.max_batches = o.max_batches;
    }
    if (o.target_cost) stop.target_cost = o.target_cost;
    if (!o.clock.empty()) stop.clock = o.clock == "work" ? ClockMode::work : ClockMode::wall;
    s.set_stop(stop);
    return s;
}

PlannerKind planner_arg(const std::string& name) {
    try {
        return parse_planner(name);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

class SnapshotWriter : public PlannerObserver {
public:
    SnapshotWriter(const Scenario& s, fs::path dir) : scenario_(s), dir_(std::move(dir)) {}

    void on_batch_end(const PlannerContext& ctx) override {
        if (last_ && *last_ == ctx.batch) return;
        last_ = ctx.batch;
        char name[32];
        std::snprintf(name, sizeof name, "batch_%03zu.svg", ctx.batch);
        write_svg(scenario_.world, take_snapshot(ctx, scenario_.problem), dir_ / name);
    }

    void finish(const PlannerContext& ctx) {
        SceneSnapshot snap = take_snapshot(ctx, scenario_.problem);
        snap.title = "final";
        write_svg(scenario_.world, snap, dir_ / "final.svg");
    }

private:
    const Scenario& scenario_;
    fs::path dir_;
    std::optional<std::size_t> last_;
};

void print_summary(const PlanResult& r, PlannerKind kind, std::uint64_t seed) {
    std::cout << planner_name(kind) << " seed " << seed << ": cost " << format_fixed(r.cost);
    if (!r.convergence.empty()) {
        const ConvergencePoint& last = r.convergence.back();
        std::cout << ", elapsed " << format_fixed(last.elapsed) << " s, " << last.tree_vertices
                  << " vertices, " << last.samples_drawn << " samples";
    }
    if (r.sampler_starved) std::cout << " (informed sampler starved)";
    std::cout << "\n";
}

PlanResult run_with_snapshots(const Scenario& s, std::uint64_t seed, const fs::path& dir) {
    fs::create_directories(dir);
    SnapshotWriter writer(s, dir);
    BitStarPlanner planner(s.problem, s.world, s.bitstar, RngStream(seed));
    PlanResult r = planner.plan(&writer);
    writer.finish(planner.context());
    return r;
}

int cmd_plan(const CommonOptions& o, const std::string& planner, const std::string& out,
             const std::string& svg_dir) {
    const PlannerKind kind = planner_arg(planner);
    if (!svg_dir.empty() && kind != PlannerKind::bitstar)
        throw UsageError("--svg-dir is only supported for bitstar");
    const Scenario s = load(o);
    const std::uint64_t seed = o.seed.value_or(s.seed);
    const PlanResult r = svg_dir.empty() ? run_trial(s, kind, seed) : run_with_snapshots(s, seed, svg_dir);
    if (const fs::path parent = fs::path(out).parent_path(); !parent.empty()) fs::create_directories(parent);
    write_trial_csv(r.convergence, out);
    print_summary(r, kind, seed);
    return 0;
}

int cmd_bench(const CommonOptions& o, const std::string& planner, std::optional<std::size_t> trials,
              const std::string& out, double grid_step, std::size_t jobs) {
    std::vector<PlannerKind> kinds;
    if (planner == "all") {
        kinds = {PlannerKind::bitstar, PlannerKind::rrtstar};
    } else {
        kinds = {planner_arg(planner)};
    }
    const Scenario s = load(o);
    const std::size_t n = trials.value_or(s.trials);
    if (n == 0) throw UsageError("--trials must be at least 1");
    const std::uint64_t base = o.seed.value_or(s.seed);
    fs::create_directories(out);

    std::vector<std::vector<ConvergenceSeries>> results;
    double horizon = s.bitstar.stop.time_budget.value_or(0.0);
    for (PlannerKind kind : kinds) {
        results.push_back(run_trials(s, kind, n, base, jobs));
        if (!s.bitstar.stop.time_budget) {
            for (const ConvergenceSeries& series : results.back()) {
                if (!series.points.empty()) horizon = std::max(horizon, series.points.back().elapsed);
            }
        }
    }
    for (std::size_t i = 0; i < kinds.size(); ++i) {
        const std::string name(planner_name(kinds[i]));
        for (const ConvergenceSeries& series : results[i]) {
            write_trial_csv(series.points, fs::path(out) / (name + "_seed" + std::to_string(series.seed) + ".csv"));
        }
        write_aggregate_csv(aggregate(results[i], grid_step, horizon), fs::path(out) / (name + "_aggregate.csv"));
        std::size_t solved = 0;
        for (const ConvergenceSeries& series : results[i]) solved += std::isfinite(series.final_cost()) ? 1 : 0;
        std::cout << name << ": " << solved << "/" << n << " solved, median final cost "
                  << format_fixed(median_final_cost(results[i])) << "\n";
    }
    return 0;
}

int cmd_demo(const CommonOptions& o, const std::string& out) {
    const Scenario s = load(o);
    const std::uint64_t seed = o.seed.value_or(s.seed);
    const PlanResult r = run_with_snapshots(s, seed, out);
    write_trial_csv(r.convergence, fs::path(out) / "convergence.csv");
    print_summary(r, PlannerKind::bitstar, seed);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Batch Informed Trees and RRT* on 2D worlds"};
    app.require_subcommand(1);

    CommonOptions plan_opts;
    std::string plan_planner = "bitstar", plan_out = "run.csv", plan_svg;
    CLI::App* plan = app.add_subcommand("plan", "Run one trial and write its convergence CSV");
    add_common(*plan, plan_opts);
    plan->add_option("--planner", plan_planner, "bitstar or rrtstar");
    plan->add_option("--out", plan_out, "Convergence CSV path");
    plan->add_option("--svg-dir", plan_svg, "Write one SVG per batch here (bitstar only)");

    CommonOptions bench_opts;
    std::string bench_planner = "all", bench_out = "bench";
    std::optional<std::size_t> bench_trials;
    double grid_step = 0.01;
    std::size_t jobs = 1;
    CLI::App* bench = app.add_subcommand("bench", "Run seeded trials and aggregate convergence");
    add_common(*bench, bench_opts);
    bench->add_option("--planner", bench_planner, "bitstar, rrtstar or all");
    bench->add_option("--trials", bench_trials, "Number of trials per planner");
    bench->add_option("--out", bench_out, "Output directory");
    bench->add_option("--grid-step", grid_step, "Aggregation grid step in seconds")->check(CLI::PositiveNumber);
    bench->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

    CommonOptions demo_opts;
    std::string demo_out = "demo";
    CLI::App* demo = app.add_subcommand("demo", "Render per-batch SVG snapshots of a BIT* run");
    add_common(*demo, demo_opts);
    demo->add_option("--out", demo_out, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (plan->parsed()) return cmd_plan(plan_opts, plan_planner, plan_out, plan_svg);
        if (bench->parsed()) return cmd_bench(bench_opts, bench_planner, bench_trials, bench_out, grid_step, jobs);
        return cmd_demo(demo_opts, demo_out);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
