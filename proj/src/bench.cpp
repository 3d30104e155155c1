// SPDX-License-Identifier: BSD-3-Clause

#include "bitplan/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <thread>

#include "bitplan/rrtstar.hpp"

namespace bitplan {

PlannerKind parse_planner(std::string_view name) {
    if (name == "bitstar") return PlannerKind::bitstar;
    if (name == "rrtstar") return PlannerKind::rrtstar;
    throw std::invalid_argument("planner: unknown name '" + std::string(name) + "'");
}

std::string_view planner_name(PlannerKind kind) {
    return kind == PlannerKind::bitstar ? "bitstar" : "rrtstar";
}

PlanResult run_trial(const Scenario& scenario, PlannerKind kind, std::uint64_t seed,
                     PlannerObserver* observer) {
    if (kind == PlannerKind::bitstar) {
        return bitstar_plan(scenario.problem, scenario.world, scenario.bitstar, RngStream(seed), observer);
    }
    return rrtstar_plan(scenario.problem, scenario.world, scenario.rrtstar, RngStream(seed));
}

std::vector<ConvergenceSeries> run_trials(const Scenario& scenario, PlannerKind kind, std::size_t n,
                                          std::uint64_t base_seed, std::size_t jobs) {
    if (n == 0) throw std::invalid_argument("trials: must be at least 1");
    std::vector<ConvergenceSeries> out(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t k = next++; k < n; k = next++) {
            const std::uint64_t seed = base_seed + k;
            try {
                PlanResult r = run_trial(scenario, kind, seed);
                out[k] = ConvergenceSeries{kind, seed, std::move(r.convergence), r.sampler_starved};
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };
    const std::size_t threads = std::clamp<std::size_t>(jobs, 1, n);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    }

    for (std::size_t k = 0; k < n; ++k) {
        if (!errors[k]) continue;
        const std::string where = std::string(planner_name(kind)) + " seed " + std::to_string(base_seed + k);
        try {
            std::rethrow_exception(errors[k]);
        } catch (const std::exception& e) {
            throw std::runtime_error(where + ": " + e.what());
        } catch (...) {
            throw std::runtime_error(where + ": unknown error");
        }
    }
    return out;
}

Cost cost_at(const std::vector<ConvergencePoint>& points, double t) {
    auto it = std::upper_bound(points.begin(), points.end(), t,
                               [](double value, const ConvergencePoint& p) { return value < p.elapsed; });
    if (it == points.begin()) return kInfiniteCost;
    return std::prev(it)->cost;
}

namespace {

Cost median_of(std::vector<Cost> v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

}  // namespace

AggregateTable aggregate(const std::vector<ConvergenceSeries>& series, double step, double horizon) {
    if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("grid_step: must be positive");
    AggregateTable table;
    if (!(horizon >= 0.0)) return table;
    const double slack = step * 1e-9;
    for (std::size_t k = 0;; ++k) {
        const double t = static_cast<double>(k) * step;
        if (t > horizon + slack) break;
        std::vector<Cost> defined;
        for (const ConvergenceSeries& s : series) {
            const Cost c = cost_at(s.points, t);
            if (std::isfinite(c)) defined.push_back(c);
        }
        AggregateRow row;
        row.t = t;
        row.n_solved = defined.size();
        row.median = median_of(defined);
        if (defined.empty()) {
            row.mean = std::numeric_limits<double>::quiet_NaN();
        } else {
            double sum = 0.0;
            for (Cost c : defined) sum += c;
            row.mean = sum / static_cast<double>(defined.size());
        }
        table.rows.push_back(row);
    }
    return table;
}

Cost median_final_cost(const std::vector<ConvergenceSeries>& series) {
    std::vector<Cost> finals;
    for (const ConvergenceSeries& s : series) {
        if (std::isfinite(s.final_cost())) finals.push_back(s.final_cost());
    }
    return median_of(std::move(finals));
}

std::string format_fixed(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

namespace {

void write_text(const std::filesystem::path& out, const std::string& text) {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + out.string() + "'");
    f << text;
    if (!f) throw std::runtime_error("write failed for '" + out.string() + "'");
}

}  // namespace

void write_series_csv(const std::vector<ConvergencePoint>& points, const std::filesystem::path& out) {
    std::string text = "elapsed_s,cost\n";
    for (const ConvergencePoint& p : points) text += format_fixed(p.elapsed) + "," + format_fixed(p.cost) + "\n";
    write_text(out, text);
}

void write_trial_csv(const std::vector<ConvergencePoint>& points, const std::filesystem::path& out) {
    std::string text = "elapsed_s,cost,batch,tree_vertices,samples_drawn\n";
    for (const ConvergencePoint& p : points) {
        text += format_fixed(p.elapsed) + "," + format_fixed(p.cost) + "," + std::to_string(p.batch) + "," +
                std::to_string(p.tree_vertices) + "," + std::to_string(p.samples_drawn) + "\n";
    }
    write_text(out, text);
}

void write_aggregate_csv(const AggregateTable& table, const std::filesystem::path& out) {
    std::string text = "t_s,n_solved,median_cost,mean_cost\n";
    for (const AggregateRow& r : table.rows) {
        text += format_fixed(r.t) + "," + std::to_string(r.n_solved) + "," + format_fixed(r.median) + "," +
                format_fixed(r.mean) + "\n";
    }
    write_text(out, text);
}

}  // namespace bitplan
