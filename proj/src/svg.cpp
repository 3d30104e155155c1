// SPDX-License-Identifier: BSD-3-Clause

#include "bitplan/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace bitplan {

double InformedEllipse::semi_minor() const {
    const double focal = c_hat(focus_a, focus_b);
    return 0.5 * std::sqrt(std::max(0.0, transverse * transverse - focal * focal));
}

SceneSnapshot take_snapshot(const PlannerContext& ctx, const ProblemDef& problem) {
    SceneSnapshot s;
    ctx.tree.for_each_vertex([&](VertexId v) {
        if (const auto p = ctx.tree.par(v)) s.tree_edges.emplace_back(ctx.tree.state(*p), ctx.tree.state(v));
    });
    for (SampleId id : ctx.x_ncon) s.samples.push_back(ctx.state_of(id));
    if (const auto best = ctx.best_solution_vertex()) s.path = ctx.tree.solution(*best);
    if (ctx.c_sol < kInfiniteCost) {
        // g_hat + h_hat < c_sol with h_hat measured to the region boundary.
        s.ellipse = InformedEllipse{problem.root, problem.goal_region.center,
                                    ctx.c_sol + problem.goal_region.radius};
    }
    s.root = problem.root;
    s.goal = problem.goal_region;
    s.title = "batch " + std::to_string(ctx.batch);
    return s;
}

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    std::string out(buf);
    if (out == "-0.0000") out = "0.0000";
    return out;
}

std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_svg(const World& world, const SceneSnapshot& scene) {
    const Bounds& b = world.bounds();
    if (b.dimension() < 2) throw std::invalid_argument("render_svg: world must have at least two axes");
    const double x0 = b.min[0], y0 = b.min[1], x1 = b.max[0], y1 = b.max[1];
    const double w = x1 - x0, h = y1 - y0;
    const double stroke = 0.002 * std::max(w, h);
    const double dot = 2.0 * stroke;

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"" +
           num(800.0 * h / w) + "\" viewBox=\"" + num(x0) + " " + num(-y1) + " " + num(w) + " " +
           num(h) + "\">\n";
    if (!scene.title.empty()) out += "<title>" + escape(scene.title) + "</title>\n";
    // World y grows upward.
    out += "<g transform=\"scale(1,-1)\">\n";
    out += "<rect class=\"frame\" x=\"" + num(x0) + "\" y=\"" + num(y0) + "\" width=\"" + num(w) +
           "\" height=\"" + num(h) + "\" fill=\"white\" stroke=\"black\" stroke-width=\"" +
           num(2 * stroke) + "\"/>\n";

    out += "<g class=\"obstacles\" fill=\"#444444\">\n";
    if (const auto& grid = world.grid()) {
        const double mpc = grid->meters_per_cell();
        for (std::size_t row = 0; row < grid->height(); ++row) {
            std::size_t col = 0;
            while (col < grid->width()) {
                if (!grid->blocked(col, row)) {
                    ++col;
                    continue;
                }
                const std::size_t start = col;
                while (col < grid->width() && grid->blocked(col, row)) ++col;
                out += "<rect x=\"" + num(grid->origin()[0] + static_cast<double>(start) * mpc) +
                       "\" y=\"" + num(grid->origin()[1] + static_cast<double>(row) * mpc) +
                       "\" width=\"" + num(static_cast<double>(col - start) * mpc) + "\" height=\"" +
                       num(mpc) + "\"/>\n";
            }
        }
    }
    for (const Obstacle& o : world.obstacles()) {
        if (const auto* c = std::get_if<CircleObstacle>(&o)) {
            out += "<circle cx=\"" + num(c->center[0]) + "\" cy=\"" + num(c->center[1]) + "\" r=\"" +
                   num(c->radius) + "\"/>\n";
        } else {
            const auto& r = std::get<BoxObstacle>(o);
            out += "<rect x=\"" + num(r.min[0]) + "\" y=\"" + num(r.min[1]) + "\" width=\"" +
                   num(r.max[0] - r.min[0]) + "\" height=\"" + num(r.max[1] - r.min[1]) + "\"/>\n";
        }
    }
    out += "</g>\n";

    if (scene.ellipse) {
        const InformedEllipse& e = *scene.ellipse;
        const double cx = 0.5 * (e.focus_a[0] + e.focus_b[0]);
        const double cy = 0.5 * (e.focus_a[1] + e.focus_b[1]);
        const double angle =
            std::atan2(e.focus_b[1] - e.focus_a[1], e.focus_b[0] - e.focus_a[0]) * 180.0 / std::numbers::pi;
        out += "<ellipse class=\"informed\" cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" rx=\"" +
               num(e.semi_major()) + "\" ry=\"" + num(e.semi_minor()) + "\" transform=\"rotate(" +
               num(angle) + " " + num(cx) + " " + num(cy) +
               ")\" fill=\"orange\" fill-opacity=\"0.1\" stroke=\"orange\" stroke-width=\"" +
               num(stroke) + "\"/>\n";
    }

    out += "<g class=\"tree\" stroke=\"#1f77b4\" stroke-width=\"" + num(stroke) + "\" fill=\"none\">\n";
    for (const auto& [from, to] : scene.tree_edges) {
        out += "<path d=\"M " + num(from[0]) + " " + num(from[1]) + " L " + num(to[0]) + " " +
               num(to[1]) + "\"/>\n";
    }
    out += "</g>\n";

    out += "<g class=\"samples\" fill=\"#888888\">\n";
    for (const State& s : scene.samples) {
        out += "<circle cx=\"" + num(s[0]) + "\" cy=\"" + num(s[1]) + "\" r=\"" + num(dot) + "\"/>\n";
    }
    out += "</g>\n";

    if (scene.path.size() >= 2) {
        out += "<polyline class=\"incumbent\" fill=\"none\" stroke=\"red\" stroke-width=\"" +
               num(3 * stroke) + "\" points=\"";
        for (std::size_t i = 0; i < scene.path.size(); ++i) {
            if (i) out += ' ';
            out += num(scene.path[i][0]) + "," + num(scene.path[i][1]);
        }
        out += "\"/>\n";
    }
    if (scene.goal) {
        out += "<circle class=\"goal\" cx=\"" + num(scene.goal->center[0]) + "\" cy=\"" +
               num(scene.goal->center[1]) + "\" r=\"" + num(std::max(scene.goal->radius, 2 * dot)) +
               "\" fill=\"none\" stroke=\"green\" stroke-width=\"" + num(stroke) + "\"/>\n";
    }
    if (scene.root) {
        out += "<circle class=\"root\" cx=\"" + num((*scene.root)[0]) + "\" cy=\"" +
               num((*scene.root)[1]) + "\" r=\"" + num(2 * dot) + "\" fill=\"black\"/>\n";
    }
    out += "</g>\n</svg>\n";
    return out;
}

void write_svg(const World& world, const SceneSnapshot& scene, const std::filesystem::path& out) {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + out.string() + "'");
    f << render_svg(world, scene);
    if (!f) throw std::runtime_error("write failed for '" + out.string() + "'");
}

}  // namespace bitplan
