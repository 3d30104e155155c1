// SPDX-License-Identifier: BSD-3-Clause

#include "bitplan/scenario.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace bitplan {

ScenarioError::ScenarioError(const std::string& source, std::size_t line, const std::string& field,
                             const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + field + ": " + what),
      field_(field),
      line_(line) {}

void Scenario::set_stop(const StopCondition& stop) {
    bitstar.stop = stop;
    rrtstar.stop = stop;
}

namespace {

constexpr std::string_view kDemoScenario = R"(# Three circular obstacles between a root at the bottom and a goal at the top.
name = demo
root = 0 -8
goal_center = 0 8
goal_radius = 0.5
goal_sample = 0 8
bounds_min = -10 -10
bounds_max = 10 10
checks_per_meter = 4
trials = 20
seed = 1

[world]
circle = 0 0 1.5
circle = -7 0 1.5
circle = 7 0 1.5

[bitstar]
batch_size = 100
rho = 8

[rrtstar]
eta = 8
alpha = 100
target_period = 50
samples_per_batch = 100

[stop]
max_batches = 10
clock = work
)";

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

struct Entry {
    std::string value;
    std::size_t line;
};

// Keys allowed per section, and whether they may repeat.
const std::map<std::string, std::map<std::string, bool>>& grammar() {
    static const std::map<std::string, std::map<std::string, bool>> g{
        {"",
         {{"name", false},
          {"root", false},
          {"goal_center", false},
          {"goal_radius", false},
          {"goal_sample", true},
          {"bounds_min", false},
          {"bounds_max", false},
          {"checks_per_meter", false},
          {"trials", false},
          {"seed", false}}},
        {"world",
         {{"circle", true},
          {"rect", true},
          {"grid", false},
          {"meters_per_cell", false},
          {"origin", false},
          {"threshold", false}}},
        {"bitstar", {{"batch_size", false}, {"rho", false}}},
        {"rrtstar",
         {{"eta", false}, {"alpha", false}, {"target_period", false}, {"samples_per_batch", false}}},
        {"stop",
         {{"time_budget", false}, {"max_batches", false}, {"target_cost", false}, {"clock", false}}},
    };
    return g;
}

class Parser {
public:
    Parser(std::string source, std::filesystem::path base_dir)
        : source_(std::move(source)), base_dir_(std::move(base_dir)) {}

    Scenario parse(std::string_view text) {
        read_entries(text);
        return build();
    }

private:
    [[noreturn]] void fail(std::size_t line, const std::string& field, const std::string& what) const {
        throw ScenarioError(source_, line, field, what);
    }

    void read_entries(std::string_view text) {
        std::string section;
        std::size_t line_no = 0;
        std::istringstream in{std::string(text)};
        for (std::string raw; std::getline(in, raw);) {
            ++line_no;
            const auto hash = raw.find('#');
            const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']') fail(line_no, "section", "unterminated section header");
                section = trim(std::string_view(line).substr(1, line.size() - 2));
                if (!grammar().contains(section)) fail(line_no, section, "unknown section");
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos) fail(line_no, line, "expected 'key = value'");
            const std::string key = trim(std::string_view(line).substr(0, eq));
            const std::string value = trim(std::string_view(line).substr(eq + 1));
            const auto& keys = grammar().at(section);
            const auto it = keys.find(key);
            if (it == keys.end())
                fail(line_no, key, section.empty() ? "unknown key" : "unknown key in [" + section + "]");
            auto& slot = entries_[qualified(section, key)];
            if (!it->second && !slot.empty()) fail(line_no, key, "duplicate key");
            if (value.empty()) fail(line_no, key, "missing value");
            slot.push_back(Entry{value, line_no});
        }
        last_line_ = line_no;
    }

    static std::string qualified(const std::string& section, const std::string& key) {
        return section.empty() ? key : section + "." + key;
    }

    static std::string bare(const std::string& qkey) {
        const auto dot = qkey.find('.');
        return dot == std::string::npos ? qkey : qkey.substr(dot + 1);
    }

    const Entry* find(const std::string& qkey) const {
        const auto it = entries_.find(qkey);
        return it == entries_.end() ? nullptr : &it->second.front();
    }

    const Entry& require(const std::string& qkey) const {
        const Entry* e = find(qkey);
        if (!e) fail(last_line_, bare(qkey), "required key is missing");
        return *e;
    }

    std::vector<double> numbers(const Entry& e, const std::string& field) const {
        std::vector<double> out;
        std::istringstream in(e.value);
        for (std::string tok; in >> tok;) {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(tok, &used);
            } catch (const std::exception&) {
                fail(e.line, field, "not a number: '" + tok + "'");
            }
            if (used != tok.size() || !std::isfinite(v)) fail(e.line, field, "not a number: '" + tok + "'");
            out.push_back(v);
        }
        return out;
    }

    double real(const Entry& e, const std::string& field) const {
        const auto v = numbers(e, field);
        if (v.size() != 1) fail(e.line, field, "expected a single number");
        return v.front();
    }

    double positive(const std::string& qkey, double fallback) const {
        const Entry* e = find(qkey);
        if (!e) return fallback;
        const double v = real(*e, bare(qkey));
        if (!(v > 0.0)) fail(e->line, bare(qkey), "must be positive");
        return v;
    }

    std::uint64_t integer(const Entry& e, const std::string& field, bool allow_zero) const {
        std::size_t used = 0;
        unsigned long long v = 0;
        try {
            if (!e.value.empty() && e.value.front() == '-') throw std::invalid_argument("negative");
            v = std::stoull(e.value, &used);
        } catch (const std::exception&) {
            fail(e.line, field, "not a non-negative integer: '" + e.value + "'");
        }
        if (used != e.value.size()) fail(e.line, field, "not a non-negative integer: '" + e.value + "'");
        if (!allow_zero && v == 0) fail(e.line, field, "must be positive");
        return v;
    }

    std::uint64_t integer_or(const std::string& qkey, std::uint64_t fallback, bool allow_zero) const {
        const Entry* e = find(qkey);
        return e ? integer(*e, bare(qkey), allow_zero) : fallback;
    }

    State state(const Entry& e, const std::string& field, std::size_t dim) const {
        auto v = numbers(e, field);
        if (dim != 0 && v.size() != dim)
            fail(e.line, field, "expected " + std::to_string(dim) + " coordinates");
        if (v.size() < 2) fail(e.line, field, "expected at least 2 coordinates");
        return State(std::move(v));
    }

    World build_world(std::size_t d, std::optional<Bounds>& bounds, double checks) const {
        const Entry* grid = find("world.grid");
        if (grid) {
            for (const char* k : {"world.circle", "world.rect"}) {
                if (const Entry* e = find(k)) fail(e->line, bare(k), "cannot be combined with grid");
            }
            if (const Entry* e = find("bounds_min")) fail(e->line, "bounds_min", "grid worlds take bounds from the grid");
            if (const Entry* e = find("bounds_max")) fail(e->line, "bounds_max", "grid worlds take bounds from the grid");
            if (d != 2) fail(grid->line, "grid", "occupancy grids are two-dimensional");
            const double mpc = positive("world.meters_per_cell", 0.0);
            if (mpc == 0.0) fail(last_line_, "meters_per_cell", "required key is missing");
            const State origin = state(require("world.origin"), "origin", 2);
            const std::uint64_t threshold = integer_or("world.threshold", 127, true);
            if (threshold > 255) fail(find("world.threshold")->line, "threshold", "must be at most 255");
            const std::filesystem::path path = base_dir_ / grid->value;
            if (!std::filesystem::exists(path)) fail(grid->line, "grid", "file not found: " + path.string());
            try {
                World w(load_occupancy_grid(path, mpc, origin, static_cast<int>(threshold)), checks);
                bounds = w.bounds();
                return w;
            } catch (const GridLoadError& err) {
                fail(grid->line, "grid", err.what());
            }
        }
        for (const char* k : {"world.meters_per_cell", "world.origin", "world.threshold"}) {
            if (const Entry* e = find(k)) fail(e->line, bare(k), "only valid with grid");
        }
        const Entry& lo = require("bounds_min");
        const Entry& hi = require("bounds_max");
        bounds = Bounds{state(lo, "bounds_min", d), state(hi, "bounds_max", d)};
        for (std::size_t i = 0; i < d; ++i) {
            if (!(bounds->min[i] < bounds->max[i])) fail(hi.line, "bounds_max", "must exceed bounds_min");
        }
        std::vector<Obstacle> obstacles;
        if (const auto it = entries_.find("world.circle"); it != entries_.end()) {
            for (const Entry& e : it->second) {
                auto v = numbers(e, "circle");
                if (v.size() != d + 1) fail(e.line, "circle", "expected center coordinates and radius");
                const double r = v.back();
                if (!(r > 0.0)) fail(e.line, "circle", "radius must be positive");
                v.pop_back();
                obstacles.emplace_back(CircleObstacle{State(std::move(v)), r});
            }
        }
        if (const auto it = entries_.find("world.rect"); it != entries_.end()) {
            for (const Entry& e : it->second) {
                const auto v = numbers(e, "rect");
                if (v.size() != 2 * d) fail(e.line, "rect", "expected min corner then max corner");
                State mn(std::vector<double>(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(d)));
                State mx(std::vector<double>(v.begin() + static_cast<std::ptrdiff_t>(d), v.end()));
                for (std::size_t i = 0; i < d; ++i) {
                    if (!(mn[i] < mx[i])) fail(e.line, "rect", "min corner must be below max corner");
                }
                obstacles.emplace_back(BoxObstacle{std::move(mn), std::move(mx)});
            }
        }
        return World(*bounds, std::move(obstacles), checks);
    }

    StopCondition build_stop() const {
        StopCondition stop;
        if (find("stop.time_budget")) stop.time_budget = positive("stop.time_budget", 0.0);
        if (const Entry* e = find("stop.max_batches")) stop.max_batches = integer(*e, "max_batches", true);
        if (find("stop.target_cost")) stop.target_cost = positive("stop.target_cost", 0.0);
        if (const Entry* e = find("stop.clock")) {
            if (e->value == "wall") stop.clock = ClockMode::wall;
            else if (e->value == "work") stop.clock = ClockMode::work;
            else fail(e->line, "clock", "expected 'wall' or 'work'");
        }
        if (!stop.bounded()) fail(last_line_, "stop", "set at least one of time_budget, max_batches, target_cost");
        return stop;
    }

    Scenario build() const {
        const Entry& root_e = require("root");
        const State root = state(root_e, "root", 0);
        const std::size_t d = root.dimension();
        const Entry& goal_e = require("goal_center");
        const State goal_center = state(goal_e, "goal_center", d);
        double goal_radius = 0.0;
        if (const Entry* e = find("goal_radius")) {
            goal_radius = real(*e, "goal_radius");
            if (goal_radius < 0.0) fail(e->line, "goal_radius", "must be non-negative");
        }
        const double checks = positive("checks_per_meter", kDefaultChecksPerMeter);

        std::optional<Bounds> bounds;
        World world = build_world(d, bounds, checks);

        ProblemDef problem{root, {}, GoalRegion{goal_center, goal_radius}, *bounds};
        if (const auto it = entries_.find("goal_sample"); it != entries_.end()) {
            for (const Entry& e : it->second) {
                State g = state(e, "goal_sample", d);
                if (!problem.goal_region.contains(g)) fail(e.line, "goal_sample", "outside the goal region");
                if (!world.is_free(g)) fail(e.line, "goal_sample", "not in free space");
                problem.goal_samples.push_back(std::move(g));
            }
        } else {
            if (!world.is_free(goal_center)) fail(goal_e.line, "goal_center", "not in free space");
            problem.goal_samples.push_back(goal_center);
        }
        if (!world.is_free(root)) fail(root_e.line, "root", "not in free space (or outside bounds)");

        Scenario sc{find("name") ? find("name")->value : std::string("unnamed"),
                    problem,
                    std::move(world),
                    {},
                    {},
                    integer_or("trials", 1, false),
                    integer_or("seed", 0, true)};

        sc.bitstar.batch_size = integer_or("bitstar.batch_size", 100, false);
        sc.bitstar.radius = positive("bitstar.rho", 1.0);
        sc.rrtstar.steer_distance = positive("rrtstar.eta", sc.bitstar.radius);
        sc.rrtstar.max_neighbors = integer_or("rrtstar.alpha", 100, false);
        sc.rrtstar.goal_period = integer_or("rrtstar.target_period", 50, false);
        sc.rrtstar.samples_per_batch = integer_or("rrtstar.samples_per_batch", sc.bitstar.batch_size, false);
        sc.set_stop(build_stop());
        try {
            sc.problem.validate();
        } catch (const std::invalid_argument& err) {
            fail(last_line_, "problem", err.what());
        }
        return sc;
    }

    std::string source_;
    std::filesystem::path base_dir_;
    std::map<std::string, std::vector<Entry>> entries_;
    std::size_t last_line_ = 0;
};

}  // namespace

Scenario parse_scenario(std::string_view text, const std::string& source,
                        const std::filesystem::path& base_dir) {
    return Parser(source, base_dir).parse(text);
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError(path.string(), 0, "path", "cannot open file");
    const std::string text(std::istreambuf_iterator<char>(in), {});
    return parse_scenario(text, path.string(), path.parent_path().empty() ? "." : path.parent_path());
}

std::string_view demo_scenario_text() { return kDemoScenario; }

Scenario resolve_scenario(const std::string& name_or_path) {
    if (name_or_path == "demo" && !std::filesystem::exists(name_or_path))
        return parse_scenario(kDemoScenario, "<demo>");
    return load_scenario(name_or_path);
}

}  // namespace bitplan
