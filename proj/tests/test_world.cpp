// SPDX-License-Identifier: BSD-3-Clause

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "bitplan/world.hpp"
#include "support.hpp"

using namespace bitplan;
using namespace bitplan::testing;

namespace {

// Distance from c to the segment [a, b].
double segment_distance(const State& a, const State& b, const State& c) {
    const double dx = b[0] - a[0], dy = b[1] - a[1];
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0 ? ((c[0] - a[0]) * dx + (c[1] - a[1]) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(a[0] + t * dx - c[0], a[1] + t * dy - c[1]);
}

}  // namespace

TEST_CASE("is_free on the demo world") {
    const World w = demo_world();
    CHECK_FALSE(w.is_free(State{0.0, 0.0}));
    CHECK(w.is_free(State{0.0, -8.0}));
    CHECK_FALSE(w.is_free(State{10.5, 0.0}));
    CHECK_FALSE(w.is_free(State{0.0, -10.0001}));
    CHECK(w.is_free(State{10.0, 10.0}));
    // Boundary of an obstacle counts as blocked.
    CHECK_FALSE(w.is_free(State{1.5, 0.0}));
    CHECK(w.is_free(State{1.5001, 0.0}));
}

TEST_CASE("box obstacles") {
    const World w(square(5.0), {BoxObstacle{State{-1.0, -1.0}, State{1.0, 2.0}}});
    CHECK_FALSE(w.is_free(State{0.0, 0.0}));
    CHECK_FALSE(w.is_free(State{1.0, 2.0}));
    CHECK(w.is_free(State{1.01, 0.0}));
    CHECK(w.true_cost(State{-3.0, 0.0}, State{3.0, 0.0}) == kInfiniteCost);
    CHECK(w.true_cost(State{-3.0, 3.0}, State{3.0, 3.0}) == 6.0);
}

TEST_CASE("true_cost on the demo world") {
    const World w = demo_world();
    CHECK(w.true_cost(State{0.0, -8.0}, State{0.0, 8.0}) == kInfiniteCost);
    CHECK(w.true_cost(State{-3.0, -3.0}, State{-3.0, 4.0}) == doctest::Approx(7.0).epsilon(1e-12));
    CHECK(w.true_cost(State{2.0, 3.0}, State{2.0, 3.0}) == 0.0);
}

TEST_CASE("check points include both endpoints") {
    const World w = empty_world();
    CHECK(w.check_count(0.0) == 1);
    CHECK(w.check_count(1.0) == 5);
    CHECK(w.check_count(1.1) == 6);
}

TEST_CASE("occupancy grid from an ASCII PGM") {
    const auto dir = scratch_dir("pgm_ascii");
    spit(dir / "g.pgm", "P2\n# tiny\n2 2\n255\n0 255 255 0\n");
    const OccupancyGrid g = load_occupancy_grid(dir / "g.pgm", 1.0, State{0.0, 0.0}, 127);
    CHECK(g.blocked(0, 0));
    CHECK_FALSE(g.blocked(1, 0));
    CHECK_FALSE(g.blocked(0, 1));
    CHECK(g.blocked(1, 1));

    const World w(g);
    CHECK_FALSE(w.is_free(State{0.5, 0.5}));
    CHECK(w.is_free(State{1.5, 0.5}));
    CHECK_FALSE(w.is_free(State{1.5, 1.5}));
    // Half-open cells: the max edge of the grid is outside.
    CHECK_FALSE(w.is_free(State{2.0, 0.5}));
    CHECK(w.is_free(State{1.0, 0.5}));
}

TEST_CASE("all-free grid") {
    const auto dir = scratch_dir("pgm_free");
    spit(dir / "g.pgm", "P2\n3 2\n255\n255 255 255\n255 255 255\n");
    const World w(load_occupancy_grid(dir / "g.pgm", 0.5, State{-1.0, -1.0}, 127));
    RngStream rng(2);
    const Bounds b{State{-1.0, -1.0}, State{0.4999, -0.0001}};
    for (int i = 0; i < 200; ++i) CHECK(w.is_free(rng.uniform_in(b)));
}

TEST_CASE("grid load errors name the field") {
    const auto dir = scratch_dir("pgm_bad");
    auto field_of = [&](const std::string& text) {
        spit(dir / "g.pgm", text);
        try {
            (void)load_occupancy_grid(dir / "g.pgm", 1.0, State{0.0, 0.0}, 127);
        } catch (const GridLoadError& e) {
            return e.field();
        }
        return std::string("none");
    };
    CHECK(field_of("P2\n2 2\n255\n0 255 255\n") == "pixels");
    CHECK(field_of("P3\n2 2\n255\n0 0 0 0\n") == "magic");
    CHECK(field_of("P2\n2 2\n15\n0 0 0 0\n") == "maxval");
    CHECK(field_of("P2\n0 2\n255\n") == "width");
    CHECK(field_of("P2\n2 2\n255\n0 0 0 0 0\n") == "pixels");
    CHECK_THROWS_AS((void)load_occupancy_grid(dir / "missing.pgm", 1.0, State{0.0, 0.0}, 127), GridLoadError);
}

TEST_CASE("property: grid save/load round trip") {
    RngStream rng(8);
    const auto dir = scratch_dir("pgm_roundtrip");
    for (bool ascii : {false, true}) {
        const std::size_t w = 37, h = 23;
        std::vector<bool> occ(w * h);
        for (std::size_t i = 0; i < occ.size(); ++i) occ[i] = rng.uniform(0.0, 1.0) < 0.3;
        const OccupancyGrid g(w, h, 0.1, State{1.0, -2.0}, occ);
        save_occupancy_grid(g, dir / "g.pgm", ascii);
        const OccupancyGrid back = load_occupancy_grid(dir / "g.pgm", 0.1, State{1.0, -2.0}, 127);
        CHECK(back.width() == w);
        CHECK(back.height() == h);
        CHECK(back.occupancy() == occ);
    }
}

TEST_CASE("property: true_cost is symmetric and either c_hat or infinite") {
    const World w = demo_world();
    RngStream rng(17);
    for (int i = 0; i < 5000; ++i) {
        const State x = rng.uniform_in(w.bounds()), y = rng.uniform_in(w.bounds());
        const Cost c = w.true_cost(x, y);
        CHECK(c == w.true_cost(y, x));
        CHECK((c == kInfiniteCost || c == c_hat(x, y)));
        CHECK(c_hat(x, y) <= c);
    }
}

TEST_CASE("property: finite true_cost segments never come close to passing through a circle") {
    const World w = demo_world();
    RngStream rng(23);
    int finite = 0;
    for (int i = 0; i < 5000; ++i) {
        const State x = rng.uniform_in(w.bounds()), y = rng.uniform_in(w.bounds());
        if (w.true_cost(x, y) == kInfiniteCost) continue;
        ++finite;
        // Gap between check points is at most 0.25, so the chord missed can
        // reach at most r - sqrt(r^2 - 0.125^2) into a circle.
        for (const Obstacle& o : w.obstacles()) {
            const auto& c = std::get<CircleObstacle>(o);
            CHECK(segment_distance(x, y, c.center) > c.radius - 0.0053);
        }
    }
    CHECK(finite > 100);
}

TEST_CASE("property: nested check points refine monotonically") {
    const World w4 = demo_world();
    const World w8(w4.bounds(), w4.obstacles(), 8.0);
    const World w16(w4.bounds(), w4.obstacles(), 16.0);
    RngStream rng(31);
    for (int i = 0; i < 3000; ++i) {
        const State x = rng.uniform_in(w4.bounds()), y = rng.uniform_in(w4.bounds());
        // Doubling the interval count (n-1) keeps every coarse point.
        const std::size_t n = w4.check_count(c_hat(x, y));
        const bool coarse = w4.segment_free(x, y, n);
        const bool mid = w8.segment_free(x, y, 2 * n - 1);
        const bool fine = w16.segment_free(x, y, 4 * n - 3);
        if (!coarse) {
            CHECK_FALSE(mid);
        }
        if (!mid) {
            CHECK_FALSE(fine);
        }
    }
}
