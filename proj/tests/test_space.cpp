// SPDX-License-Identifier: BSD-3-Clause

#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "bitplan/space.hpp"
#include "bitplan/world.hpp"
#include "support.hpp"

using namespace bitplan;
using namespace bitplan::testing;

TEST_CASE("state rejects non-finite coordinates") {
    CHECK_THROWS_AS(State({0.0, std::numeric_limits<double>::quiet_NaN()}), std::invalid_argument);
    CHECK_THROWS_AS(State({std::numeric_limits<double>::infinity(), 0.0}), std::invalid_argument);
    CHECK(State{1.0, 2.0} == State{1.0, 2.0});
}

TEST_CASE("c_hat") {
    CHECK(c_hat(State{0.0, 0.0}, State{3.0, 4.0}) == 5.0);
    CHECK(c_hat(State{1.0, 1.0}, State{1.0, 1.0}) == 0.0);
    CHECK(c_hat(State{0.0, -8.0}, State{0.0, 8.0}) == 16.0);
}

TEST_CASE("g_hat") {
    ProblemDef p = point_problem(State{0.0, -8.0}, State{0.0, 8.0});
    CHECK(g_hat(State{0.0, -8.0}, p) == 0.0);
    CHECK(g_hat(State{0.0, 8.0}, p) == 16.0);
    ProblemDef q = point_problem(State{0.0, 0.0}, State{5.0, 5.0});
    CHECK(g_hat(State{3.0, 4.0}, q) == 5.0);
}

TEST_CASE("h_hat over goal samples") {
    const std::vector<State> one{State{0.0, 8.0}};
    CHECK(h_hat(State{0.0, 8.0}, one) == 0.0);
    CHECK(h_hat(State{0.0, -8.0}, one) == 16.0);
    const std::vector<State> two{State{0.0, 8.0}, State{8.0, 0.0}};
    CHECK(h_hat(State{0.0, 0.0}, two) == 8.0);
    CHECK_THROWS_AS((void)h_hat(State{0.0, 0.0}, std::vector<State>{}), std::invalid_argument);
}

TEST_CASE("h_hat to the goal region") {
    const ProblemDef p = demo_problem(0.5);
    CHECK(h_hat(State{0.0, 8.0}, p) == 0.0);
    CHECK(h_hat(State{0.0, 8.3}, p) == 0.0);
    CHECK(h_hat(State{0.0, -8.0}, p) == doctest::Approx(15.5));
    // With a point goal the two forms agree.
    const ProblemDef q = point_problem(State{0.0, -8.0}, State{0.0, 8.0});
    CHECK(h_hat(State{3.0, 1.0}, q) == h_hat(State{3.0, 1.0}, std::span<const State>(q.goal_samples)));
}

TEST_CASE("informed_contains") {
    const ProblemDef p = point_problem(State{0.0, -8.0}, State{0.0, 8.0});
    CHECK(informed_contains(State{0.0, 0.0}, p, 20.0));
    CHECK_FALSE(informed_contains(State{6.0, 0.0}, p, 20.0));
    CHECK(informed_contains(State{9.0, 9.0}, p, kInfiniteCost));
    CHECK(informed_contains(State{-10.0, 10.0}, p, kInfiniteCost));
}

TEST_CASE("problem validation names the field") {
    ProblemDef p = demo_problem();
    p.root = State{0.0, -11.0};
    CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("root"), std::invalid_argument);
    p = demo_problem();
    p.goal_samples = {State{3.0, 8.0}};
    CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("goal_samples"), std::invalid_argument);
}

TEST_CASE("sample_batch without a solution covers the bounds") {
    const World w = empty_world();
    const ProblemDef p = demo_problem();
    RngStream rng(3);
    const auto xs = sample_batch(5, p, w, kInfiniteCost, rng);
    CHECK(xs.size() == 5);
    for (const State& x : xs) CHECK(p.bounds.contains(x));
}

TEST_CASE("sample_batch on the demo world returns free states at the expected rate") {
    const World w = demo_world();
    const ProblemDef p = demo_problem();
    RngStream rng(11);
    std::uint64_t attempts = 0;
    const auto xs = sample_batch(1000, p, w, kInfiniteCost, rng, &attempts);
    REQUIRE(xs.size() == 1000);
    for (const State& x : xs) CHECK(w.is_free(x));
    const double expected = 1.0 - 3.0 * M_PI * 1.5 * 1.5 / 400.0;
    const double observed = 1000.0 / static_cast<double>(attempts);
    CHECK(observed == doctest::Approx(expected).epsilon(0.03));
}

TEST_CASE("sample_batch with a solution stays in the informed set") {
    const World w = demo_world();
    const ProblemDef p = point_problem(State{0.0, -8.0}, State{0.0, 8.0});
    RngStream rng(5);
    const auto xs = sample_batch(1000, p, w, 20.0, rng);
    REQUIRE(xs.size() == 1000);
    for (const State& x : xs) {
        CHECK(w.is_free(x));
        CHECK(g_hat(x, p) + h_hat(x, p) < 20.0);
    }
}

TEST_CASE("sample_batch is deterministic per seed") {
    const World w = demo_world();
    const ProblemDef p = demo_problem();
    RngStream a(42), b(42), c(43);
    const auto xa = sample_batch(200, p, w, 18.0, a);
    const auto xb = sample_batch(200, p, w, 18.0, b);
    const auto xc = sample_batch(200, p, w, 18.0, c);
    CHECK(xa == xb);
    CHECK(xa != xc);
}

TEST_CASE("sample_batch gives up on an empty informed set") {
    const World w = empty_world();
    const ProblemDef p = point_problem(State{0.0, -8.0}, State{0.0, 8.0});
    RngStream rng(1);
    CHECK_THROWS_AS((void)sample_batch(1, p, w, 16.0, rng), SamplerStarved);
}

TEST_CASE("property: triangle inequality and heuristic anchors") {
    RngStream rng(99);
    const Bounds b = square(10.0);
    for (int i = 0; i < 10000; ++i) {
        const State x = rng.uniform_in(b), y = rng.uniform_in(b), z = rng.uniform_in(b);
        CHECK(c_hat(x, z) <= c_hat(x, y) + c_hat(y, z) + 1e-12);
        CHECK(c_hat(x, y) == c_hat(y, x));
    }
    const ProblemDef p = demo_problem();
    CHECK(g_hat(p.root, p) == 0.0);
    for (const State& g : p.goal_samples) {
        CHECK(h_hat(g, p) == 0.0);
        CHECK(h_hat(g, std::span<const State>(p.goal_samples)) == 0.0);
    }
}

TEST_CASE("property: region heuristic is 1-Lipschitz and below the sample heuristic") {
    RngStream rng(7);
    const ProblemDef p = demo_problem(0.5);
    for (int i = 0; i < 10000; ++i) {
        const State x = rng.uniform_in(p.bounds), y = rng.uniform_in(p.bounds);
        CHECK(h_hat(x, p) <= c_hat(x, y) + h_hat(y, p) + 1e-12);
        CHECK(h_hat(x, p) <= h_hat(x, std::span<const State>(p.goal_samples)));
    }
}
