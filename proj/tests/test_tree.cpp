// SPDX-License-Identifier: BSD-3-Clause

#include <doctest.h>

#include "bitplan/planning.hpp"
#include "bitplan/tree.hpp"
#include "support.hpp"
#include "tree_fuzz.hpp"

using namespace bitplan;
using namespace bitplan::testing;

TEST_CASE("add_child") {
    Tree t(State{0.0, 0.0});
    const VertexId leaf = t.add_child(t.root(), State{5.0, 0.0}, 5.0);
    CHECK(t.g_t(leaf) == 5.0);
    CHECK(t.par(leaf) == t.root());
    const VertexId a = t.add_child(t.root(), State{3.0, 0.0}, 3.0);
    const VertexId b = t.add_child(a, State{3.0, 4.0}, 4.0);
    CHECK(t.g_t(b) == 7.0);
    CHECK_THROWS_AS(t.add_child(a, State{1.0, 1.0}, kInfiniteCost), TreeError);
    CHECK_THROWS_AS(t.add_child(a, State{1.0, 1.0}, -1.0), TreeError);
}

TEST_CASE("g_T") {
    Tree t(State{0.0, 0.0});
    CHECK(t.g_t(t.root()) == 0.0);
    CHECK(t.g_t(std::optional<VertexId>{}) == kInfiniteCost);
    const VertexId a = t.add_child(t.root(), State{3.0, 0.0}, 3.0);
    const VertexId b = t.add_child(a, State{3.0, 4.0}, 4.0);
    const VertexId c = t.add_child(b, State{8.0, 4.0}, 5.0);
    CHECK(t.g_t(c) == 12.0);
    t.remove_subtree(c);
    CHECK(t.g_t(c) == kInfiniteCost);
}

TEST_CASE("rewire") {
    Tree t(State{0.0, 0.0});
    const VertexId a = t.add_child(t.root(), State{10.0, 0.0}, 10.0);
    const VertexId b = t.add_child(t.root(), State{3.0, 0.0}, 3.0);
    const VertexId a1 = t.add_child(a, State{11.0, 0.0}, 1.0);
    const VertexId a2 = t.add_child(a1, State{12.0, 0.0}, 1.0);
    const Cost before_a1 = t.g_t(a1), before_a2 = t.g_t(a2);

    t.rewire(a, b, 2.0);
    CHECK(t.g_t(a) == 5.0);
    CHECK(t.par(a) == b);
    CHECK(before_a1 - t.g_t(a1) == doctest::Approx(5.0));
    CHECK(before_a2 - t.g_t(a2) == doctest::Approx(5.0));
    CHECK(t.children(t.root()).size() == 1);
    CHECK(t.audit().empty());

    CHECK_THROWS_AS(t.rewire(a, a2, 1.0), TreeError);
    CHECK_THROWS_AS(t.rewire(a, a, 1.0), TreeError);
    CHECK_THROWS_AS(t.rewire(t.root(), b, 1.0), TreeError);
    CHECK(t.audit().empty());
}

TEST_CASE("par and children") {
    Tree t(State{0.0, 0.0});
    CHECK_FALSE(t.par(t.root()).has_value());
    const VertexId a = t.add_child(t.root(), State{1.0, 0.0}, 1.0);
    CHECK(t.par(a) == t.root());
    CHECK(t.children(a).empty());
}

TEST_CASE("remove_subtree") {
    Tree t(State{0.0, 0.0});
    const VertexId a = t.add_child(t.root(), State{1.0, 0.0}, 1.0);
    const VertexId b = t.add_child(a, State{2.0, 0.0}, 1.0);
    const VertexId c = t.add_child(a, State{1.0, 1.0}, 1.0);
    const VertexId leaf = t.add_child(t.root(), State{0.0, 1.0}, 1.0);

    const auto one = t.remove_subtree(leaf);
    REQUIRE(one.size() == 1);
    CHECK(one[0].first == leaf);
    CHECK(one[0].second == State{0.0, 1.0});

    const auto three = t.remove_subtree(a);
    CHECK(three.size() == 3);
    CHECK(three[0].first == a);
    CHECK_FALSE(t.contains(b));
    CHECK_FALSE(t.contains(c));
    CHECK(t.size() == 1);
    CHECK_THROWS_AS(t.remove_subtree(t.root()), TreeError);
    CHECK_THROWS_AS(t.remove_subtree(a), TreeError);
}

TEST_CASE("solution") {
    Tree t(State{0.0, 0.0});
    CHECK(t.solution(t.root()) == std::vector<State>{State{0.0, 0.0}});
    const VertexId a = t.add_child(t.root(), State{3.0, 4.0}, 5.0);
    const VertexId b = t.add_child(a, State{3.0, 10.0}, 6.0);
    const auto path = t.solution(b);
    CHECK(path == std::vector<State>{State{0.0, 0.0}, State{3.0, 4.0}, State{3.0, 10.0}});
    CHECK(path_length(path) == doctest::Approx(t.g_t(b)));
}

TEST_CASE("property: random operation sequences keep the tree consistent") {
    RngStream rng(1234);
    const TreeFuzzReport r = fuzz_tree(rng, 3000);
    for (const auto& f : r.failures) FAIL_CHECK(f);
    CHECK(r.adds > 0);
    CHECK(r.rewires > 0);
    CHECK(r.removes > 0);
    CHECK(r.rejected_cycles > 0);
}

TEST_CASE("property: g_T is monotone along paths") {
    RngStream rng(5);
    Tree t(State{0.0, 0.0});
    std::vector<VertexId> ids{t.root()};
    for (int i = 0; i < 500; ++i) {
        const VertexId p = ids[static_cast<std::size_t>(rng.uniform(0.0, 1.0) * static_cast<double>(ids.size()))];
        ids.push_back(t.add_child(p, State{rng.uniform(-5, 5), rng.uniform(-5, 5)}, rng.uniform(0.0, 2.0)));
    }
    t.for_each_vertex([&](VertexId v) {
        if (const auto p = t.par(v)) CHECK(t.g_t(v) >= t.g_t(*p));
    });
}
