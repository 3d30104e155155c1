// SPDX-License-Identifier: BSD-3-Clause

#include <doctest.h>

#include <algorithm>
#include <tuple>
#include <vector>

#include "bitplan/queues.hpp"
#include "bitplan/space.hpp"

using namespace bitplan;

namespace {

VertexQueueEntry entry(std::uint32_t id, Cost key, Cost tiebreak) {
    return VertexQueueEntry{VertexId{id}, key, tiebreak};
}

}  // namespace

TEST_CASE("insert and pop") {
    VertexQueue q;
    q.insert(entry(1, 3.0, 1.0));
    const auto e = q.pop_best();
    CHECK(index(e.vertex) == 1);
    CHECK(e.key == 3.0);
    CHECK(q.empty());

    q.insert(entry(7, 7.0, 0.0));
    q.insert(entry(5, 5.0, 0.0));
    CHECK(q.pop_best().key == 5.0);
}

TEST_CASE("ties break on the cost-to-come term, then insertion order") {
    VertexQueue q;
    q.insert(entry(1, 5.0, 3.0));
    q.insert(entry(2, 5.0, 2.0));
    CHECK(index(q.pop_best().vertex) == 2);

    VertexQueue r;
    r.insert(entry(1, 5.0, 3.0));
    r.insert(entry(2, 5.0, 3.0));
    CHECK(index(r.pop_best().vertex) == 1);
    CHECK(index(r.pop_best().vertex) == 2);
}

TEST_CASE("best_value") {
    EdgeQueue q;
    CHECK(q.best_value() == kInfiniteCost);
    for (double k : {9.0, 4.0, 6.0}) q.insert(EdgeQueueEntry{VertexId{0}, SampleId{1}, k, 0.0});
    CHECK(q.best_value() == 4.0);
    (void)q.pop_best();
    CHECK(q.best_value() == 6.0);
}

TEST_CASE("pop on empty queue throws") {
    VertexQueue q;
    CHECK_THROWS_AS((void)q.pop_best(), std::logic_error);
}

TEST_CASE("clear") {
    VertexQueue q;
    q.clear();
    CHECK(q.empty());
    for (std::uint32_t i = 0; i < 10; ++i) q.insert(entry(i, i, 0.0));
    q.clear();
    CHECK(q.best_value() == kInfiniteCost);
    CHECK(q.size() == 0);
    q.insert(entry(3, 2.0, 1.0));
    CHECK(q.size() == 1);
    CHECK(index(q.pop_best().vertex) == 3);
}

TEST_CASE("property: interleaved operations match a sorted-list oracle") {
    RngStream rng(77);
    VertexQueue q;
    // Oracle: (key, tiebreak, seq, id), re-sorted before every pop.
    std::vector<std::tuple<Cost, Cost, std::uint64_t, std::uint32_t>> oracle;
    std::uint64_t seq = 0;
    std::size_t pops = 0;
    for (int op = 0; op < 20000; ++op) {
        const double roll = rng.uniform(0.0, 1.0);
        if (roll < 0.55) {
            // Coarse keys force frequent ties.
            const Cost key = std::floor(rng.uniform(0.0, 20.0));
            const Cost tb = std::floor(rng.uniform(0.0, 4.0));
            const auto id = static_cast<std::uint32_t>(op);
            q.insert(entry(id, key, tb));
            oracle.emplace_back(key, tb, seq++, id);
        } else if (roll < 0.99) {
            std::sort(oracle.begin(), oracle.end());
            CHECK(q.best_value() == (oracle.empty() ? kInfiniteCost : std::get<0>(oracle.front())));
            if (oracle.empty()) {
                CHECK(q.empty());
                continue;
            }
            const auto got = q.pop_best();
            CHECK(index(got.vertex) == std::get<3>(oracle.front()));
            oracle.erase(oracle.begin());
            ++pops;
        } else {
            q.clear();
            oracle.clear();
        }
        CHECK(q.size() == oracle.size());
    }
    CHECK(pops > 5000);
}
