// SPDX-License-Identifier: BSD-3-Clause
//
// Vertex and edge priority queues ordered by (key, tiebreak, insertion order).

#pragma once

#include <cstdint>
#include <queue>
#include <stdexcept>
#include <vector>

#include "bitplan/space.hpp"
#include "bitplan/tree.hpp"

namespace bitplan {

/// Handle of a state known to the planner (a sample, a goal sample, or the
/// state behind a tree vertex). Stable for the lifetime of one planner run.
enum class SampleId : std::uint32_t {};

/// Vertex queue element; key = g_T(v) + h_hat(v), tiebreak = g_T(v).
struct VertexQueueEntry {
    VertexId vertex;
    Cost key;
    Cost tiebreak;
};

/// Edge queue element; key = g_T(v) + c_hat(v,x) + h_hat(x),
/// tiebreak = g_T(v) + c_hat(v,x).
struct EdgeQueueEntry {
    VertexId source;
    SampleId target;
    Cost key;
    Cost tiebreak;
};

/// Min-queue with lexicographic (key, tiebreak, insertion order) ranking.
/// Keys are fixed at insertion; duplicates are allowed.
template <typename Entry>
class HeuristicQueue {
public:
    void insert(Entry entry) { heap_.push(Slot{std::move(entry), next_seq_++}); }

    /// Smallest key, or infinity when empty.
    [[nodiscard]] Cost best_value() const noexcept {
        return heap_.empty() ? kInfiniteCost : heap_.top().entry.key;
    }

    Entry pop_best() {
        if (heap_.empty()) throw std::logic_error("pop_best on an empty queue");
        Entry e = heap_.top().entry;
        heap_.pop();
        return e;
    }

    void clear() noexcept { heap_ = {}; }

    [[nodiscard]] bool empty() const noexcept { return heap_.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return heap_.size(); }

private:
    struct Slot {
        Entry entry;
        std::uint64_t seq;
    };
    struct Later {
        bool operator()(const Slot& a, const Slot& b) const noexcept {
            if (a.entry.key != b.entry.key) return a.entry.key > b.entry.key;
            if (a.entry.tiebreak != b.entry.tiebreak) return a.entry.tiebreak > b.entry.tiebreak;
            return a.seq > b.seq;
        }
    };

    std::priority_queue<Slot, std::vector<Slot>, Later> heap_;
    std::uint64_t next_seq_ = 0;
};

using VertexQueue = HeuristicQueue<VertexQueueEntry>;
using EdgeQueue = HeuristicQueue<EdgeQueueEntry>;

}  // namespace bitplan
