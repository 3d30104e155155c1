// SPDX-License-Identifier: BSD-3-Clause
//
// Rooted out-branching search tree with cached cost-to-come.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bitplan/space.hpp"

namespace bitplan {

/// Stable vertex handle. Ids are never reused within one tree.
enum class VertexId : std::uint32_t {};

[[nodiscard]] constexpr std::uint32_t index(VertexId id) noexcept {
    return static_cast<std::uint32_t>(id);
}

class TreeError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// T = (V, E) with E stored implicitly as a parent link and edge cost on each
/// child. Cost-to-come is cached per vertex and refreshed over the subtree on
/// rewire.
class Tree {
public:
    explicit Tree(State root_state);

    [[nodiscard]] VertexId root() const noexcept { return VertexId{0}; }
    [[nodiscard]] std::size_t size() const noexcept { return alive_count_; }
    [[nodiscard]] bool contains(VertexId v) const noexcept;

    VertexId add_child(VertexId parent, State state, Cost edge_cost);

    /// Re-parents `child` under `new_parent`. Throws TreeError for the root, an
    /// unknown id, a non-finite cost, or a request that would close a cycle.
    void rewire(VertexId child, VertexId new_parent, Cost new_edge_cost);

    /// Removes v and all of its descendants, returning them in pre-order.
    std::vector<std::pair<VertexId, State>> remove_subtree(VertexId v);

    /// Cost-to-come; 0 for the root and infinity for ids not in the tree.
    [[nodiscard]] Cost g_t(VertexId v) const noexcept;
    [[nodiscard]] Cost g_t(std::optional<VertexId> v) const noexcept {
        return v ? g_t(*v) : kInfiniteCost;
    }

    [[nodiscard]] const State& state(VertexId v) const;
    [[nodiscard]] std::optional<VertexId> par(VertexId v) const;
    [[nodiscard]] const std::vector<VertexId>& children(VertexId v) const;
    [[nodiscard]] Cost edge_cost(VertexId v) const;
    [[nodiscard]] bool is_descendant(VertexId v, VertexId ancestor) const;

    /// States from the root to v inclusive.
    [[nodiscard]] std::vector<State> solution(VertexId v) const;

    /// Live vertex ids in increasing order.
    [[nodiscard]] std::vector<VertexId> vertices() const;

    /// Visits every live vertex in increasing id order.
    template <typename Fn>
    void for_each_vertex(Fn&& fn) const {
        for (std::uint32_t i = 0; i < nodes_.size(); ++i) {
            if (nodes_[i].alive) fn(VertexId{i});
        }
    }

    /// Full structural check: single root, parent/children agreement,
    /// acyclicity, finite edges, and cached cost-to-come equal (within `tol`)
    /// to an independent parent-walk sum. Returns an empty string when sound,
    /// else a description of the first violation.
    [[nodiscard]] std::string audit(double tol = 1e-9) const;

private:
    struct Node {
        State state;
        std::optional<VertexId> parent;
        Cost edge_cost = 0.0;
        Cost cost_to_come = 0.0;
        std::vector<VertexId> children;
        bool alive = true;
    };

    const Node& node(VertexId v) const;
    Node& node(VertexId v);
    void refresh_costs(VertexId v);
    void detach_from_parent(VertexId v);

    std::vector<Node> nodes_;
    std::size_t alive_count_ = 0;
};

}  // namespace bitplan
