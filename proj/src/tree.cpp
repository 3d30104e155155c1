// SPDX-License-Identifier: BSD-3-Clause

#include "bitplan/tree.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bitplan {

Tree::Tree(State root_state) {
    nodes_.push_back(Node{std::move(root_state), std::nullopt, 0.0, 0.0, {}, true});
    alive_count_ = 1;
}

bool Tree::contains(VertexId v) const noexcept {
    return index(v) < nodes_.size() && nodes_[index(v)].alive;
}

const Tree::Node& Tree::node(VertexId v) const {
    if (!contains(v)) throw TreeError("unknown vertex id " + std::to_string(index(v)));
    return nodes_[index(v)];
}

Tree::Node& Tree::node(VertexId v) {
    if (!contains(v)) throw TreeError("unknown vertex id " + std::to_string(index(v)));
    return nodes_[index(v)];
}

VertexId Tree::add_child(VertexId parent, State state, Cost edge_cost) {
    Node& p = node(parent);
    if (!std::isfinite(edge_cost) || edge_cost < 0.0)
        throw TreeError("add_child: edge cost must be finite and non-negative");
    const Cost g = p.cost_to_come + edge_cost;
    const VertexId id{static_cast<std::uint32_t>(nodes_.size())};
    p.children.push_back(id);
    nodes_.push_back(Node{std::move(state), parent, edge_cost, g, {}, true});
    ++alive_count_;
    return id;
}

void Tree::detach_from_parent(VertexId v) {
    Node& n = node(v);
    if (!n.parent) return;
    auto& siblings = node(*n.parent).children;
    siblings.erase(std::find(siblings.begin(), siblings.end(), v));
    n.parent.reset();
}

bool Tree::is_descendant(VertexId v, VertexId ancestor) const {
    std::optional<VertexId> cur = v;
    while (cur) {
        if (*cur == ancestor) return true;
        cur = node(*cur).parent;
    }
    return false;
}

void Tree::rewire(VertexId child, VertexId new_parent, Cost new_edge_cost) {
    if (child == root()) throw TreeError("rewire: the root has no parent");
    node(child);
    node(new_parent);
    if (!std::isfinite(new_edge_cost) || new_edge_cost < 0.0)
        throw TreeError("rewire: edge cost must be finite and non-negative");
    if (is_descendant(new_parent, child)) throw TreeError("rewire: would create a cycle");
    detach_from_parent(child);
    Node& c = node(child);
    c.parent = new_parent;
    c.edge_cost = new_edge_cost;
    node(new_parent).children.push_back(child);
    refresh_costs(child);
}

void Tree::refresh_costs(VertexId v) {
    std::vector<VertexId> stack{v};
    while (!stack.empty()) {
        const VertexId cur = stack.back();
        stack.pop_back();
        Node& n = nodes_[index(cur)];
        n.cost_to_come = nodes_[index(*n.parent)].cost_to_come + n.edge_cost;
        stack.insert(stack.end(), n.children.begin(), n.children.end());
    }
}

std::vector<std::pair<VertexId, State>> Tree::remove_subtree(VertexId v) {
    if (v == root()) throw TreeError("remove_subtree: cannot remove the root");
    node(v);
    detach_from_parent(v);
    std::vector<std::pair<VertexId, State>> removed;
    std::vector<VertexId> stack{v};
    while (!stack.empty()) {
        const VertexId cur = stack.back();
        stack.pop_back();
        Node& n = nodes_[index(cur)];
        // Reverse so that pre-order follows the children's insertion order.
        stack.insert(stack.end(), n.children.rbegin(), n.children.rend());
        removed.emplace_back(cur, std::move(n.state));
        n.children.clear();
        n.parent.reset();
        n.alive = false;
        --alive_count_;
    }
    return removed;
}

Cost Tree::g_t(VertexId v) const noexcept {
    return contains(v) ? nodes_[index(v)].cost_to_come : kInfiniteCost;
}

const State& Tree::state(VertexId v) const { return node(v).state; }

std::optional<VertexId> Tree::par(VertexId v) const { return node(v).parent; }

const std::vector<VertexId>& Tree::children(VertexId v) const { return node(v).children; }

Cost Tree::edge_cost(VertexId v) const { return node(v).edge_cost; }

std::vector<State> Tree::solution(VertexId v) const {
    std::vector<State> path;
    std::optional<VertexId> cur = v;
    node(v);
    while (cur) {
        path.push_back(nodes_[index(*cur)].state);
        cur = nodes_[index(*cur)].parent;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

std::vector<VertexId> Tree::vertices() const {
    std::vector<VertexId> out;
    out.reserve(alive_count_);
    for_each_vertex([&](VertexId v) { out.push_back(v); });
    return out;
}

std::string Tree::audit(double tol) const {
    std::size_t alive = 0;
    std::size_t parentless = 0;
    for (std::uint32_t i = 0; i < nodes_.size(); ++i) {
        const Node& n = nodes_[i];
        if (!n.alive) continue;
        ++alive;
        const VertexId v{i};
        if (!n.parent) {
            ++parentless;
            if (v != root()) return "vertex " + std::to_string(i) + " has no parent";
            continue;
        }
        if (!contains(*n.parent)) return "vertex " + std::to_string(i) + " has a dead parent";
        const auto& sib = nodes_[index(*n.parent)].children;
        if (std::count(sib.begin(), sib.end(), v) != 1)
            return "vertex " + std::to_string(i) + " missing from its parent's children";
        if (!std::isfinite(n.edge_cost) || n.edge_cost < 0.0)
            return "vertex " + std::to_string(i) + " has a non-finite edge";
        for (VertexId c : n.children) {
            if (!contains(c) || nodes_[index(c)].parent != v)
                return "vertex " + std::to_string(i) + " lists a child that does not point back";
        }
        // Independent parent walk, bounded by |V| steps.
        Cost walked = 0.0;
        std::optional<VertexId> cur = v;
        std::size_t steps = 0;
        while (cur && *cur != root()) {
            if (++steps > nodes_.size()) return "cycle through vertex " + std::to_string(i);
            walked += nodes_[index(*cur)].edge_cost;
            cur = nodes_[index(*cur)].parent;
        }
        if (!cur) return "vertex " + std::to_string(i) + " does not reach the root";
        if (std::abs(walked - n.cost_to_come) > tol)
            return "vertex " + std::to_string(i) + " cached cost-to-come disagrees with parent walk";
    }
    if (parentless != 1) return "expected exactly one parentless vertex";
    if (alive != alive_count_) return "alive count mismatch";
    return {};
}

}  // namespace bitplan
