#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stmatch/rational.hpp"

namespace stmatch {

enum class Side { left, right };

inline const char* side_name(Side s) { return s == Side::left ? "left" : "right"; }

/// A set of vertices on one side of a bipartite graph.
/// Members are kept sorted and distinct.
struct VertexSet {
    Side side = Side::left;
    std::vector<int> members;

    VertexSet() = default;
    VertexSet(Side s, std::vector<int> m) : side(s), members(std::move(m)) {
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
    }

    static VertexSet left(std::vector<int> m) { return VertexSet(Side::left, std::move(m)); }
    static VertexSet right(std::vector<int> m) { return VertexSet(Side::right, std::move(m)); }

    std::size_t size() const { return members.size(); }
    bool empty() const { return members.empty(); }
    bool contains(int v) const {
        return std::binary_search(members.begin(), members.end(), v);
    }

    friend bool operator==(const VertexSet& a, const VertexSet& b) {
        return a.side == b.side && a.members == b.members;
    }
};

/// Immutable bipartite graph G = (U, V, E) with dense 0-based indices on
/// each side. Construction validates index ranges and rejects duplicate
/// edges; neighbour lists are stored in ascending order on both sides.
/// Isolated vertices (on either side) are permitted.
class BipartiteGraph {
public:
    BipartiteGraph() : u_count_(0), v_count_(0) {}

    BipartiteGraph(int u_count, int v_count, std::vector<std::pair<int, int>> edge_list)
        : u_count_(u_count), v_count_(v_count), edges_(std::move(edge_list)) {
        if (u_count < 0 || v_count < 0)
            throw std::invalid_argument("BipartiteGraph: negative side size");
        adj_u_.resize(u_count_);
        adj_v_.resize(v_count_);
        std::sort(edges_.begin(), edges_.end());
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            auto [u, v] = edges_[i];
            if (u < 0 || u >= u_count_ || v < 0 || v >= v_count_)
                throw std::invalid_argument("BipartiteGraph: edge (" + std::to_string(u) +
                                            "," + std::to_string(v) + ") out of range");
            if (i > 0 && edges_[i] == edges_[i - 1])
                throw std::invalid_argument("BipartiteGraph: duplicate edge (" +
                                            std::to_string(u) + "," + std::to_string(v) + ")");
            adj_u_[u].push_back(v);
            adj_v_[v].push_back(u);
        }
    }

    int u_count() const { return u_count_; }
    int v_count() const { return v_count_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    const std::vector<int>& adj_u(int u) const { return adj_u_.at(u); }
    const std::vector<int>& adj_v(int v) const { return adj_v_.at(v); }
    int deg_u(int u) const { return static_cast<int>(adj_u_.at(u).size()); }
    int deg_v(int v) const { return static_cast<int>(adj_v_.at(v).size()); }

    bool has_edge(int u, int v) const {
        if (u < 0 || u >= u_count_ || v < 0 || v >= v_count_) return false;
        const auto& a = adj_u_[u];
        return std::binary_search(a.begin(), a.end(), v);
    }

    void require_left_set(const VertexSet& s) const {
        if (s.side != Side::left)
            throw std::invalid_argument("expected a left vertex set");
        require_in_range(s, u_count_);
    }
    void require_right_set(const VertexSet& s) const {
        if (s.side != Side::right)
            throw std::invalid_argument("expected a right vertex set");
        require_in_range(s, v_count_);
    }

private:
    static void require_in_range(const VertexSet& s, int count) {
        for (int m : s.members)
            if (m < 0 || m >= count)
                throw std::invalid_argument("vertex index " + std::to_string(m) +
                                            " out of range");
    }

    int u_count_;
    int v_count_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_u_;
    std::vector<std::vector<int>> adj_v_;
};

/// Builds a graph from an explicit edge list. Duplicate edges and
/// out-of-range indices are rejected.
inline BipartiteGraph build_graph(int u_count, int v_count,
                                  std::vector<std::pair<int, int>> edge_list) {
    return BipartiteGraph(u_count, v_count, std::move(edge_list));
}

/// The same graph with the two sides swapped.
inline BipartiteGraph mirror(const BipartiteGraph& g) {
    std::vector<std::pair<int, int>> swapped;
    swapped.reserve(g.edges().size());
    for (auto [u, v] : g.edges()) swapped.emplace_back(v, u);
    return BipartiteGraph(g.v_count(), g.u_count(), std::move(swapped));
}

/// Neighbourhood of a left vertex set: the union of the neighbour lists
/// over S. The empty set maps to the empty set.
inline VertexSet neighborhood(const BipartiteGraph& g, const VertexSet& s) {
    g.require_left_set(s);
    std::vector<char> seen(g.v_count(), 0);
    for (int u : s.members)
        for (int v : g.adj_u(u)) seen[v] = 1;
    std::vector<int> out;
    for (int v = 0; v < g.v_count(); ++v)
        if (seen[v]) out.push_back(v);
    return VertexSet::right(std::move(out));
}

/// Deficiency of a left set S at ratio alpha: |Γ(S)| - alpha·|S|, exact.
inline Rational deficiency(const BipartiteGraph& g, const VertexSet& s, const Rational& alpha) {
    VertexSet gamma = neighborhood(g, s);
    return Rational(static_cast<std::int64_t>(gamma.size())) -
           alpha * Rational(static_cast<std::int64_t>(s.size()));
}

/// Result of taking an induced subgraph: the graph on the retained
/// vertices plus index maps in both directions (-1 marks a dropped vertex).
struct InducedSubgraph {
    BipartiteGraph graph;
    std::vector<int> new_u_to_old;
    std::vector<int> new_v_to_old;
    std::vector<int> old_u_to_new;
    std::vector<int> old_v_to_new;
};

/// Keeps exactly the vertices in A (left) and B (right) and the edges with
/// both endpoints retained.
inline InducedSubgraph induced_subgraph(const BipartiteGraph& g, const VertexSet& a,
                                        const VertexSet& b) {
    g.require_left_set(a);
    g.require_right_set(b);
    InducedSubgraph out;
    out.old_u_to_new.assign(g.u_count(), -1);
    out.old_v_to_new.assign(g.v_count(), -1);
    for (int u : a.members) {
        out.old_u_to_new[u] = static_cast<int>(out.new_u_to_old.size());
        out.new_u_to_old.push_back(u);
    }
    for (int v : b.members) {
        out.old_v_to_new[v] = static_cast<int>(out.new_v_to_old.size());
        out.new_v_to_old.push_back(v);
    }
    std::vector<std::pair<int, int>> kept;
    for (auto [u, v] : g.edges())
        if (out.old_u_to_new[u] >= 0 && out.old_v_to_new[v] >= 0)
            kept.emplace_back(out.old_u_to_new[u], out.old_v_to_new[v]);
    out.graph = BipartiteGraph(static_cast<int>(out.new_u_to_old.size()),
                               static_cast<int>(out.new_v_to_old.size()), std::move(kept));
    return out;
}

/// One connected component; isolated vertices form singleton components.
struct Component {
    std::vector<int> left;
    std::vector<int> right;
    int edge_count = 0;
};

struct ComponentPartition {
    std::vector<Component> components;
    std::vector<int> label_u;  // component index per left vertex
    std::vector<int> label_v;  // component index per right vertex
};

/// Connected components, discovered in ascending vertex order
/// (all left vertices first), so the output is deterministic.
inline ComponentPartition components(const BipartiteGraph& g) {
    ComponentPartition part;
    part.label_u.assign(g.u_count(), -1);
    part.label_v.assign(g.v_count(), -1);
    std::vector<int> stack;
    auto explore = [&](bool from_left, int start) {
        int id = static_cast<int>(part.components.size());
        part.components.emplace_back();
        Component& comp = part.components.back();
        stack.clear();
        // encode: left u as u, right v as u_count + v
        stack.push_back(from_left ? start : g.u_count() + start);
        (from_left ? part.label_u[start] : part.label_v[start]) = id;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            if (x < g.u_count()) {
                comp.left.push_back(x);
                for (int v : g.adj_u(x)) {
                    ++comp.edge_count;
                    if (part.label_v[v] < 0) {
                        part.label_v[v] = id;
                        stack.push_back(g.u_count() + v);
                    }
                }
            } else {
                comp.right.push_back(x - g.u_count());
            }
        }
        std::sort(comp.left.begin(), comp.left.end());
        std::sort(comp.right.begin(), comp.right.end());
    };
    for (int u = 0; u < g.u_count(); ++u)
        if (part.label_u[u] < 0) explore(true, u);
    for (int v = 0; v < g.v_count(); ++v)
        if (part.label_v[v] < 0) explore(false, v);
    return part;
}

/// A forest has exactly (vertex count - component count) edges.
inline bool is_forest(const BipartiteGraph& g) {
    ComponentPartition part = components(g);
    return g.edge_count() ==
           g.u_count() + g.v_count() - static_cast<int>(part.components.size());
}

inline bool is_tree(const BipartiteGraph& g) {
    ComponentPartition part = components(g);
    return part.components.size() == 1 &&
           g.edge_count() == g.u_count() + g.v_count() - 1;
}

}  // namespace stmatch
