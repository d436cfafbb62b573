#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stmatch/bigraph.hpp"
#include "stmatch/conditions.hpp"
#include "stmatch/maxflow.hpp"

namespace stmatch {

/// An edge subset together with its nontrivial components (those carrying
/// at least one edge); candidate (s,t)-matchings and k-star coverings.
struct ForestCover {
    std::vector<std::pair<int, int>> edges;
    std::vector<Component> components;
};

inline ForestCover make_forest_cover(const BipartiteGraph& g,
                                     std::vector<std::pair<int, int>> edges) {
    std::sort(edges.begin(), edges.end());
    BipartiteGraph h(g.u_count(), g.v_count(), edges);
    ForestCover cover;
    cover.edges = std::move(edges);
    for (auto& comp : components(h).components)
        if (comp.edge_count > 0) cover.components.push_back(std::move(comp));
    return cover;
}

enum class SolveStatus { found, none, budget_exceeded };

struct StMatchingResult {
    SolveStatus status = SolveStatus::none;
    ForestCover cover;
    std::uint64_t expansions = 0;
};

struct VerifyResult {
    bool ok = true;
    std::string reason;
};

namespace detail {

/// Union-find with union by size and an undo trail instead of path
/// compression; each root carries the edge count of its component.
class RollbackDsu {
public:
    void init(int n) {
        parent_.resize(n);
        for (int i = 0; i < n; ++i) parent_[i] = i;
        size_.assign(n, 1);
        edge_count_.assign(n, 0);
        trail_.clear();
    }

    int find(int x) const {
        while (parent_[x] != x) x = parent_[x];
        return x;
    }

    int edges_at(int root) const { return edge_count_[root]; }

    int unite(int ra, int rb) {
        if (size_[ra] < size_[rb]) std::swap(ra, rb);
        trail_.push_back({rb, ra, 0});
        parent_[rb] = ra;
        size_[ra] += size_[rb];
        edge_count_[ra] += edge_count_[rb];
        return ra;
    }

    void add_edges(int root, int delta) {
        trail_.push_back({-1, root, delta});
        edge_count_[root] += delta;
    }

    std::size_t mark() const { return trail_.size(); }

    void rollback(std::size_t mark) {
        while (trail_.size() > mark) {
            const Op& op = trail_.back();
            if (op.child < 0) {
                edge_count_[op.root] -= op.delta;
            } else {
                parent_[op.child] = op.child;
                size_[op.root] -= size_[op.child];
                edge_count_[op.root] -= edge_count_[op.child];
            }
            trail_.pop_back();
        }
    }

private:
    struct Op {
        int child;  // -1 marks an edge-count adjustment
        int root;
        int delta;
    };
    std::vector<int> parent_;
    std::vector<int> size_;
    std::vector<int> edge_count_;
    std::vector<Op> trail_;
};

struct StSearch {
    const BipartiteGraph& g;
    int s, t;
    std::uint64_t budget;
    std::uint64_t expansions = 0;
    bool exhausted_budget = false;
    std::vector<int> order;
    RollbackDsu dsu;
    std::vector<std::pair<int, int>> chosen;
    std::vector<int> combo;
    std::vector<int> roots;

    StSearch(const BipartiteGraph& graph, int s_, int t_, std::uint64_t budget_)
        : g(graph), s(s_), t(t_), budget(budget_) {}

    int right_node(int v) const { return g.u_count() + v; }

    /// Number of distinct current components among the neighbours of u.
    /// Merges only ever decrease it, so a count below s is a sound prune.
    int distinct_neighbor_roots(int u) {
        roots.clear();
        for (int v : g.adj_u(u)) {
            int r = dsu.find(right_node(v));
            bool fresh = true;
            for (int q : roots)
                if (q == r) {
                    fresh = false;
                    break;
                }
            if (fresh) roots.push_back(r);
        }
        return static_cast<int>(roots.size());
    }

    // Returns true to stop the search, either on success or when the
    // budget runs out; exhausted_budget distinguishes the two.
    bool search(std::size_t pos) {
        if (pos == order.size()) return true;
        int u = order[pos];
        const auto& nbrs = g.adj_u(u);
        const int n = static_cast<int>(nbrs.size());
        if (n < s) return false;
        combo.resize(s);
        for (int i = 0; i < s; ++i) combo[i] = i;
        while (true) {
            if (++expansions > budget) {
                exhausted_budget = true;
                return false;
            }
            if (try_assign(pos, u, nbrs)) return true;
            // next s-combination in lexicographic order
            int i = s - 1;
            while (i >= 0 && combo[i] == n - s + i) --i;
            if (i < 0) break;
            ++combo[i];
            for (int j = i + 1; j < s; ++j) combo[j] = combo[j - 1] + 1;
        }
        return false;
    }

    bool try_assign(std::size_t pos, int u, const std::vector<int>& nbrs) {
        // cycle prune: two chosen neighbours already in one component
        roots.clear();
        int total = 0;
        for (int i = 0; i < s; ++i) {
            int r = dsu.find(right_node(nbrs[combo[i]]));
            for (int q : roots)
                if (q == r) return false;
            roots.push_back(r);
            total += dsu.edges_at(r);
        }
        if (total + s > t) return false;

        std::size_t mark = dsu.mark();
        int root = dsu.find(u);
        for (int r : roots) root = dsu.unite(root, r);
        dsu.add_edges(root, s);
        std::size_t chosen_mark = chosen.size();
        for (int i = 0; i < s; ++i) chosen.emplace_back(u, nbrs[combo[i]]);

        bool viable = true;
        for (std::size_t j = pos + 1; j < order.size(); ++j)
            if (distinct_neighbor_roots(order[j]) < s) {
                viable = false;
                break;
            }
        if (viable && search(pos + 1)) return true;

        chosen.resize(chosen_mark);
        dsu.rollback(mark);
        return exhausted_budget ? true : false;  // abort unwinds immediately
    }
};

}  // namespace detail

/// Exhaustive backtracking search for an (s,t)-matching: an edge set giving
/// every left vertex exactly s incident edges whose components are trees
/// with at most t edges. Left vertices are processed in descending-degree
/// order and the s-subsets of each neighbourhood in lexicographic order, so
/// runs are reproducible. "none" means the search space was exhausted;
/// budget_exceeded (node-expansion count, machine independent) is reported
/// distinctly.
inline StMatchingResult find_st_matching(const BipartiteGraph& g, int s, int t,
                                         std::uint64_t budget = 100000000) {
    if (s < 1 || t < s) throw std::invalid_argument("find_st_matching: need 1 <= s <= t");
    StMatchingResult result;
    for (int u = 0; u < g.u_count(); ++u)
        if (g.deg_u(u) < s) return result;  // degree shortfall: no matching

    detail::StSearch search(g, s, t, budget);
    search.order.resize(g.u_count());
    for (int u = 0; u < g.u_count(); ++u) search.order[u] = u;
    std::sort(search.order.begin(), search.order.end(), [&](int a, int b) {
        if (g.deg_u(a) != g.deg_u(b)) return g.deg_u(a) > g.deg_u(b);
        return a < b;
    });
    search.dsu.init(g.u_count() + g.v_count());

    bool found = search.search(0);
    result.expansions = search.expansions;
    if (search.exhausted_budget) {
        result.status = SolveStatus::budget_exceeded;
    } else if (found) {
        result.status = SolveStatus::found;
        result.cover = make_forest_cover(g, search.chosen);
    }
    return result;
}

namespace detail {

inline void require_edge_subset(const BipartiteGraph& g,
                                const std::vector<std::pair<int, int>>& edges) {
    for (auto [u, v] : edges)
        if (!g.has_edge(u, v))
            throw std::invalid_argument("edge set is not a subset of the graph's edges");
    auto sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("edge set contains duplicates");
}

}  // namespace detail

/// Independent check of the three (s,t)-matching conditions, in order:
/// left degrees, acyclicity, component size.
inline VerifyResult verify_st_matching(const BipartiteGraph& g, int s, int t,
                                       const std::vector<std::pair<int, int>>& edges) {
    detail::require_edge_subset(g, edges);
    std::vector<int> deg(g.u_count(), 0);
    for (auto [u, v] : edges) {
        (void)v;
        ++deg[u];
    }
    for (int u = 0; u < g.u_count(); ++u)
        if (deg[u] != s) return {false, "degree"};

    detail::RollbackDsu dsu;
    dsu.init(g.u_count() + g.v_count());
    for (auto [u, v] : edges) {
        int ru = dsu.find(u), rv = dsu.find(g.u_count() + v);
        if (ru == rv) return {false, "cycle"};
        int root = dsu.unite(ru, rv);
        dsu.add_edges(root, 1);
    }
    for (int x = 0; x < g.u_count() + g.v_count(); ++x)
        if (dsu.find(x) == x && dsu.edges_at(x) > t) return {false, "component-size"};
    return {};
}

// ---------------------------------------------------------------------------
// k-star coverings
// ---------------------------------------------------------------------------

struct StarCoverResult {
    bool found = false;
    ForestCover cover;
    DoubleSidedResult violation;  // set when found is false
};

namespace detail {

/// Mutable view used while peeling: adjacency in both directions plus, for
/// small graphs, bitmask adjacency enabling fast condition checks.
struct PeelState {
    int nu, nv, k;
    bool mask_lane;
    std::vector<std::uint64_t> mask_u, mask_v;
    std::vector<std::vector<int>> adj_u, adj_v;
    std::vector<std::uint64_t> gamma_u, gamma_v;  // subset -> neighbourhood mask
    bool gamma_fresh = false;

    static constexpr int kMaskLimit = 12;

    void init(const BipartiteGraph& g, int k_) {
        nu = g.u_count();
        nv = g.v_count();
        k = k_;
        adj_u.assign(nu, {});
        adj_v.assign(nv, {});
        for (int u = 0; u < nu; ++u) adj_u[u] = g.adj_u(u);
        for (int v = 0; v < nv; ++v) adj_v[v] = g.adj_v(v);
        mask_lane = nu <= kMaskLimit && nv <= kMaskLimit;
        if (mask_lane) {
            mask_u.assign(nu, 0);
            mask_v.assign(nv, 0);
            for (auto [u, v] : g.edges()) {
                mask_u[u] |= std::uint64_t(1) << v;
                mask_v[v] |= std::uint64_t(1) << u;
            }
            gamma_fresh = false;
        }
    }

    void remove_edge(int u, int v) {
        std::erase(adj_u[u], v);
        std::erase(adj_v[v], u);
        if (mask_lane) {
            mask_u[u] &= ~(std::uint64_t(1) << v);
            mask_v[v] &= ~(std::uint64_t(1) << u);
            gamma_fresh = false;
        }
    }

    int deg_u(int u) const { return static_cast<int>(adj_u[u].size()); }
    int deg_v(int v) const { return static_cast<int>(adj_v[v].size()); }

    BipartiteGraph materialize() const {
        std::vector<std::pair<int, int>> edges;
        for (int u = 0; u < nu; ++u)
            for (int v : adj_u[u]) edges.emplace_back(u, v);
        return BipartiteGraph(nu, nv, std::move(edges));
    }

    void refresh_gamma() {
        gamma_u.assign(std::size_t(1) << nu, 0);
        gamma_v.assign(std::size_t(1) << nv, 0);
        for (std::uint64_t s = 1; s < (std::uint64_t(1) << nu); ++s) {
            int low = __builtin_ctzll(s);
            gamma_u[s] = gamma_u[s & (s - 1)] | mask_u[low];
        }
        for (std::uint64_t s = 1; s < (std::uint64_t(1) << nv); ++s) {
            int low = __builtin_ctzll(s);
            gamma_v[s] = gamma_v[s & (s - 1)] | mask_v[low];
        }
        gamma_fresh = true;
    }

    /// Mask-lane deletability: no subset may turn deficient once uv is gone.
    /// Only sets containing u that reach v solely through u lose a
    /// neighbour, and symmetrically on the right, so scanning those two
    /// families against the precomputed neighbourhood table decides it.
    bool deletable_mask(int u, int v) {
        if (!gamma_fresh) refresh_gamma();
        const std::uint64_t bit_u = std::uint64_t(1) << u;
        const std::uint64_t bit_v = std::uint64_t(1) << v;
        {
            std::uint64_t others = mask_v[v] & ~bit_u;
            std::uint64_t allowed = ((std::uint64_t(1) << nu) - 1) & ~others & ~bit_u;
            for (std::uint64_t sub = allowed;; sub = (sub - 1) & allowed) {
                std::uint64_t set = sub | bit_u;
                std::int64_t gamma_size = __builtin_popcountll(gamma_u[set] & ~bit_v);
                if (std::int64_t(k) * gamma_size < __builtin_popcountll(set)) return false;
                if (sub == 0) break;
            }
        }
        {
            std::uint64_t others = mask_u[u] & ~bit_v;
            std::uint64_t allowed = ((std::uint64_t(1) << nv) - 1) & ~others & ~bit_v;
            for (std::uint64_t sub = allowed;; sub = (sub - 1) & allowed) {
                std::uint64_t set = sub | bit_v;
                std::int64_t gamma_size = __builtin_popcountll(gamma_v[set] & ~bit_u);
                if (std::int64_t(k) * gamma_size < __builtin_popcountll(set)) return false;
                if (sub == 0) break;
            }
        }
        return true;
    }

    bool deletable(int u, int v) {
        if (deg_u(u) <= 1 || deg_v(v) <= 1) return false;  // would isolate an endpoint
        if (mask_lane) return deletable_mask(u, v);
        BipartiteGraph current = materialize();
        Rational alpha(1, k);
        return f_value(current, u, v, alpha) >= Rational(1) &&
               f_value(mirror(current), v, u, alpha) >= Rational(1);
    }
};

/// Exact one-edge-per-left assignment of a tight set: each left vertex of g
/// takes one neighbour, each right vertex at most k. Tightness makes the
/// assignment saturate every right vertex, so the chosen edges form a
/// covering by k-edge stars centred on the right side.
inline std::vector<std::pair<int, int>> tight_star_assignment(const BipartiteGraph& g, int k) {
    MaxFlow flow;
    const int source = 0, sink = 1;
    auto left_node = [&](int u) { return 2 + u; };
    auto right_node = [&](int v) { return 2 + g.u_count() + v; };
    flow.reset(2 + g.u_count() + g.v_count());
    std::vector<std::pair<int, std::pair<int, int>>> edge_arcs;  // arc id -> edge
    int arc_id = 0;
    for (int u = 0; u < g.u_count(); ++u) {
        flow.add_arc(source, left_node(u), 1);
        arc_id += 2;
    }
    for (int u = 0; u < g.u_count(); ++u)
        for (int v : g.adj_u(u)) {
            edge_arcs.push_back({arc_id, {u, v}});
            flow.add_arc(left_node(u), right_node(v), 1);
            arc_id += 2;
        }
    for (int v = 0; v < g.v_count(); ++v) {
        flow.add_arc(right_node(v), sink, k);
        arc_id += 2;
    }
    std::int64_t value = flow.run(source, sink);
    if (value != g.u_count())
        throw std::logic_error("tight set failed to admit a one-per-left assignment");
    std::vector<std::pair<int, int>> chosen;
    for (auto& [id, e] : edge_arcs)
        if (flow.arc_cap(id) == 0) chosen.push_back(e);
    return chosen;
}

std::vector<std::pair<int, int>> cover_condition_graph(const BipartiteGraph& g, int k);

/// Splits off a tight set S (|S| = k|Γ(S)|), covers G[S ∪ Γ(S)] by a
/// one-per-left assignment, and recurses on the complement, which keeps
/// the condition. side_left selects which side carries the tight set.
inline std::vector<std::pair<int, int>> split_and_cover(const BipartiteGraph& g, int k,
                                                        bool side_left,
                                                        const VertexSet& tight) {
    const BipartiteGraph work = side_left ? g : mirror(g);
    assert(deficiency(work, tight, Rational(1, k)).is_zero());
    VertexSet gamma = neighborhood(work, tight);
    std::vector<char> in_tight(work.u_count(), 0), in_gamma(work.v_count(), 0);
    for (int x : tight.members) in_tight[x] = 1;
    for (int y : gamma.members) in_gamma[y] = 1;
    std::vector<int> rest_left, rest_right;
    for (int x = 0; x < work.u_count(); ++x)
        if (!in_tight[x]) rest_left.push_back(x);
    for (int y = 0; y < work.v_count(); ++y)
        if (!in_gamma[y]) rest_right.push_back(y);

    InducedSubgraph part = induced_subgraph(work, tight, gamma);
    InducedSubgraph rest = induced_subgraph(work, VertexSet::left(rest_left),
                                            VertexSet::right(rest_right));

    std::vector<std::pair<int, int>> result;
    for (auto [a, b] : tight_star_assignment(part.graph, k))
        result.emplace_back(part.new_u_to_old[a], part.new_v_to_old[b]);
    for (auto [a, b] : cover_condition_graph(rest.graph, k))
        result.emplace_back(rest.new_u_to_old[a], rest.new_v_to_old[b]);
    if (!side_left)
        for (auto& e : result) std::swap(e.first, e.second);
    return result;
}

/// Covering constructor for a graph already satisfying the double-sided
/// 1/k condition. Peels redundant edges in one ascending pass (an edge
/// that stays undeletable can never become deletable after later
/// deletions, since deleting edges only shrinks neighbourhoods), then
/// either the remainder is a disjoint union of stars, or some surviving
/// edge joins two branch vertices and the tight set behind it splits the
/// graph into two independently coverable parts.
inline std::vector<std::pair<int, int>> cover_condition_graph(const BipartiteGraph& g, int k) {
    if (g.edge_count() == 0) return {};
    PeelState peel;
    peel.init(g, k);
    for (auto [u, v] : g.edges())
        if (peel.deletable(u, v)) peel.remove_edge(u, v);

    // Look for an edge whose endpoints both branch.
    for (int u = 0; u < peel.nu; ++u) {
        if (peel.deg_u(u) < 2) continue;
        for (int v : peel.adj_u(u)) {
            if (peel.deg_v(v) < 2) continue;
            BipartiteGraph current = peel.materialize();
            Rational alpha(1, k);
            // Undeletable means one side's constrained minimum drops below 1;
            // removing the pivot vertex from that minimiser leaves a tight set.
            SubsetConstraints cl;
            cl.forced_in = VertexSet::left({u});
            std::vector<int> shield;
            for (int w : current.adj_v(v))
                if (w != u) shield.push_back(w);
            cl.excluded = VertexSet::left(std::move(shield));
            DeficiencyReport left_min = min_deficiency(current, alpha, cl);
            if (left_min.minimum < Rational(1)) {
                std::vector<int> tight;
                for (int x : left_min.witness.members)
                    if (x != u) tight.push_back(x);
                assert(!tight.empty());
                return split_and_cover(current, k, true, VertexSet::left(tight));
            }
            BipartiteGraph flipped = mirror(current);
            SubsetConstraints cr;
            cr.forced_in = VertexSet::left({v});
            std::vector<int> shield_r;
            for (int w : flipped.adj_v(u))
                if (w != v) shield_r.push_back(w);
            cr.excluded = VertexSet::left(std::move(shield_r));
            DeficiencyReport right_min = min_deficiency(flipped, alpha, cr);
            assert(right_min.minimum < Rational(1));
            std::vector<int> tight;
            for (int x : right_min.witness.members)
                if (x != v) tight.push_back(x);
            assert(!tight.empty());
            return split_and_cover(current, k, u, v, false, VertexSet::left(tight));
        }
    }

    // Every edge touches a leaf: the remainder is a star forest, and the
    // condition bounds each star by k edges.
    std::vector<std::pair<int, int>> all;
    for (int u = 0; u < peel.nu; ++u)
        for (int v : peel.adj_u(u)) all.emplace_back(u, v);
    return all;
}

}  // namespace detail

/// Constructs a k-star covering, or reports the double-sided condition
/// violation that rules one out. Every component of a returned cover is a
/// star with 1..k edges and every vertex of the graph is covered.
inline StarCoverResult find_k_star_covering(const BipartiteGraph& g, int k) {
    if (k < 1) throw std::invalid_argument("find_k_star_covering: k must be at least 1");
    StarCoverResult result;
    result.violation = check_double_sided(g, Rational(1, k));
    if (!result.violation.ok) return result;
    result.found = true;
    result.cover = make_forest_cover(g, detail::cover_condition_graph(g, k));
    return result;
}

/// Independent check of a k-star covering: full coverage of both sides,
/// star-shaped components, star size at most k.
inline VerifyResult verify_k_star_covering(const BipartiteGraph& g, int k,
                                           const std::vector<std::pair<int, int>>& edges) {
    detail::require_edge_subset(g, edges);
    BipartiteGraph h(g.u_count(), g.v_count(), edges);
    for (int u = 0; u < g.u_count(); ++u)
        if (h.deg_u(u) == 0) return {false, "coverage"};
    for (int v = 0; v < g.v_count(); ++v)
        if (h.deg_v(v) == 0) return {false, "coverage"};
    for (const auto& comp : components(h).components) {
        int vertices = static_cast<int>(comp.left.size() + comp.right.size());
        if (comp.edge_count != vertices - 1) return {false, "star-shape"};  // has a cycle
        int branch = 0;
        for (int u : comp.left)
            if (h.deg_u(u) >= 2) ++branch;
        for (int v : comp.right)
            if (h.deg_v(v) >= 2) ++branch;
        if (branch > 1) return {false, "star-shape"};
        if (comp.edge_count > k) return {false, "star-size"};
    }
    return {};
}

// ---------------------------------------------------------------------------
// Critical-link augmentation on trees
// ---------------------------------------------------------------------------

/// State of the critical-link augmentation. selected is the grown set F of
/// degree-h left vertices; every component of G[F ∪ Γ(F)] touches the
/// neighbourhood of the remaining left vertices in exactly one vertex.
/// deferred holds candidates that failed the membership test after the
/// last successful insertion; shared_rights is {v : |Γ(v) \ F| ≥ 2}.
struct CriticalLinkState {
    VertexSet selected = VertexSet::left({});
    VertexSet pending = VertexSet::left({});
    VertexSet deferred = VertexSet::left({});
    VertexSet shared_rights = VertexSet::right({});
};

struct CriticalLinkCheck {
    bool ok = true;
    Component witness;
    int link_count = 0;
};

/// Per-component count of vertices lying in Γ(U \ F); the property requires
/// exactly one in each component of G[F ∪ Γ(F)]. Vacuously true for F = ∅.
inline CriticalLinkCheck check_critical_link_property(const BipartiteGraph& g,
                                                      const VertexSet& f) {
    g.require_left_set(f);
    std::vector<char> in_f(g.u_count(), 0);
    for (int u : f.members) in_f[u] = 1;
    std::vector<char> outward(g.v_count(), 0);
    for (int u = 0; u < g.u_count(); ++u)
        if (!in_f[u])
            for (int v : g.adj_u(u)) outward[v] = 1;

    std::vector<char> in_gamma(g.v_count(), 0);
    for (int u : f.members)
        for (int v : g.adj_u(u)) in_gamma[v] = 1;

    std::vector<int> label_u(g.u_count(), -1), label_v(g.v_count(), -1);
    std::vector<Component> comps;
    std::vector<int> stack;
    for (int start : f.members) {
        if (label_u[start] >= 0) continue;
        int id = static_cast<int>(comps.size());
        comps.emplace_back();
        stack.assign(1, start);
        label_u[start] = id;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            if (x < g.u_count()) {
                comps[id].left.push_back(x);
                for (int v : g.adj_u(x)) {
                    ++comps[id].edge_count;
                    if (label_v[v] < 0) {
                        label_v[v] = id;
                        stack.push_back(g.u_count() + v);
                    }
                }
            } else {
                int v = x - g.u_count();
                comps[id].right.push_back(v);
                for (int u : g.adj_v(v)) {
                    if (in_f[u] && label_u[u] < 0) {
                        label_u[u] = id;
                        stack.push_back(u);
                    }
                }
            }
        }
        std::sort(comps[id].left.begin(), comps[id].left.end());
        std::sort(comps[id].right.begin(), comps[id].right.end());
    }
    for (auto& comp : comps) {
        int links = 0;
        for (int v : comp.right)
            if (outward[v]) ++links;
        if (links != 1) return {false, comp, links};
    }
    return {};
}

/// Grows F = {degree-h left vertices whose neighbourhood is h-1 leaves}
/// by the deferred-candidate loop: a pending vertex joins F when its
/// neighbourhood meets the neighbourhood of the other outside vertices in
/// exactly one vertex, and every deferral is retried after each success.
/// Requires a tree with minimum left degree at least h.
inline CriticalLinkState critical_link_augment(const BipartiteGraph& g, int h) {
    if (h < 1) throw std::invalid_argument("critical_link_augment: h must be positive");
    if (!is_tree(g)) throw std::invalid_argument("critical_link_augment: graph is not a tree");
    for (int u = 0; u < g.u_count(); ++u)
        if (g.deg_u(u) < h)
            throw std::invalid_argument("critical_link_augment: left degree below h");

    std::vector<char> in_f(g.u_count(), 0);
    std::vector<int> pending;
    for (int u = 0; u < g.u_count(); ++u) {
        if (g.deg_u(u) != h) continue;
        int leaf_neighbors = 0;
        for (int v : g.adj_u(u))
            if (g.deg_v(v) == 1) ++leaf_neighbors;
        if (leaf_neighbors == h - 1)
            in_f[u] = 1;
        else
            pending.push_back(u);
    }

    std::vector<int> deferred;
    std::vector<char> outward(g.v_count(), 0);
    while (!pending.empty()) {
        int u = pending.front();
        pending.erase(pending.begin());
        // Γ(U \ (F ∪ {u}))
        std::fill(outward.begin(), outward.end(), 0);
        for (int w = 0; w < g.u_count(); ++w) {
            if (w == u || in_f[w]) continue;
            for (int v : g.adj_u(w)) outward[v] = 1;
        }
        int meet = 0;
        for (int v : g.adj_u(u))
            if (outward[v]) ++meet;
        if (meet == 1) {
            in_f[u] = 1;
            pending.insert(pending.end(), deferred.begin(), deferred.end());
            std::sort(pending.begin(), pending.end());
            deferred.clear();
        } else {
            deferred.push_back(u);
        }
    }

    CriticalLinkState state;
    std::vector<int> selected;
    for (int u = 0; u < g.u_count(); ++u)
        if (in_f[u]) selected.push_back(u);
    state.selected = VertexSet::left(std::move(selected));
    state.deferred = VertexSet::left(std::move(deferred));
    std::vector<int> shared;
    for (int v = 0; v < g.v_count(); ++v) {
        int outside = 0;
        for (int u : g.adj_v(v))
            if (!in_f[u]) ++outside;
        if (outside >= 2) shared.push_back(v);
    }
    state.shared_rights = VertexSet::right(std::move(shared));
    return state;
}

}  // namespace stmatch
