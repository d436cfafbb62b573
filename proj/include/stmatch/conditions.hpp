#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stmatch/bigraph.hpp"
#include "stmatch/maxflow.hpp"
#include "stmatch/rational.hpp"

namespace stmatch {

/// Constraints on the left subsets a minimisation ranges over.
/// forced_in must be contained in the subset, excluded must be disjoint
/// from it. By default only nonempty subsets are considered, matching the
/// quantifier "for each S ⊆ U" (the empty set contributes a vacuous 0).
struct SubsetConstraints {
    VertexSet forced_in = VertexSet::left({});
    VertexSet excluded = VertexSet::left({});
    bool require_nonempty = true;

    static SubsetConstraints none() {
        SubsetConstraints c;
        c.require_nonempty = false;
        return c;
    }
    static SubsetConstraints nonempty() { return SubsetConstraints{}; }
};

/// Minimum deficiency over a constrained family, with a witness set
/// attaining it. family_empty is set when the constraints admit no subset
/// at all (contradictory constraints, or nonempty required with nothing
/// selectable); minimum and witness are meaningless in that case.
struct DeficiencyReport {
    Rational minimum;
    VertexSet witness = VertexSet::left({});
    bool family_empty = false;
};

/// Parameters of the degree-bounded threshold: k ≥ 1, d > h ≥ 2, r = d-h.
struct ThresholdParams {
    int h;
    int k;
    int d;

    ThresholdParams(int h_, int k_, int d_) : h(h_), k(k_), d(d_) {
        if (h < 2) throw std::invalid_argument("threshold: h must be at least 2");
        if (k < 1) throw std::invalid_argument("threshold: k must be at least 1");
        if (d <= h) throw std::invalid_argument("threshold: d must exceed h");
    }

    int r() const { return d - h; }
};

namespace detail {

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

}  // namespace detail

/// Degree-bounded sufficiency threshold:
///   h - 1 + (d-h+1) / (k + 1 + (d-h-1)·⌈k/h⌉).
inline Rational threshold_main(const ThresholdParams& p) {
    std::int64_t c = detail::ceil_div(p.k, p.h);
    return Rational(p.h - 1) + Rational(p.r() + 1, p.k + 1 + (p.r() - 1) * c);
}

inline Rational threshold_main(int h, int k, int d) {
    return threshold_main(ThresholdParams(h, k, d));
}

/// Degree-free threshold h - 1 + 1/⌈k/h⌉; the limit of threshold_main as
/// the degree bound grows.
inline Rational threshold_summary(int h, int k) {
    if (h < 2) throw std::invalid_argument("threshold: h must be at least 2");
    if (k < 1) throw std::invalid_argument("threshold: k must be at least 1");
    return Rational(h - 1) + Rational(1, detail::ceil_div(k, h));
}

namespace detail {

constexpr std::int64_t kMaxAlphaDenominator = 1000000;

inline void validate_alpha(const Rational& alpha) {
    if (alpha.is_negative())
        throw std::invalid_argument("alpha must be nonnegative");
    if (alpha.den() > kMaxAlphaDenominator)
        throw std::invalid_argument("alpha denominator exceeds 10^6");
}

/// One closure solve: minimise q·|Γ(S)| - p·|S| over S ⊆ selectable with
/// forced ⊆ S, via a single max-flow. Clearing the denominator keeps every
/// capacity integral:
///   source → u   capacity p   (selectable left vertices; "infinite" when forced)
///   u → v        capacity ∞   (edges from selectable left vertices)
///   v → sink     capacity q
/// A finite s-t cut with source side {s} ∪ S ∪ Γ(S) costs
/// p·|selectable \ S| + q·|Γ(S)|, so min-cut = p·|selectable| + min (q|Γ(S)| - p|S|).
/// The "infinite" capacity is p·|U| + q·|V| + 1, strictly above any finite cut.
/// The witness is the source-reachable left set in the final residual
/// network: the inclusion-minimal minimiser.
struct ClosureSolver {
    MaxFlow flow;
    std::vector<char> excluded_mark;
    std::vector<char> forced_mark;

    DeficiencyReport solve(const BipartiteGraph& g, std::int64_t p, std::int64_t q,
                           const std::vector<int>& forced, const std::vector<int>& excluded) {
        const int nu = g.u_count(), nv = g.v_count();
        excluded_mark.assign(nu, 0);
        for (int u : excluded) excluded_mark[u] = 1;
        forced_mark.assign(nu, 0);
        for (int u : forced) forced_mark[u] = 1;

        const std::int64_t infinite = p * nu + q * nv + 1;
        const int source = 0, sink = 1;
        auto left_node = [&](int u) { return 2 + u; };
        auto right_node = [&](int v) { return 2 + nu + v; };

        flow.reset(2 + nu + nv);
        std::int64_t selectable = 0;
        for (int u = 0; u < nu; ++u) {
            if (excluded_mark[u]) continue;
            ++selectable;
            flow.add_arc(source, left_node(u), forced_mark[u] ? infinite : p);
            for (int v : g.adj_u(u)) flow.add_arc(left_node(u), right_node(v), infinite);
        }
        for (int v = 0; v < nv; ++v) flow.add_arc(right_node(v), sink, q);

        std::int64_t cut = flow.run(source, sink);

        DeficiencyReport report;
        report.minimum = Rational(cut - p * selectable, q);
        std::vector<int> witness;
        for (int u = 0; u < nu; ++u)
            if (!excluded_mark[u] && flow.source_side(left_node(u))) witness.push_back(u);
        report.witness = VertexSet::left(std::move(witness));
        return report;
    }
};

inline ClosureSolver& closure_solver() {
    thread_local ClosureSolver solver;
    return solver;
}

}  // namespace detail

/// Exact minimum of the deficiency h(S, alpha) over all left subsets S
/// satisfying the constraints, solved as a closure (project-selection)
/// problem with one max-flow per forced seed. Nonempty minimisation with
/// no forced vertex takes |U| solves, one per possible seed vertex, and
/// keeps the first seed attaining the minimum.
inline DeficiencyReport min_deficiency(const BipartiteGraph& g, const Rational& alpha,
                                       const SubsetConstraints& constraints = {}) {
    detail::validate_alpha(alpha);
    g.require_left_set(constraints.forced_in);
    g.require_left_set(constraints.excluded);

    for (int u : constraints.forced_in.members)
        if (constraints.excluded.contains(u)) return {Rational(0), VertexSet::left({}), true};

    auto& solver = detail::closure_solver();
    const std::int64_t p = alpha.num(), q = alpha.den();

    if (!constraints.forced_in.empty() || !constraints.require_nonempty)
        return solver.solve(g, p, q, constraints.forced_in.members,
                            constraints.excluded.members);

    // Nonempty, nothing forced: min over u of the best subset containing u.
    std::optional<DeficiencyReport> best;
    for (int u = 0; u < g.u_count(); ++u) {
        if (constraints.excluded.contains(u)) continue;
        DeficiencyReport candidate = solver.solve(g, p, q, {u}, constraints.excluded.members);
        if (!best || candidate.minimum < best->minimum) best = std::move(candidate);
    }
    if (!best) return {Rational(0), VertexSet::left({}), true};
    return *best;
}

/// Brute-force oracle with the same contract as min_deficiency, by
/// exhaustive subset enumeration. Only for graphs with |U| ≤ cap.
inline DeficiencyReport min_deficiency_oracle(const BipartiteGraph& g, const Rational& alpha,
                                              const SubsetConstraints& constraints = {},
                                              int cap = 20) {
    detail::validate_alpha(alpha);
    g.require_left_set(constraints.forced_in);
    g.require_left_set(constraints.excluded);
    if (g.u_count() > cap)
        throw std::invalid_argument("min_deficiency_oracle: |U| exceeds cap");

    for (int u : constraints.forced_in.members)
        if (constraints.excluded.contains(u)) return {Rational(0), VertexSet::left({}), true};

    std::vector<int> free_vertices;
    for (int u = 0; u < g.u_count(); ++u)
        if (!constraints.forced_in.contains(u) && !constraints.excluded.contains(u))
            free_vertices.push_back(u);

    const int words = (g.v_count() + 63) / 64;
    std::vector<std::uint64_t> mask_of(g.u_count() * std::max(words, 1), 0);
    for (auto [u, v] : g.edges()) mask_of[u * words + v / 64] |= std::uint64_t(1) << (v % 64);

    std::vector<std::uint64_t> gamma(std::max(words, 1));
    std::optional<DeficiencyReport> best;
    const std::uint64_t subsets = std::uint64_t(1) << free_vertices.size();
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
        std::vector<int> set = constraints.forced_in.members;
        for (std::size_t i = 0; i < free_vertices.size(); ++i)
            if (mask >> i & 1) set.push_back(free_vertices[i]);
        if (set.empty() && constraints.require_nonempty) continue;
        std::fill(gamma.begin(), gamma.end(), 0);
        for (int u : set)
            for (int w = 0; w < words; ++w) gamma[w] |= mask_of[u * words + w];
        std::int64_t size_gamma = 0;
        for (int w = 0; w < words; ++w) size_gamma += __builtin_popcountll(gamma[w]);
        Rational h = Rational(size_gamma) - alpha * Rational(std::int64_t(set.size()));
        if (!best || h < best->minimum)
            best = DeficiencyReport{h, VertexSet::left(std::move(set)), false};
    }
    if (!best) return {Rational(0), VertexSet::left({}), true};
    return *best;
}

/// Outcome of a neighbourhood-condition check. On violation the witness is
/// a nonempty set with strictly negative deficiency (the minimal minimiser).
struct ConditionResult {
    bool ok = true;
    VertexSet witness = VertexSet::left({});
    Rational deficiency;
};

/// Does |Γ(S)| ≥ alpha·|S| hold for every S ⊆ U? A single unconstrained
/// closure solve suffices: the overall minimum is 0 (attained by ∅) exactly
/// when no subset is deficient, and any negative minimiser is nonempty.
inline ConditionResult check_condition(const BipartiteGraph& g, const Rational& alpha) {
    detail::validate_alpha(alpha);
    DeficiencyReport r =
        detail::closure_solver().solve(g, alpha.num(), alpha.den(), {}, {});
    if (!r.minimum.is_negative()) return {};
    return {false, r.witness, r.minimum};
}

struct DoubleSidedResult {
    bool ok = true;
    Side side = Side::left;
    VertexSet witness = VertexSet::left({});
    Rational deficiency;
};

/// Checks the condition on G and on its left-right mirror; reports the
/// first violated side (left checked first).
inline DoubleSidedResult check_double_sided(const BipartiteGraph& g, const Rational& alpha) {
    ConditionResult left = check_condition(g, alpha);
    if (!left.ok) return {false, Side::left, left.witness, left.deficiency};
    ConditionResult right = check_condition(mirror(g), alpha);
    if (!right.ok)
        return {false, Side::right, VertexSet::right(right.witness.members),
                right.deficiency};
    return {};
}

namespace detail {

inline void require_edge(const BipartiteGraph& g, int u, int v) {
    if (!g.has_edge(u, v))
        throw std::invalid_argument("(" + std::to_string(u) + "," + std::to_string(v) +
                                    ") is not an edge");
}

}  // namespace detail

/// f(uv, alpha): minimum deficiency over sets A with u ∈ A that see v only
/// through u. Encoded exactly by forcing u in and excluding Γ(v) \ {u}.
/// The family always contains {u}, so it is never empty.
inline Rational f_value(const BipartiteGraph& g, int u, int v, const Rational& alpha) {
    detail::require_edge(g, u, v);
    SubsetConstraints c;
    c.forced_in = VertexSet::left({u});
    std::vector<int> shield;
    for (int w : g.adj_v(v))
        if (w != u) shield.push_back(w);
    c.excluded = VertexSet::left(std::move(shield));
    return min_deficiency(g, alpha, c).minimum;
}

/// g(uv, alpha): minimum deficiency over sets A avoiding u with v ∈ Γ(A);
/// defined as 1 when v is a pendant vertex (the family is empty then).
/// Every member of the family contains some other neighbour w of v, so the
/// minimum splits into one constrained solve per such w.
inline Rational g_value(const BipartiteGraph& g, int u, int v, const Rational& alpha) {
    detail::require_edge(g, u, v);
    if (g.deg_v(v) == 1) return Rational(1);
    std::optional<Rational> best;
    for (int w : g.adj_v(v)) {
        if (w == u) continue;
        SubsetConstraints c;
        c.forced_in = VertexSet::left({w});
        c.excluded = VertexSet::left({u});
        Rational value = min_deficiency(g, alpha, c).minimum;
        if (!best || value < *best) best = value;
    }
    return *best;
}

/// An edge of a condition-satisfying graph is alpha-redundant exactly when
/// f(uv, alpha) ≥ 1, i.e. when deleting it preserves the condition.
inline bool is_redundant(const BipartiteGraph& g, int u, int v, const Rational& alpha) {
    detail::require_edge(g, u, v);
    if (!check_condition(g, alpha).ok)
        throw std::invalid_argument(
            "is_redundant: graph does not satisfy the neighbourhood condition");
    return f_value(g, u, v, alpha) >= Rational(1);
}

}  // namespace stmatch
