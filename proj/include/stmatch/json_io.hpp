#pragma once

#include <json.hpp>

#include "stmatch/bigraph.hpp"
#include "stmatch/rational.hpp"

namespace stmatch {

using nlohmann::json;

/// Canonical graph format: {"u": <int>, "v": <int>, "edges": [[u,v], ...]}.
/// Unknown keys are ignored on input, so enriched documents (for example
/// generator output with a "meta" object) round-trip through every command.
inline json graph_to_json(const BipartiteGraph& g) {
    json edges = json::array();
    for (auto [u, v] : g.edges()) edges.push_back({u, v});
    return json{{"u", g.u_count()}, {"v", g.v_count()}, {"edges", edges}};
}

inline BipartiteGraph graph_from_json(const json& j) {
    if (!j.is_object() || !j.contains("u") || !j.contains("v") || !j.contains("edges"))
        throw std::invalid_argument("graph JSON must have keys \"u\", \"v\", \"edges\"");
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2)
            throw std::invalid_argument("each edge must be a [u, v] pair");
        edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    }
    return BipartiteGraph(j.at("u").get<int>(), j.at("v").get<int>(), std::move(edges));
}

inline json vertex_set_to_json(const VertexSet& s) {
    return json{{"side", side_name(s.side)}, {"members", s.members}};
}

inline json rational_to_json(const Rational& r) { return json(r.str()); }

}  // namespace stmatch
