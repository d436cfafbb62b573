#pragma once

#include <cstdint>
#include <vector>

namespace stmatch {

/// Dinic's maximum-flow on integer capacities. Exact; no scaling tricks.
/// The instance is reusable: reset() clears it without releasing memory,
/// which matters when millions of small networks are solved in a loop.
class MaxFlow {
public:
    void reset(int node_count) {
        head_.assign(node_count, -1);
        arcs_.clear();
        level_.assign(node_count, -1);
        iter_.assign(node_count, -1);
        nodes_ = node_count;
    }

    /// Adds a directed arc and its zero-capacity reverse arc.
    void add_arc(int from, int to, std::int64_t cap) {
        arcs_.push_back({to, head_[from], cap});
        head_[from] = static_cast<int>(arcs_.size()) - 1;
        arcs_.push_back({from, head_[to], 0});
        head_[to] = static_cast<int>(arcs_.size()) - 1;
    }

    std::int64_t run(int source, int sink) {
        std::int64_t total = 0;
        while (bfs(source, sink)) {
            iter_ = head_;
            while (std::int64_t pushed = dfs(source, sink, kInfinite)) total += pushed;
        }
        return total;
    }

    /// After run(): true iff the node is on the source side of the minimum
    /// cut (reachable in the residual network). The set of reachable nodes
    /// is the inclusion-minimal minimum cut source side.
    bool source_side(int node) const { return level_[node] >= 0; }

    /// Residual capacity of an arc; arcs are numbered in insertion order,
    /// two per add_arc call (forward arc first).
    std::int64_t arc_cap(int arc) const { return arcs_[arc].cap; }

private:
    struct Arc {
        int to;
        int next;
        std::int64_t cap;
    };

    static constexpr std::int64_t kInfinite = INT64_C(1) << 62;

    bool bfs(int source, int sink) {
        std::fill(level_.begin(), level_.end(), -1);
        queue_.clear();
        queue_.push_back(source);
        level_[source] = 0;
        for (std::size_t q = 0; q < queue_.size(); ++q) {
            int x = queue_[q];
            for (int a = head_[x]; a >= 0; a = arcs_[a].next) {
                if (arcs_[a].cap > 0 && level_[arcs_[a].to] < 0) {
                    level_[arcs_[a].to] = level_[x] + 1;
                    queue_.push_back(arcs_[a].to);
                }
            }
        }
        return level_[sink] >= 0;
    }

    std::int64_t dfs(int x, int sink, std::int64_t limit) {
        if (x == sink) return limit;
        for (int& a = iter_[x]; a >= 0; a = arcs_[a].next) {
            Arc& arc = arcs_[a];
            if (arc.cap > 0 && level_[arc.to] == level_[x] + 1) {
                std::int64_t pushed = dfs(arc.to, sink, std::min(limit, arc.cap));
                if (pushed > 0) {
                    arc.cap -= pushed;
                    arcs_[a ^ 1].cap += pushed;
                    return pushed;
                }
            }
        }
        level_[x] = -2;  // dead end for this phase
        return 0;
    }

    int nodes_ = 0;
    std::vector<int> head_;
    std::vector<Arc> arcs_;
    std::vector<int> level_;
    std::vector<int> iter_;
    std::vector<int> queue_;
};

}  // namespace stmatch
