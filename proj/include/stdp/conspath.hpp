#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "stdp/graph.hpp"

namespace stdp {

// The subgraph of an instance induced by the vertices marked alive, minus the cut edges.
struct GraphView {
    const Instance* inst = nullptr;
    std::vector<char> alive;

    GraphView() = default;
    explicit GraphView(const Instance& g) : inst(&g), alive(g.n(), 1) {}

    std::vector<int> cut;  // edges removed although both ends stay alive

    bool edge_alive(int e) const {
        const Edge& ed = inst->edge(e);
        return alive[ed.u] && alive[ed.v] && std::find(cut.begin(), cut.end(), e) == cut.end();
    }
};

struct PathResult {
    Path path;
    Weight weight = 0;
};

class NonConservativeView : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NegativeWeightSeen : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class SpBackend {
    Matching,  // minimum-weight {u,v}-join through perfect matching
    Search,    // exhaustive best-first search, for small views only
};

// Minimum-weight u-v path in a conservative view; nullopt when disconnected.
std::optional<PathResult> conservative_shortest_path(const GraphView& g, int u, int v,
                                                     SpBackend backend = SpBackend::Matching);

// Dijkstra with lexicographic tie-breaking. Throws NegativeWeightSeen.
std::optional<PathResult> nonneg_shortest_path(const GraphView& g, int u, int v);

// Minimum-weight even-degree edge set (an empty join). Returns its weight and
// edge ids; the weight is negative exactly when the view is not conservative.
struct JoinResult {
    Weight weight = 0;
    std::vector<int> edges;
};
std::optional<JoinResult> min_weight_join(const GraphView& g, const std::vector<int>& odd_set);

// Splits an even-degree edge set into edge-disjoint simple cycles (closed vertex lists).
std::vector<std::vector<int>> split_cycles(const Instance& inst, const std::vector<int>& edge_ids);

}  // namespace stdp
