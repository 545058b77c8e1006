#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stdp {

// Weights are stored doubled so that gadget weights |w(T[a1,a2])|/2 stay integral.
using Weight = std::int64_t;

// A path is its vertex sequence. A single vertex is a legal path of weight 0.
using Path = std::vector<int>;

struct Edge {
    int u;
    int v;
    Weight w;
};

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DuplicateEdge : public GraphError {
public:
    using GraphError::GraphError;
};

class SelfLoop : public GraphError {
public:
    using GraphError::GraphError;
};

class BadTerminal : public GraphError {
public:
    using GraphError::GraphError;
};

class UnknownEdge : public GraphError {
public:
    using GraphError::GraphError;
};

class VertexNotInTree : public GraphError {
public:
    using GraphError::GraphError;
};

class NegativeCycleInForest : public GraphError {
public:
    NegativeCycleInForest(std::vector<int> cycle, const std::string& msg)
        : GraphError(msg), cycle_(std::move(cycle)) {}
    const std::vector<int>& cycle() const { return cycle_; }

private:
    std::vector<int> cycle_;
};

// Undirected simple graph with scaled integer weights and terminals s, t.
class Instance {
public:
    Instance() = default;

    // Builds from already-scaled weights. Edges are normalized to u < v and sorted.
    static Instance from_scaled(int n, std::vector<Edge> edges, int s, int t);

    int n() const { return n_; }
    int m() const { return static_cast<int>(edges_.size()); }
    int s() const { return s_; }
    int t() const { return t_; }

    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int id) const { return edges_[id]; }

    // Neighbours of v as (neighbour, edge id), ascending by neighbour.
    const std::vector<std::pair<int, int>>& adj(int v) const { return adj_[v]; }

    int edge_id(int u, int v) const;  // -1 when absent
    bool has_edge(int u, int v) const { return edge_id(u, v) >= 0; }
    Weight weight(int u, int v) const;  // throws UnknownEdge

private:
    int n_ = 0;
    int s_ = 0;
    int t_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<int, int>>> adj_;
    std::vector<int> index_;  // n*n table of edge ids
};

// Raw edges carry unscaled integer weights; they are doubled on the way in.
Instance build_instance(int n, const std::vector<std::array<long long, 3>>& raw, int s, int t);

struct NegTree {
    int index = 0;
    std::vector<int> vertices;  // ascending
    std::vector<int> edges;     // edge ids, ascending
    Weight total = 0;

    bool contains(int v) const;
};

class NegativeForest {
public:
    NegativeForest() = default;

    int c() const { return static_cast<int>(trees_.size()); }
    const std::vector<NegTree>& trees() const { return trees_; }
    const NegTree& tree(int i) const { return trees_[i]; }

    int tree_of_vertex(int v) const { return vertex_tree_[v]; }  // -1 when in no tree
    int tree_of_edge(int e) const { return edge_tree_[e]; }      // -1 for non-negative edges

    // Unique path inside tree `tr` from a to b. Throws VertexNotInTree.
    Path path(int tr, int a, int b) const;
    Weight path_weight(int tr, int a, int b) const;

    // Tree neighbours of v, ascending.
    const std::vector<int>& tree_adj(int v) const { return tree_adj_[v]; }

    friend NegativeForest negative_forest(const Instance& inst);

private:
    std::vector<NegTree> trees_;
    std::vector<int> vertex_tree_;
    std::vector<int> edge_tree_;
    std::vector<int> parent_;
    std::vector<int> depth_;
    std::vector<Weight> up_weight_;  // weight of edge to parent
    std::vector<std::vector<int>> tree_adj_;
};

// Components of the subgraph spanned by negative edges. Throws NegativeCycleInForest.
NegativeForest negative_forest(const Instance& inst);

struct ConservativenessCertificate {
    bool ok = true;
    std::vector<int> cycle;  // closed: front() == back()
    Weight weight = 0;
};

ConservativenessCertificate is_conservative(const Instance& inst);

// Walk as a vertex sequence; closed when it returns to its start.
struct Walk {
    std::vector<int> vertices;
    bool closed() const { return vertices.size() > 1 && vertices.front() == vertices.back(); }
};

Weight weight_of(const Instance& inst, const std::vector<int>& edge_ids);
Weight weight_of(const Instance& inst, const Walk& walk);
Weight path_weight(const Instance& inst, const Path& p);

// Edge ids along a vertex sequence. Throws UnknownEdge.
std::vector<int> edges_of(const Instance& inst, const Path& p);

bool is_simple_path(const Instance& inst, const Path& p);

}  // namespace stdp
