#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "stdp/graph.hpp"

namespace stdp {

class BadSelection : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NegativeCycleDetected : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonIntegralFlow : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Arc {
    int tail;
    int head;
    int cap;
    Weight cost;
};

// Directed network with vertex capacities realized by splitting. Vertex v of the
// instance enters at node v and leaves at node out_node[v] (equal to v when unsplit).
struct FlowNetwork {
    int nodes = 0;
    std::vector<Arc> arcs;
    int source = -1;
    int sink = -1;
    std::vector<int> vertex_of;  // node -> instance vertex, -1 for s*, t*
    std::vector<int> out_node;   // instance vertex -> node its arcs leave from
};

struct Flow {
    std::vector<int> arc_flow;
    int value = 0;
    Weight cost = 0;
};

// Tree index -> chosen vertex z_T, for every tree avoiding s and t.
using Selection = std::map<int, int>;

FlowNetwork build_Nz(const Instance& inst, const NegativeForest& forest, const Selection& Z);

// Arcs entering s or t are only those from s*, so each unit of flow leaves s*
// through a single terminal.
FlowNetwork build_Naabb(const Instance& inst, const NegativeForest& forest, int a1, int b1, int a2, int b2);

// Successive shortest paths; Bellman-Ford seeds the potentials.
std::optional<Flow> min_cost_flow(const FlowNetwork& net, int target);

// Source-to-sink paths in instance vertices; cycles carried by the flow are dropped.
std::vector<Path> decompose_flow(const FlowNetwork& net, const Flow& flow);

}  // namespace stdp
