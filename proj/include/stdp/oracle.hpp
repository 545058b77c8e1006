#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "stdp/flows.hpp"
#include "stdp/graph.hpp"
#include "stdp/treekit.hpp"
#include "stdp/uncross.hpp"

namespace stdp {

class TooLarge : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParamsInfeasible : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct OracleResult {
    Weight weight = 0;
    PathPair paths;
};

// Exhaustive search over openly disjoint s-t path pairs. Throws TooLarge above max_n.
std::optional<OracleResult> brute_force_stdp(const Instance& inst, int max_n = 12);

// Cheapest permissively disjoint ({a1,a2},{b1,b2})-paths; p1 starts at a1.
std::optional<OracleResult> brute_force_perm_disjoint(const Instance& inst, int a1, int a2, int b1, int b2,
                                                      int max_n = 12);

// Cheapest pair accepted by is_partial_solution for key (u, v, tau).
std::optional<OracleResult> brute_force_partial_solution(const Instance& inst, const NegativeForest& forest,
                                                         const Spine& spine, int u, int v, unsigned tau,
                                                         int max_n = 10);

// Cheapest integral flow of the given value, over all multisets of source-sink paths.
std::optional<Weight> brute_force_min_cost_flow(const FlowNetwork& net, int target);

struct GenParams {
    int n = 8;
    int c = 1;
    double density = 0.4;       // probability of each positive edge
    long long wmax = 5;         // negative weights drawn from [-wmax, -1]
    int max_tree_size = 4;      // vertices per negative tree, at least 2
    bool tight = false;         // positive weights from [1, 2M]; non-conservative draws are redrawn
    std::uint64_t seed = 1;
};

// Unscaled instance as raw edges, then built. Throws ParamsInfeasible.
Instance generate_instance(const GenParams& params);

}  // namespace stdp
