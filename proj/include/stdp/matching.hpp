#pragma once

#include <cstdint>
#include <optional>
#include <tuple>
#include <vector>

namespace stdp {

// Maximum-weight matching on a general graph (Edmonds' blossom algorithm with
// dual variables). With max_cardinality the result is maximum weight among the
// maximum-cardinality matchings. Returns mate[v], or -1 for unmatched vertices.
std::vector<int> max_weight_matching(int n,
                                     const std::vector<std::tuple<int, int, std::int64_t>>& edges,
                                     bool max_cardinality);

// Minimum-cost perfect matching on vertices 0..k-1. cost[i*k+j] < 0 marks a
// missing pair. Returns nullopt when no perfect matching exists.
std::optional<std::vector<int>> min_cost_perfect_matching(int k, const std::vector<std::int64_t>& cost);

}  // namespace stdp
