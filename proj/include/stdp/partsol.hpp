#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "stdp/conspath.hpp"
#include "stdp/treekit.hpp"
#include "stdp/uncross.hpp"

namespace stdp {

class TableOrderViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Write-once memo of shortest paths, keyed by the alive vertex set and the endpoints.
class SpCache {
public:
    std::optional<PathResult> query(const GraphView& g, int u, int v);
    long hits() const { return hits_; }
    long misses() const { return misses_; }

private:
    std::unordered_map<std::string, std::optional<PathResult>> memo_;
    long hits_ = 0;
    long misses_ = 0;
};

// G<P,u,v,tau>: drop subtrees T_h missing P, the vertices of P, and vertices
// of trees outside tau (other than the spine's tree); u and v always stay.
// The edges of P are cut as well.
GraphView auxiliary_graph(const Instance& inst, const NegativeForest& forest, const Spine& spine, const Path& P,
                          int u, int v, unsigned tau);

struct PartialEntry {
    Path q1;  // ends at u
    Path q2;  // ends at v
    Weight weight = 0;
};

// F(u,v,tau) for one spine. Keys are vertices of the spine's tree and tree
// bitmasks without the spine's own bit.
class PartSolTable {
public:
    PartSolTable(const Instance& inst, const NegativeForest& forest, Spine spine, SpCache* cache = nullptr);
    PartSolTable(const PartSolTable&) = delete;
    PartSolTable& operator=(const PartSolTable&) = delete;

    const Instance& instance() const { return *inst_; }
    const NegativeForest& forest() const { return *forest_; }
    const Spine& spine() const { return spine_; }
    SpCache& cache() const { return *cache_; }
    unsigned full_mask() const { return full_; }

    bool computed(int u, int v, unsigned tau) const;
    // Throws TableOrderViolation when the entry has not been filled yet.
    const std::optional<PartialEntry>& get(int u, int v, unsigned tau) const;
    void set(int u, int v, unsigned tau, std::optional<PartialEntry> entry);

    struct Key {
        int u, v;
        unsigned tau;
    };
    // All keys in fill order: subtree of u, subtree of v, u, v, then tau ascending.
    std::vector<Key> keys() const;

    std::vector<unsigned> submasks(unsigned mask) const;  // ascending

private:
    size_t slot(int u, int v, unsigned tau) const;

    const Instance* inst_;
    const NegativeForest* forest_;
    Spine spine_;
    SpCache own_cache_;
    SpCache* cache_;
    unsigned full_ = 0;
    std::vector<int> local_;  // vertex -> index within the tree, -1 outside
    int size_ = 0;
    std::vector<char> state_;  // 0 unset, 1 none, 2 stored
    std::vector<std::optional<PartialEntry>> cells_;
};

// Minimum-weight partial solution for (u,v,tau) from entries with u' in an earlier subtree.
std::optional<PartialEntry> part_sol(int u, int v, unsigned tau, const PartSolTable& table);

// Fills every key of the table in order.
void fill_table(PartSolTable& table);

// Minimum-weight permissively disjoint ({a1,a2},{b1,b2})-paths, or nullopt.
// Throws EmptyIntersection when T[a1,b1] and T[a2,b2] share no edge.
std::optional<PathPair> perm_disjoint(const Instance& inst, const NegativeForest& forest, int tree, int a1, int a2,
                                      int b1, int b2, SpCache* cache = nullptr);

}  // namespace stdp
