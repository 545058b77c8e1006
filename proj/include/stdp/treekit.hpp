#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stdp/graph.hpp"

namespace stdp {

class EmptyIntersection : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class BadStart : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Path tree_path(const NegativeForest& forest, int tree, int a, int b);

// The common part X of T[a1,b1] and T[a2,b2], with the subtrees hanging off it.
// Indices are 0-based: x_0 is the spine vertex nearest a1 and a2.
struct Spine {
    int tree = -1;
    int a1 = -1, a2 = -1, b1 = -1, b2 = -1;
    bool swapped = false;  // a2 and b2 were exchanged to put a1, a2 on the same side
    std::vector<int> X;
    std::vector<int> sub;  // vertex -> subtree index, -1 outside the tree; sized to the tree's largest id
    std::vector<std::vector<int>> subtrees;
    Path A1, A2;  // T[a_i, x_0]
    Path B1, B2;  // T[b_i, x_{r-1}]

    int r() const { return static_cast<int>(X.size()); }
    int a(int h) const { return h == 0 ? a1 : a2; }
    const Path& A(int h) const { return h == 0 ? A1 : A2; }
};

// Throws EmptyIntersection when the two tree paths share no edge.
Spine build_spine(const NegativeForest& forest, int tree, int a1, int a2, int b1, int b2);

struct Shortcut {
    int tree = -1;
    int z = -1, z2 = -1;  // z < z2
    int on_path = 0;      // 0 for P1, 1 for P2
    Path interior;        // T[z, z2]
};

std::vector<Shortcut> find_shortcuts(const Path& p1, const Path& p2, const NegativeForest& forest);

bool is_locally_cheapest(const Path& p1, const Path& p2, const NegativeForest& forest);

struct AmendStats {
    int steps = 0;
    int bound_violations = 0;  // replaced subpath lighter than |w(T[z,z'])|
};

// Replaces shortcut-spanned subpaths by tree paths until none is left.
std::pair<Path, Path> amend(Path p1, Path p2, const Instance& inst, const NegativeForest& forest,
                            AmendStats* stats = nullptr);

struct ShapeFlags {
    bool x_monotone = true;
    bool plain = true;
    bool quasi_monotone = true;
};

// Throws BadStart unless q starts at a1 or a2.
ShapeFlags shape_predicates(const Path& q, const Spine& spine, const NegativeForest& forest);

// Returns the first violated condition of a partial solution for (u, v, tau), or nullopt.
// tau is a bitmask over tree indices.
std::optional<std::string> partial_solution_violation(const Path& q1, const Path& q2, int u, int v,
                                                      unsigned tau, const Spine& spine,
                                                      const Instance& inst, const NegativeForest& forest);

bool is_partial_solution(const Path& q1, const Path& q2, int u, int v, unsigned tau, const Spine& spine,
                         const Instance& inst, const NegativeForest& forest);

bool permissively_disjoint(const Path& p1, const Path& p2);

// The reversed vertex sequence.
Path reversed(Path p);

// Concatenates a and b where b starts at a's last vertex.
Path join_paths(const Path& a, const Path& b);

// Subpath between two vertices of p, in the direction from `from` to `to`.
Path subpath(const Path& p, int from, int to);

}  // namespace stdp
