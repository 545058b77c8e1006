#pragma once

#include <stdexcept>
#include <string>

#include "stdp/graph.hpp"

namespace stdp {

struct PathPair {
    Path p1;
    Path p2;
    Weight weight = 0;
};

class PreconditionViolated : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class CombineCase { A, B, C1, C2 };

struct CombineReport {
    CombineCase which = CombineCase::A;
    bool mirrored = false;  // the later first-meeting vertex belonged to P1
};

const char* to_string(CombineCase c);

// Stitches P-paths ({p1,p2} -> {v1,v2}) with locally cheapest Q-paths
// ({v1,v2} -> {q1,q2}) meeting at tree `tree`. `first_trees` is a bitmask of
// the trees only the P side may use; `tree` must not be in it. The result runs
// from {p1,p2} to {q1,q2} and weighs at most the input total.
PathPair combine(const Instance& inst, const NegativeForest& forest, const PathPair& P, const PathPair& Q,
                 int tree, unsigned first_trees, CombineReport* report = nullptr);

}  // namespace stdp
