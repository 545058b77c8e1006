#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stdp/graph.hpp"

namespace stdp {

class NonConservativeInput : public std::runtime_error {
public:
    NonConservativeInput(ConservativenessCertificate cert, const std::string& msg)
        : std::runtime_error(msg), cert_(std::move(cert)) {}
    const ConservativenessCertificate& certificate() const { return cert_; }

private:
    ConservativenessCertificate cert_;
};

// Two openly disjoint s-t paths and their exact scaled weight.
struct Solution {
    Path p1;
    Path p2;
    Weight weight = 0;
};

struct SolveOptions {
    bool assert_invariants = false;  // recheck sub-instances and every stitch
};

struct SolveStats {
    long separable_flows = 0;
    long sub_instance_pairs = 0;
    long guesses = 0;
    long perm_disjoint_calls = 0;
    long stitches = 0;
    long stitch_checks = 0;
    long pruned = 0;
    int max_depth = 0;
    std::vector<std::string> violations;
};

// A sub-instance keeps the parent's vertex ids; vertex n of the parent is the gadget.
struct SubInstance {
    Instance inst;
    int gadget = -1;
    Weight gadget_weight = 0;  // scaled weight of each gadget edge
    std::vector<int> deleted_vertices;
    std::vector<int> deleted_edges;  // parent edge ids
};

bool reasonable_guess(const NegativeForest& forest, int tree, int a1, int a2, int b1, int b2, int s, int t);

// Openly disjoint s-t paths, not both the single edge st.
bool is_solution(const Instance& inst, const Path& p1, const Path& p2);

std::optional<Solution> solve_separable(const Instance& inst, SolveStats* stats = nullptr);

// Trees are bitmasks over the parent's tree indices.
std::pair<SubInstance, SubInstance> build_sub_instances_s(const Instance& inst, const NegativeForest& forest,
                                                          unsigned trees_s, int a1, int a2, int tree);
std::pair<SubInstance, SubInstance> build_sub_instances_t(const Instance& inst, const NegativeForest& forest,
                                                          unsigned trees_t, int b1, int b2, int tree);

// Throws NonConservativeInput.
std::optional<Solution> solve(const Instance& inst, const SolveOptions& options = {}, SolveStats* stats = nullptr);

}  // namespace stdp
