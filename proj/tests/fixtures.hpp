#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "stdp/graph.hpp"
#include "stdp/oracle.hpp"
#include "stdp/solver.hpp"
#include "stdp/treekit.hpp"
#include "stdp/uncross.hpp"

namespace fixtures {

using stdp::Instance;
using stdp::Path;
using stdp::Weight;

// s=0, u=1, v=2, t=3; edges su, sv, ut, vt of weight 1 and uv of weight -1.
inline Instance i1() { return stdp::build_instance(4, {{0, 1, 1}, {0, 2, 1}, {1, 3, 1}, {2, 3, 1}, {1, 2, -1}}, 0, 3); }
constexpr int S = 0, U = 1, V = 2, T = 3;

inline Instance generated(int n, int c, std::uint64_t seed, double density = 0.45, int max_tree = 4) {
    stdp::GenParams p;
    p.n = n;
    p.c = c;
    p.density = density;
    p.seed = seed;
    p.max_tree_size = max_tree;
    return stdp::generate_instance(p);
}

// Every simple a-b path with its weight.
inline std::vector<std::pair<Path, Weight>> simple_paths(const Instance& g, int a, int b) {
    std::vector<std::pair<Path, Weight>> out;
    std::vector<char> on(g.n(), 0);
    Path cur{a};
    on[a] = 1;
    std::function<void(int, Weight)> go = [&](int x, Weight w) {
        if (x == b) {
            out.push_back({cur, w});
            return;
        }
        for (auto [y, e] : g.adj(x)) {
            if (on[y]) continue;
            on[y] = 1;
            cur.push_back(y);
            go(y, w + g.edge(e).w);
            cur.pop_back();
            on[y] = 0;
        }
    };
    go(a, 0);
    return out;
}

// Minimum weight over simple cycles, by enumeration; nullopt when acyclic.
inline std::optional<Weight> min_cycle_weight(const Instance& g) {
    std::optional<Weight> best;
    for (int e = 0; e < g.m(); ++e) {
        const auto& ed = g.edge(e);
        for (const auto& [p, w] : simple_paths(g, ed.v, ed.u)) {
            if (p.size() < 3) continue;  // the edge itself
            if (!best || w + ed.w < *best) best = w + ed.w;
        }
    }
    return best;
}

// Random simple path by randomized depth-first search; edge_ok filters edge ids.
inline std::optional<Path> random_path(const Instance& g, int from, int to, const std::vector<char>& blocked,
                                       std::mt19937_64& rng, const std::function<bool(int)>& edge_ok) {
    if (blocked[from] || blocked[to]) return std::nullopt;
    std::vector<char> on(g.n(), 0);
    Path cur{from};
    on[from] = 1;
    std::function<bool(int)> go = [&](int x) {
        if (x == to) return true;
        auto nb = g.adj(x);
        std::shuffle(nb.begin(), nb.end(), rng);
        for (auto [y, e] : nb) {
            if (on[y] || blocked[y] || !edge_ok(e)) continue;
            on[y] = 1;
            cur.push_back(y);
            if (go(y)) return true;
            cur.pop_back();
        }
        return false;
    };
    if (!go(from)) return std::nullopt;
    return cur;
}

// Inputs for combine: P-pair into v1, v2 on `tree`, locally cheapest Q-pair out of them.
struct Quadruple {
    Instance inst;
    stdp::NegativeForest forest;
    stdp::PathPair P, Q;
    int tree = -1;
    unsigned first = 0;
};

// Checks the combine preconditions directly.
inline bool quadruple_ok(const Quadruple& q) {
    const auto& g = q.inst;
    const auto& f = q.forest;
    const Path* all[4] = {&q.P.p1, &q.P.p2, &q.Q.p1, &q.Q.p2};
    for (const Path* p : all)
        if (!stdp::is_simple_path(g, *p)) return false;
    const int v1 = q.P.p1.back(), v2 = q.P.p2.back();
    if (v1 == v2 || q.Q.p1.front() != v1 || q.Q.p2.front() != v2) return false;
    if (f.tree_of_vertex(v1) != q.tree || f.tree_of_vertex(v2) != q.tree) return false;
    if ((q.first >> q.tree) & 1u) return false;
    if (!stdp::permissively_disjoint(q.P.p1, q.P.p2) || !stdp::permissively_disjoint(q.Q.p1, q.Q.p2)) return false;
    for (const Path* p : {&q.P.p1, &q.P.p2})
        for (int x : *p)
            if (f.tree_of_vertex(x) == q.tree && x != v1 && x != v2) return false;
    for (int k = 0; k < 4; ++k)
        for (int e : stdp::edges_of(g, *all[k])) {
            int tr = f.tree_of_edge(e);
            if (tr < 0) continue;
            bool in_first = (q.first >> tr) & 1u;
            if (in_first != (k < 2)) return false;
        }
    return stdp::is_locally_cheapest(q.Q.p1, q.Q.p2, f);
}

inline std::optional<Quadruple> random_quadruple(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Quadruple q;
    int n = 7 + static_cast<int>(rng() % 4);
    int c = 1 + static_cast<int>(rng() % 3);
    q.inst = generated(n, c, seed * 7 + 1, 0.5, 4);
    q.forest = stdp::negative_forest(q.inst);
    const auto& g = q.inst;
    const auto& f = q.forest;
    q.tree = static_cast<int>(rng() % f.c());
    for (int tr = 0; tr < f.c(); ++tr)
        if (tr != q.tree && rng() % 2) q.first |= 1u << tr;
    const auto& tv = f.tree(q.tree).vertices;
    int v1 = tv[rng() % tv.size()], v2 = tv[rng() % tv.size()];
    if (v1 == v2) return std::nullopt;

    auto pick = [&] { return static_cast<int>(rng() % n); };
    auto p_edge = [&](int e) { int tr = f.tree_of_edge(e); return tr < 0 || ((q.first >> tr) & 1u); };
    auto q_edge = [&](int e) { int tr = f.tree_of_edge(e); return tr < 0 || !((q.first >> tr) & 1u); };

    std::vector<char> blocked(n, 0);
    for (int x : tv) blocked[x] = x != v1;
    int p1 = pick();
    auto P1 = random_path(g, p1, v1, blocked, rng, p_edge);
    if (!P1) return std::nullopt;
    for (int x : tv) blocked[x] = x != v2;
    for (int x : *P1) blocked[x] = 1;
    int p2 = rng() % 5 == 0 ? p1 : pick();
    if (p2 == p1) blocked[p1] = 0;
    auto P2 = random_path(g, p2, v2, blocked, rng, p_edge);
    if (!P2) return std::nullopt;

    std::fill(blocked.begin(), blocked.end(), 0);
    blocked[v2] = 1;
    int q1 = pick();
    auto Q1 = random_path(g, v1, q1, blocked, rng, q_edge);
    if (!Q1) return std::nullopt;
    std::fill(blocked.begin(), blocked.end(), 0);
    for (int x : *Q1) blocked[x] = 1;
    int q2 = rng() % 5 == 0 ? q1 : pick();
    if (q2 == q1) blocked[q1] = 0;
    auto Q2 = random_path(g, v2, q2, blocked, rng, q_edge);
    if (!Q2) return std::nullopt;
    auto [A1, A2] = stdp::amend(*Q1, *Q2, g, f);

    q.P = {*P1, *P2, stdp::path_weight(g, *P1) + stdp::path_weight(g, *P2)};
    q.Q = {A1, A2, stdp::path_weight(g, A1) + stdp::path_weight(g, A2)};
    if (!quadruple_ok(q)) return std::nullopt;
    return q;
}

// All reasonable (a1, a2, b1, b2) on one tree, each unordered pair once.
struct Guess {
    int a1, a2, b1, b2;
};
inline std::vector<Guess> reasonable_guesses(const Instance& g, const stdp::NegativeForest& f, int tree) {
    std::vector<Guess> out;
    const auto& vs = f.tree(tree).vertices;
    for (int a1 : vs)
        for (int a2 : vs)
            for (int b1 : vs)
                for (int b2 : vs) {
                    if (a1 > a2 || (a1 == a2 && b1 > b2)) continue;
                    if (stdp::reasonable_guess(f, tree, a1, a2, b1, b2, g.s(), g.t())) out.push_back({a1, a2, b1, b2});
                }
    return out;
}

}  // namespace fixtures
