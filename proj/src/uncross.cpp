#include "stdp/uncross.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "stdp/treekit.hpp"

namespace stdp {

const char* to_string(CombineCase c) {
    switch (c) {
        case CombineCase::A: return "A";
        case CombineCase::B: return "B";
        case CombineCase::C1: return "C/1";
        case CombineCase::C2: return "C/2";
    }
    return "?";
}

namespace {

[[noreturn]] void fail(const std::string& what) { throw PreconditionViolated(what); }

std::unordered_map<int, int> index_of(const Path& p) {
    std::unordered_map<int, int> pos;
    for (size_t i = 0; i < p.size(); ++i) pos[p[i]] = static_cast<int>(i);
    return pos;
}

bool same_multiset(int a, int b, int c, int d) { return (a == c && b == d) || (a == d && b == c); }

void check_edges(const Instance& inst, const NegativeForest& forest, const Path& p, unsigned mask, bool inside,
                 const char* side) {
    for (size_t i = 0; i + 1 < p.size(); ++i) {
        int tr = forest.tree_of_edge(inst.edge_id(p[i], p[i + 1]));
        if (tr < 0) continue;
        bool in_mask = (mask >> tr) & 1u;
        if (in_mask != inside)
            fail(std::string("(ii) ") + side + " uses edge " + std::to_string(p[i]) + "-" + std::to_string(p[i + 1]) +
                 " of tree " + std::to_string(tr));
    }
}

}  // namespace

PathPair combine(const Instance& inst, const NegativeForest& forest, const PathPair& P, const PathPair& Q,
                 int tree, unsigned first_trees, CombineReport* report) {
    for (const Path* p : {&P.p1, &P.p2, &Q.p1, &Q.p2})
        if (!is_simple_path(inst, *p)) fail("input is not a path");
    if ((first_trees >> tree) & 1u) fail("the meeting tree must lie on the Q side");

    Path Pp[2] = {P.p1, P.p2};
    Path Qq[2] = {Q.p1, Q.p2};
    const int v1 = Pp[0].back(), v2 = Pp[1].back();
    if (v1 == v2) fail("v1 = v2 = " + std::to_string(v1));
    if (forest.tree_of_vertex(v1) != tree || forest.tree_of_vertex(v2) != tree) fail("v1 or v2 outside the tree");
    if (Qq[0].front() == v2 && Qq[1].front() == v1) std::swap(Qq[0], Qq[1]);
    if (Qq[0].front() != v1 || Qq[1].front() != v2) fail("Q-paths do not start where P-paths end");
    if (!permissively_disjoint(Pp[0], Pp[1])) fail("P-paths are not permissively disjoint");
    if (!permissively_disjoint(Qq[0], Qq[1])) fail("Q-paths are not permissively disjoint");

    for (int i = 0; i < 2; ++i)
        for (int x : Pp[i])
            if (forest.tree_of_vertex(x) == tree && x != v1 && x != v2)
                fail("(i) P-path meets the tree at " + std::to_string(x));
    for (int i = 0; i < 2; ++i) {
        check_edges(inst, forest, Pp[i], first_trees, true, "P-side");
        check_edges(inst, forest, Qq[i], first_trees, false, "Q-side");
    }
    if (!is_locally_cheapest(Qq[0], Qq[1], forest)) fail("Q-paths admit a shortcut");

    const Weight total = path_weight(inst, Pp[0]) + path_weight(inst, Pp[1]) + path_weight(inst, Qq[0]) +
                         path_weight(inst, Qq[1]);
    const int p_start[2] = {Pp[0].front(), Pp[1].front()};
    const int q_end[2] = {Qq[0].back(), Qq[1].back()};

    // All four ends coincide: the input is a closed walk, and staying put costs nothing.
    if (p_start[0] == p_start[1] && q_end[0] == q_end[1] && p_start[0] == q_end[0]) {
        if (report) *report = CombineReport{};
        return PathPair{{p_start[0]}, {p_start[0]}, 0};
    }

    auto onq0 = index_of(Qq[0]);
    auto onq1 = index_of(Qq[1]);
    int y[2];
    for (int i = 0; i < 2; ++i) {
        // A shared start that is itself v_{3-i} does not count as a meeting for P_i.
        bool skip = p_start[0] == p_start[1] && Pp[1 - i].size() == 1 && Pp[i].size() > 1;
        auto it = std::find_if(Pp[i].begin() + skip, Pp[i].end(),
                               [&](int x) { return onq0.count(x) || onq1.count(x); });
        y[i] = *it;  // v_i is always on a Q-path
    }

    CombineReport rep;
    Path S[2];
    if (onq0.count(y[0]) && onq1.count(y[1])) {
        rep.which = CombineCase::A;
        for (int i = 0; i < 2; ++i)
            S[i] = join_paths(subpath(Pp[i], p_start[i], y[i]), subpath(Qq[i], y[i], Qq[i].back()));
    } else if (onq1.count(y[0]) && onq0.count(y[1])) {
        rep.which = CombineCase::B;
        for (int i = 0; i < 2; ++i)
            S[i] = join_paths(subpath(Pp[i], p_start[i], y[i]), subpath(Qq[1 - i], y[i], Qq[1 - i].back()));
    } else {
        // Both first meetings lie on one Q-path; relabel so that it is Qq[0].
        bool relabel = !onq0.count(y[0]);
        if (relabel) {
            std::swap(Pp[0], Pp[1]);
            std::swap(Qq[0], Qq[1]);
            std::swap(y[0], y[1]);
            std::swap(onq0, onq1);
        }
        const int w2 = Qq[1].front();
        int i = onq0.at(y[0]) <= onq0.at(y[1]) ? 0 : 1;
        int k = 1 - i;
        rep.mirrored = (i == 1) != relabel;

        int at = onq0.at(y[i]);
        while (forest.tree_of_vertex(Qq[0][at]) != tree) --at;
        Path walk = forest.path(tree, Qq[0][at], w2);
        size_t ui = 0;
        while (ui + 1 < walk.size()) {
            auto a = onq0.find(walk[ui]), b = onq0.find(walk[ui + 1]);
            if (a == onq0.end() || b == onq0.end() || std::abs(a->second - b->second) != 1) break;
            ++ui;
        }
        size_t uj = ui + 1;
        while (uj < walk.size() && !onq1.count(walk[uj])) ++uj;
        if (uj >= walk.size()) fail("connector does not reach the second Q-path");
        const int u = walk[ui], u2 = walk[uj];
        Path connector(walk.begin() + ui, walk.begin() + uj + 1);
        rep.which = onq0.at(u) <= onq0.at(y[i]) ? CombineCase::C1 : CombineCase::C2;

        Path si = join_paths(subpath(Pp[i], Pp[i].front(), y[i]), subpath(Qq[0], y[i], u));
        si = join_paths(si, connector);
        si = join_paths(si, subpath(Qq[1], u2, Qq[1].back()));
        Path sk = join_paths(subpath(Pp[k], Pp[k].front(), y[k]), subpath(Qq[0], y[k], Qq[0].back()));
        S[i] = std::move(si);
        S[k] = std::move(sk);
        if (relabel) std::swap(S[0], S[1]);
    }

    // Shared start and end collapsed onto one edge: reroute the other path through the tree.
    if (S[0] == S[1] && S[0].size() == 2) {
        int i = Pp[0].size() == 1 ? 0 : 1, k = 1 - i;
        const Path& qk = Qq[k];
        auto onqk = index_of(qk);
        Path walk = forest.path(tree, p_start[0], qk.front());
        size_t uj = 1;
        while (!onqk.count(walk[uj])) ++uj;  // the walk ends on qk
        S[k] = join_paths(Path(walk.begin(), walk.begin() + uj + 1), subpath(qk, walk[uj], qk.back()));
    }

    PathPair out{std::move(S[0]), std::move(S[1]), 0};
    if (!is_simple_path(inst, out.p1) || !is_simple_path(inst, out.p2)) fail("stitched walk repeats a vertex");
    if (!same_multiset(out.p1.front(), out.p2.front(), p_start[0], p_start[1]) ||
        !same_multiset(out.p1.back(), out.p2.back(), q_end[0], q_end[1]))
        fail("stitched paths have wrong endpoints");
    if (!permissively_disjoint(out.p1, out.p2)) fail("stitched paths are not permissively disjoint");
    out.weight = path_weight(inst, out.p1) + path_weight(inst, out.p2);
    if (out.weight > total) fail("stitched pair is heavier than its parts");
    if (report) *report = rep;
    return out;
}

}  // namespace stdp
