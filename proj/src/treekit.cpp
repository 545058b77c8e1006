#include "stdp/treekit.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace stdp {

namespace {

std::unordered_map<int, int> positions(const Path& p) {
    std::unordered_map<int, int> pos;
    pos.reserve(p.size() * 2);
    for (size_t i = 0; i < p.size(); ++i) pos[p[i]] = static_cast<int>(i);
    return pos;
}

bool consecutive(const std::unordered_map<int, int>& pos, int a, int b) {
    auto ia = pos.find(a), ib = pos.find(b);
    if (ia == pos.end() || ib == pos.end()) return false;
    int d = ia->second - ib->second;
    return d == 1 || d == -1;
}

}  // namespace

Path reversed(Path p) {
    std::reverse(p.begin(), p.end());
    return p;
}

Path join_paths(const Path& a, const Path& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    if (a.back() != b.front()) throw std::logic_error("join_paths: endpoints do not meet");
    Path r = a;
    r.insert(r.end(), b.begin() + 1, b.end());
    return r;
}

Path subpath(const Path& p, int from, int to) {
    auto i = std::find(p.begin(), p.end(), from);
    auto j = std::find(p.begin(), p.end(), to);
    if (i == p.end() || j == p.end()) throw std::logic_error("subpath: vertex not on path");
    if (i <= j) return Path(i, j + 1);
    Path r(j, i + 1);
    std::reverse(r.begin(), r.end());
    return r;
}

bool permissively_disjoint(const Path& p1, const Path& p2) {
    // Shared start and end may not be joined by one shared edge.
    if (p1.size() == 2 && p1 == p2) return false;
    std::unordered_set<int> in1(p1.begin(), p1.end());
    for (int x : p2) {
        if (!in1.count(x)) continue;
        bool start = (x == p1.front() && x == p2.front());
        bool end = (x == p1.back() && x == p2.back());
        if (!start && !end) return false;
    }
    return true;
}

Path tree_path(const NegativeForest& forest, int tree, int a, int b) {
    return forest.path(tree, a, b);
}

Spine build_spine(const NegativeForest& forest, int tree, int a1, int a2, int b1, int b2) {
    Path p1 = forest.path(tree, a1, b1);
    Path p2 = forest.path(tree, a2, b2);
    std::unordered_set<int> on2(p2.begin(), p2.end());

    Spine sp;
    sp.tree = tree;
    for (int x : p1)
        if (on2.count(x)) sp.X.push_back(x);
    if (sp.X.size() < 2) throw EmptyIntersection("tree paths share no edge");

    // a2 must reach x_0 before x_{r-1} along T[a2,b2]; otherwise exchange a2 and b2.
    auto first = std::find(p2.begin(), p2.end(), sp.X.front());
    auto last = std::find(p2.begin(), p2.end(), sp.X.back());
    if (first > last) {
        std::swap(a2, b2);
        sp.swapped = true;
    }
    sp.a1 = a1;
    sp.a2 = a2;
    sp.b1 = b1;
    sp.b2 = b2;

    const NegTree& t = forest.tree(tree);
    int nmax = t.vertices.empty() ? 0 : t.vertices.back() + 1;
    sp.sub.assign(nmax, -1);
    for (size_t i = 0; i < sp.X.size(); ++i) sp.sub[sp.X[i]] = static_cast<int>(i);
    sp.subtrees.assign(sp.X.size(), {});
    for (size_t i = 0; i < sp.X.size(); ++i) {
        std::vector<int> queue{sp.X[i]};
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            int x = queue[qi];
            sp.subtrees[i].push_back(x);
            for (int y : forest.tree_adj(x)) {
                if (y < nmax && sp.sub[y] < 0) {
                    sp.sub[y] = static_cast<int>(i);
                    queue.push_back(y);
                }
            }
        }
        std::sort(sp.subtrees[i].begin(), sp.subtrees[i].end());
    }
    sp.A1 = forest.path(tree, a1, sp.X.front());
    sp.A2 = forest.path(tree, a2, sp.X.front());
    sp.B1 = forest.path(tree, b1, sp.X.back());
    sp.B2 = forest.path(tree, b2, sp.X.back());
    return sp;
}

std::vector<Shortcut> find_shortcuts(const Path& p1, const Path& p2, const NegativeForest& forest) {
    std::unordered_map<int, int> mark;
    for (int x : p1) mark[x] |= 1;
    for (int x : p2) mark[x] |= 2;
    auto pos1 = positions(p1), pos2 = positions(p2);

    std::vector<Shortcut> out;
    std::vector<int> tree_ids;
    for (auto& [x, m] : mark) {
        (void)m;
        int tr = forest.tree_of_vertex(x);
        if (tr >= 0) tree_ids.push_back(tr);
    }
    std::sort(tree_ids.begin(), tree_ids.end());
    tree_ids.erase(std::unique(tree_ids.begin(), tree_ids.end()), tree_ids.end());

    for (int tr : tree_ids) {
        std::vector<int> marked;
        for (int x : forest.tree(tr).vertices)
            if (mark.count(x)) marked.push_back(x);
        for (int z : marked) {
            // Walk the tree from z through unmarked vertices only.
            std::unordered_map<int, int> prev{{z, -1}};
            std::vector<int> stack{z};
            std::vector<int> hits;
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                for (int y : forest.tree_adj(x)) {
                    if (prev.count(y)) continue;
                    prev[y] = x;
                    if (mark.count(y))
                        hits.push_back(y);
                    else
                        stack.push_back(y);
                }
            }
            std::sort(hits.begin(), hits.end());
            for (int z2 : hits) {
                if (z2 < z) continue;
                Path tp;
                for (int x = z2; x != -1; x = prev[x]) tp.push_back(x);
                std::reverse(tp.begin(), tp.end());
                if (tp.size() == 2 && (consecutive(pos1, z, z2) || consecutive(pos2, z, z2))) continue;
                int common = mark[z] & mark[z2];
                for (int i = 0; i < 2; ++i) {
                    if (common & (1 << i)) out.push_back(Shortcut{tr, z, z2, i, tp});
                }
            }
        }
    }
    return out;
}

bool is_locally_cheapest(const Path& p1, const Path& p2, const NegativeForest& forest) {
    return find_shortcuts(p1, p2, forest).empty();
}

std::pair<Path, Path> amend(Path p1, Path p2, const Instance& inst, const NegativeForest& forest,
                            AmendStats* stats) {
    while (true) {
        auto sc = find_shortcuts(p1, p2, forest);
        if (sc.empty()) break;
        const Shortcut& s = sc.front();
        Path& p = s.on_path == 0 ? p1 : p2;
        auto iz = std::find(p.begin(), p.end(), s.z) - p.begin();
        auto iz2 = std::find(p.begin(), p.end(), s.z2) - p.begin();
        auto lo = std::min(iz, iz2), hi = std::max(iz, iz2);
        Path seg(p.begin() + lo, p.begin() + hi + 1);
        Path tp = forest.path(s.tree, p[lo], p[hi]);
        if (stats) {
            ++stats->steps;
            if (path_weight(inst, seg) < -path_weight(inst, tp)) ++stats->bound_violations;
        }
        Path np(p.begin(), p.begin() + lo);
        np.insert(np.end(), tp.begin(), tp.end());
        np.insert(np.end(), p.begin() + hi + 1, p.end());
        p = std::move(np);
    }
    return {std::move(p1), std::move(p2)};
}

ShapeFlags shape_predicates(const Path& q, const Spine& spine, const NegativeForest& forest) {
    if (q.empty() || (q.front() != spine.a1 && q.front() != spine.a2))
        throw BadStart("path does not start at a1 or a2");
    auto sub = [&](int x) { return x < static_cast<int>(spine.sub.size()) ? spine.sub[x] : -1; };
    auto pos = positions(q);
    ShapeFlags f;

    int last = -1;
    for (int x : q) {
        int h = sub(x);
        if (h < 0) continue;
        if (h < last) f.x_monotone = false;
        last = std::max(last, h);
    }

    for (int j = 0; j < spine.r(); ++j) {
        auto ix = pos.find(spine.X[j]);
        if (ix == pos.end()) continue;
        for (size_t k = 0; k < q.size(); ++k) {
            int y = q[k];
            int h = sub(y);
            if (h < 0) continue;
            if (h == j && f.plain) {
                Path tp = forest.path(spine.tree, y, spine.X[j]);
                for (size_t e = 0; e + 1 < tp.size(); ++e)
                    if (!consecutive(pos, tp[e], tp[e + 1])) f.plain = false;
            }
            if (h < j && static_cast<int>(k) > ix->second) f.quasi_monotone = false;
            if (h > j && static_cast<int>(k) < ix->second) f.quasi_monotone = false;
        }
    }
    return f;
}

std::optional<std::string> partial_solution_violation(const Path& q1, const Path& q2, int u, int v,
                                                      unsigned tau, const Spine& spine,
                                                      const Instance& inst, const NegativeForest& forest) {
    if (!is_simple_path(inst, q1) || !is_simple_path(inst, q2)) return "not a path";
    auto sub = [&](int x) { return x >= 0 && x < static_cast<int>(spine.sub.size()) ? spine.sub[x] : -1; };
    int i = sub(u), j = sub(v);
    if (i < 0 || j < 0 || i > j) return "bad key";

    // (a)
    if (q1.back() != u || q2.back() != v) return "(a) endpoints";
    bool starts_ok = (q1.front() == spine.a1 && q2.front() == spine.a2) ||
                     (q1.front() == spine.a2 && q2.front() == spine.a1);
    if (!starts_ok) return "(a) start vertices";
    if (!permissively_disjoint(q1, q2)) return "(a) disjointness";

    // (b)
    if (!is_locally_cheapest(q1, q2, forest)) return "(b) shortcut";
    for (const Path* q : {&q1, &q2}) {
        ShapeFlags f = shape_predicates(*q, spine, forest);
        if (!f.plain) return "(b) not plain";
        if (!f.quasi_monotone) return "(b) not quasi-monotone";
    }

    // (c)
    Path tail = forest.path(spine.tree, spine.X[i], u);
    if (tail.size() > q1.size() || !std::equal(tail.rbegin(), tail.rend(), q1.rbegin()))
        return "(c) Q1 does not end with T[x_i,u]";

    // (d)
    for (int x : q2)
        if (sub(x) > i && x != v) return "(d) Q2 enters a later subtree";

    // (e) and (f)
    const int c = forest.c();
    std::vector<std::vector<int>> on1(c), on2(c);
    for (int x : q1) {
        int tr = forest.tree_of_vertex(x);
        if (tr >= 0 && tr != spine.tree) on1[tr].push_back(x);
    }
    for (int x : q2) {
        int tr = forest.tree_of_vertex(x);
        if (tr >= 0 && tr != spine.tree) on2[tr].push_back(x);
    }
    for (int tr = 0; tr < c; ++tr) {
        if (tr == spine.tree) continue;
        bool used = !on1[tr].empty() || !on2[tr].empty();
        if (used && !(tau & (1u << tr))) return "(e) forbidden tree";
        if (!on1[tr].empty() && !on2[tr].empty()) {
            bool same_single = on1[tr].size() == 1 && on2[tr].size() == 1 && on1[tr][0] == on2[tr][0];
            if (!same_single) return "(f) contact";
        }
    }
    return std::nullopt;
}

bool is_partial_solution(const Path& q1, const Path& q2, int u, int v, unsigned tau, const Spine& spine,
                         const Instance& inst, const NegativeForest& forest) {
    return !partial_solution_violation(q1, q2, u, v, tau, spine, inst, forest).has_value();
}

}  // namespace stdp
