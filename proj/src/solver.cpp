#include "stdp/solver.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <unordered_set>

#include "stdp/conspath.hpp"
#include "stdp/flows.hpp"
#include "stdp/partsol.hpp"
#include "stdp/treekit.hpp"
#include "stdp/uncross.hpp"

namespace stdp {

namespace {

constexpr Weight kInfinity = std::numeric_limits<Weight>::max() / 4;

std::set<std::pair<int, int>> edge_set(const Path& p) {
    std::set<std::pair<int, int>> out;
    for (size_t i = 0; i + 1 < p.size(); ++i) out.insert({std::min(p[i], p[i + 1]), std::max(p[i], p[i + 1])});
    return out;
}

bool has_plain_edge(const Instance& inst, int v) {
    for (auto [x, e] : inst.adj(v))
        if (inst.edge(e).w >= 0) return true;
    return false;
}

std::optional<Weight> lower_bound(const Instance& inst) {
    auto d = conservative_shortest_path(GraphView(inst), inst.s(), inst.t());
    if (!d) return std::nullopt;
    return 2 * d->weight;
}

PathPair reversed_pair(const PathPair& p) { return {reversed(p.p1), reversed(p.p2), p.weight}; }

PathPair amended(const PathPair& p, const Instance& inst, const NegativeForest& forest) {
    auto [a, b] = amend(p.p1, p.p2, inst, forest);
    Weight w = path_weight(inst, a) + path_weight(inst, b);
    return {std::move(a), std::move(b), w};
}

Instance restrict_edges(const Instance& inst, int drop) {
    std::vector<Edge> keep;
    for (int e = 0; e < inst.m(); ++e)
        if (e != drop) keep.push_back(inst.edge(e));
    return Instance::from_scaled(inst.n(), std::move(keep), inst.s(), inst.t());
}

// Deletes the given parent vertices and edges, then attaches a gadget vertex to g1 and g2.
SubInstance make_sub(const Instance& inst, const std::vector<char>& drop_vertex, const std::vector<char>& drop_edge,
                     int g1, int g2, Weight gadget_weight, bool gadget_is_source) {
    SubInstance sub;
    sub.gadget = inst.n();
    sub.gadget_weight = gadget_weight;
    std::vector<Edge> edges;
    for (int e = 0; e < inst.m(); ++e) {
        const Edge& ed = inst.edge(e);
        if (drop_edge[e] || drop_vertex[ed.u] || drop_vertex[ed.v]) {
            sub.deleted_edges.push_back(e);
            continue;
        }
        edges.push_back(ed);
    }
    for (int v = 0; v < inst.n(); ++v)
        if (drop_vertex[v]) sub.deleted_vertices.push_back(v);
    edges.push_back({g1, sub.gadget, gadget_weight});
    edges.push_back({g2, sub.gadget, gadget_weight});
    int s = gadget_is_source ? sub.gadget : inst.s();
    int t = gadget_is_source ? inst.t() : sub.gadget;
    sub.inst = Instance::from_scaled(inst.n() + 1, std::move(edges), s, t);
    return sub;
}

// Removes the gadget from the end of each path.
PathPair strip_tail(const Solution& sol) {
    PathPair out{sol.p1, sol.p2, 0};
    out.p1.pop_back();
    out.p2.pop_back();
    return out;
}

PathPair strip_head(const Solution& sol) {
    PathPair out{sol.p1, sol.p2, 0};
    out.p1.erase(out.p1.begin());
    out.p2.erase(out.p2.begin());
    return out;
}

// Calls take(p1, p2, cost) for each minimum-cost flow of value 2 over every
// E' and every selection Z. A tree is entered through a vertex with a
// non-negative edge, so only such vertices are tried for z_T.
template <class Take>
void scan_separable(const Instance& inst, SolveStats* stats, Take&& take) {
    std::vector<int> drops{-1};
    for (int e = 0; e < inst.m(); ++e)
        if (inst.edge(e).w < 0) drops.push_back(e);

    for (int drop : drops) {
        Instance sub = drop < 0 ? inst : restrict_edges(inst, drop);
        NegativeForest forest = negative_forest(sub);
        std::vector<int> trees;
        std::vector<std::vector<int>> choices;
        for (int tr = 0; tr < forest.c(); ++tr) {
            const NegTree& T = forest.tree(tr);
            if (T.contains(sub.s()) || T.contains(sub.t())) continue;
            std::vector<int> cand;
            for (int v : T.vertices)
                if (has_plain_edge(sub, v)) cand.push_back(v);
            if (cand.empty()) cand.push_back(T.vertices.front());
            trees.push_back(tr);
            choices.push_back(std::move(cand));
        }
        std::vector<size_t> at(trees.size(), 0);
        while (true) {
            Selection Z;
            for (size_t k = 0; k < trees.size(); ++k) Z[trees[k]] = choices[k][at[k]];
            FlowNetwork net = build_Nz(sub, forest, Z);
            if (stats) ++stats->separable_flows;
            if (auto flow = min_cost_flow(net, 2)) {
                auto paths = decompose_flow(net, *flow);
                take(paths[0], paths[1], flow->cost);
            }
            size_t k = 0;
            while (k < at.size() && ++at[k] == choices[k].size()) at[k++] = 0;
            if (k == at.size()) break;
        }
    }
}

class Search {
public:
    Search(const SolveOptions& opt, SolveStats* stats) : opt_(opt), stats_(stats) {}

    std::optional<Solution> run(const Instance& inst, Weight cutoff, int depth);

private:
    struct Frame {
        const Instance& inst;
        NegativeForest forest;
        std::optional<Solution> best;
        Weight bound;
        SpCache cache;
    };

    void offer(Frame& f, Path p1, Path p2, const char* where, std::optional<Weight> limit);
    void violation(const std::string& what) {
        if (stats_) stats_->violations.push_back(what);
    }

    void separable(Frame& f);
    void step_s(Frame& f, int tree, unsigned trees_s, int depth);
    void step_t(Frame& f, int tree, unsigned trees_t, int depth);
    void step_guesses(Frame& f, int tree);
    PathPair stitch_through(Frame& f, int tree, const PathPair& from_s, const PathPair& middle,
                            const PathPair& from_t);

    const SolveOptions& opt_;
    SolveStats* stats_;
};

void Search::offer(Frame& f, Path p1, Path p2, const char* where, std::optional<Weight> limit) {
    if (!is_solution(f.inst, p1, p2)) {
        violation(std::string(where) + ": stitched pair is not a solution");
        return;
    }
    Weight w = path_weight(f.inst, p1) + path_weight(f.inst, p2);
    if (limit) {
        if (stats_) ++stats_->stitch_checks;
        if (w > *limit)
            violation(std::string(where) + ": weight " + std::to_string(w) + " exceeds bound " +
                      std::to_string(*limit));
    }
    if (w >= f.bound) return;
    f.best = Solution{std::move(p1), std::move(p2), w};
    f.bound = w;
}

void Search::separable(Frame& f) {
    scan_separable(f.inst, stats_, [&](const Path& p1, const Path& p2, Weight cost) {
        if (cost < f.bound) offer(f, p1, p2, "separable", std::nullopt);
    });
}

void Search::step_s(Frame& f, int tree, unsigned trees_s, int depth) {
    const Instance& inst = f.inst;
    const NegTree& T = f.forest.tree(tree);
    if (T.contains(inst.s())) return;
    for (size_t i = 0; i < T.vertices.size(); ++i) {
        const int a1 = T.vertices[i];
        if (!has_plain_edge(inst, a1)) continue;
        for (size_t j = i + 1; j < T.vertices.size(); ++j) {
            const int a2 = T.vertices[j];
            if (!has_plain_edge(inst, a2)) continue;
            auto [I1, I2] = build_sub_instances_s(inst, f.forest, trees_s, a1, a2, tree);
            if (stats_) ++stats_->sub_instance_pairs;
            const Weight g4 = 4 * I1.gadget_weight;
            auto lb1 = lower_bound(I1.inst);
            auto lb2 = lower_bound(I2.inst);
            if (!lb1 || !lb2) continue;
            if (*lb1 + *lb2 - g4 >= f.bound) {
                if (stats_) ++stats_->pruned;
                continue;
            }
            auto S1 = run(I1.inst, f.bound - *lb2 + g4, depth + 1);
            if (!S1) continue;
            auto S2 = run(I2.inst, f.bound - S1->weight + g4, depth + 1);
            if (!S2) continue;

            PathPair up = strip_tail(*S1);
            PathPair down = amended(strip_head(*S2), inst, f.forest);
            try {
                PathPair res = combine(inst, f.forest, up, down, tree, trees_s);
                if (stats_) ++stats_->stitches;
                offer(f, res.p1, res.p2, "s-side stitch", S1->weight + S2->weight - g4);
            } catch (const PreconditionViolated& e) {
                violation(std::string("s-side combine: ") + e.what());
            }
        }
    }
}

void Search::step_t(Frame& f, int tree, unsigned trees_t, int depth) {
    const Instance& inst = f.inst;
    const NegTree& T = f.forest.tree(tree);
    if (T.contains(inst.t())) return;
    for (size_t i = 0; i < T.vertices.size(); ++i) {
        const int b1 = T.vertices[i];
        if (!has_plain_edge(inst, b1)) continue;
        for (size_t j = i + 1; j < T.vertices.size(); ++j) {
            const int b2 = T.vertices[j];
            if (!has_plain_edge(inst, b2)) continue;
            auto [I1, I2] = build_sub_instances_t(inst, f.forest, trees_t, b1, b2, tree);
            if (stats_) ++stats_->sub_instance_pairs;
            const Weight g4 = 4 * I1.gadget_weight;
            auto lb1 = lower_bound(I1.inst);
            auto lb2 = lower_bound(I2.inst);
            if (!lb1 || !lb2) continue;
            if (*lb1 + *lb2 - g4 >= f.bound) {
                if (stats_) ++stats_->pruned;
                continue;
            }
            auto S2 = run(I2.inst, f.bound - *lb1 + g4, depth + 1);
            if (!S2) continue;
            auto S1 = run(I1.inst, f.bound - S2->weight + g4, depth + 1);
            if (!S1) continue;

            // Walk from t: the t-side pair plays the first role.
            PathPair from_t = reversed_pair(strip_head(*S2));
            PathPair to_s = amended(reversed_pair(strip_tail(*S1)), inst, f.forest);
            try {
                PathPair res = combine(inst, f.forest, from_t, to_s, tree, trees_t);
                if (stats_) ++stats_->stitches;
                offer(f, reversed(res.p1), reversed(res.p2), "t-side stitch", S1->weight + S2->weight - g4);
            } catch (const PreconditionViolated& e) {
                violation(std::string("t-side combine: ") + e.what());
            }
        }
    }
}

// from_s runs s -> X, middle X -> Y, from_t t -> Y. Returns s-t paths.
PathPair Search::stitch_through(Frame& f, int tree, const PathPair& from_s, const PathPair& middle,
                                const PathPair& from_t) {
    const Instance& inst = f.inst;
    PathPair cur = middle;
    if (middle.p1.front() != middle.p2.front())
        cur = combine(inst, f.forest, from_s, amended(middle, inst, f.forest), tree, 0);
    cur = amended(cur, inst, f.forest);
    if (cur.p1.back() == cur.p2.back()) return cur;
    PathPair res = combine(inst, f.forest, from_t, reversed_pair(cur), tree, 0);
    return reversed_pair(res);
}

void Search::step_guesses(Frame& f, int tree) {
    const Instance& inst = f.inst;
    const NegativeForest& forest = f.forest;
    const NegTree& T = forest.tree(tree);
    const int s = inst.s(), t = inst.t();

    std::vector<int> as, bs;
    for (int v : T.vertices) {
        if (T.contains(s) ? v == s : has_plain_edge(inst, v)) as.push_back(v);
        if (T.contains(t) ? v == t : has_plain_edge(inst, v)) bs.push_back(v);
    }
    for (size_t i1 = 0; i1 < as.size(); ++i1) {
        for (size_t i2 = T.contains(s) ? i1 : i1 + 1; i2 < as.size(); ++i2) {
            const int a1 = as[i1], a2 = as[i2];
            for (int b1 : bs) {
                for (int b2 : bs) {
                    // (a1,b1,a2,b2) and (a2,b2,a1,b1) describe the same guess.
                    if (a1 == a2 && b1 > b2) continue;
                    if (!reasonable_guess(forest, tree, a1, a2, b1, b2, s, t)) continue;
                    if (stats_) ++stats_->guesses;

                    FlowNetwork net = build_Naabb(inst, forest, a1, b1, a2, b2);
                    auto flow = min_cost_flow(net, 4);
                    if (!flow) continue;
                    const Weight tree_lb =
                        std::min(forest.path_weight(tree, a1, b1) + forest.path_weight(tree, a2, b2),
                                 forest.path_weight(tree, a1, b2) + forest.path_weight(tree, a2, b1));
                    if (flow->cost + tree_lb >= f.bound) {
                        if (stats_) ++stats_->pruned;
                        continue;
                    }
                    if (stats_) ++stats_->perm_disjoint_calls;
                    auto Q = perm_disjoint(inst, forest, tree, a1, a2, b1, b2, &f.cache);
                    if (!Q) continue;

                    const Spine sp = build_spine(forest, tree, a1, a2, b1, b2);
                    std::vector<Path> from_s, from_t;
                    for (auto& p : decompose_flow(net, *flow)) (p.front() == s ? from_s : from_t).push_back(p);
                    if (from_s.size() != 2 || from_t.size() != 2) {
                        violation("flow of value 4 does not split two and two");
                        continue;
                    }
                    const Weight limit = flow->cost + Q->weight;
                    auto ends = [](const std::vector<Path>& ps, int x, int y) {
                        return (ps[0].back() == x && ps[1].back() == y) || (ps[0].back() == y && ps[1].back() == x);
                    };
                    auto ending_at = [](const std::vector<Path>& ps, int x) -> const Path& {
                        return ps[0].back() == x ? ps[0] : ps[1];
                    };
                    PathPair S{from_s[0], from_s[1], 0};
                    PathPair Tt{from_t[0], from_t[1], 0};
                    try {
                        if (ends(from_s, sp.a1, sp.a2)) {
                            auto res = stitch_through(f, tree, S, *Q, Tt);
                            if (stats_) ++stats_->stitches;
                            offer(f, res.p1, res.p2, "guess stitch", limit);
                        } else if (ends(from_s, sp.b1, sp.b2)) {
                            auto res = stitch_through(f, tree, S, reversed_pair(*Q), Tt);
                            if (stats_) ++stats_->stitches;
                            offer(f, res.p1, res.p2, "guess stitch", limit);
                        } else {
                            // One s-path reaches an a-terminal, the other a b-terminal.
                            const int sa = (from_s[0].back() == sp.a1 || from_s[1].back() == sp.a1) ? sp.a1 : sp.a2;
                            const int ta = sa == sp.a1 ? sp.a2 : sp.a1;
                            const int sb = (from_s[0].back() == sp.b1 || from_s[1].back() == sp.b1) ? sp.b1 : sp.b2;
                            const int tb = sb == sp.b1 ? sp.b2 : sp.b1;
                            Path p1 = join_paths(join_paths(ending_at(from_s, sa), forest.path(tree, sa, ta)),
                                                 reversed(ending_at(from_t, ta)));
                            Path p2 = join_paths(join_paths(ending_at(from_s, sb), forest.path(tree, sb, tb)),
                                                 reversed(ending_at(from_t, tb)));
                            if (stats_) ++stats_->stitches;
                            offer(f, std::move(p1), std::move(p2), "guess stitch", limit);
                        }
                    } catch (const PreconditionViolated& e) {
                        violation(std::string("guess combine: ") + e.what());
                    } catch (const std::logic_error& e) {
                        violation(std::string("guess stitch: ") + e.what());
                    }
                }
            }
        }
    }
}

std::optional<Solution> Search::run(const Instance& inst, Weight cutoff, int depth) {
    if (stats_) stats_->max_depth = std::max(stats_->max_depth, depth);
    if (opt_.assert_invariants && depth > 0) {
        auto cert = is_conservative(inst);
        if (!cert.ok) violation("sub-instance at depth " + std::to_string(depth) + " is not conservative");
    }
    if (!lower_bound(inst)) return std::nullopt;

    Frame f{inst, negative_forest(inst), std::nullopt, cutoff, {}};
    separable(f);

    const int c = f.forest.c();
    for (int tree = 0; tree < c; ++tree) {
        const unsigned others = ((1u << c) - 1) & ~(1u << tree);
        for (unsigned m = others; m; m = (m - 1) & others) step_s(f, tree, m, depth);
        for (unsigned m = others; m; m = (m - 1) & others) step_t(f, tree, m, depth);
        step_guesses(f, tree);
    }
    return f.best;
}

}  // namespace

bool reasonable_guess(const NegativeForest& forest, int tree, int a1, int a2, int b1, int b2, int s, int t) {
    const NegTree& T = forest.tree(tree);
    if (T.contains(s) ? !(a1 == s && a2 == s) : a1 == a2) return false;
    if (T.contains(t) ? !(b1 == t && b2 == t) : b1 == b2) return false;
    auto e1 = edge_set(forest.path(tree, a1, b1));
    for (const auto& e : edge_set(forest.path(tree, a2, b2)))
        if (e1.count(e)) return true;
    return false;
}

bool is_solution(const Instance& inst, const Path& p1, const Path& p2) {
    const int s = inst.s(), t = inst.t();
    for (const Path* p : {&p1, &p2})
        if (p->size() < 2 || p->front() != s || p->back() != t || !is_simple_path(inst, *p)) return false;
    if (p1.size() == 2 && p2.size() == 2) return false;
    std::unordered_set<int> inner(p1.begin() + 1, p1.end() - 1);
    for (size_t i = 1; i + 1 < p2.size(); ++i)
        if (inner.count(p2[i])) return false;
    return true;
}

std::optional<Solution> solve_separable(const Instance& inst, SolveStats* stats) {
    std::optional<Solution> best;
    scan_separable(inst, stats, [&](const Path& p1, const Path& p2, Weight) {
        if (!is_solution(inst, p1, p2)) return;
        Weight w = path_weight(inst, p1) + path_weight(inst, p2);
        if (!best || w < best->weight) best = Solution{p1, p2, w};
    });
    return best;
}

std::pair<SubInstance, SubInstance> build_sub_instances_s(const Instance& inst, const NegativeForest& forest,
                                                          unsigned trees_s, int a1, int a2, int tree) {
    const Weight gw = -forest.path_weight(tree, a1, a2) / 2;
    std::vector<char> dv1(inst.n(), 0), de1(inst.m(), 0), dv2(inst.n(), 0), de2(inst.m(), 0);
    for (int tr = 0; tr < forest.c(); ++tr) {
        const NegTree& T = forest.tree(tr);
        if ((trees_s >> tr) & 1u) {
            for (int v : T.vertices) dv2[v] = 1;
        } else {
            for (int e : T.edges) de1[e] = 1;
            for (int v : T.vertices)
                if (v != a1 && v != a2) dv1[v] = 1;
        }
    }
    return {make_sub(inst, dv1, de1, a1, a2, gw, false), make_sub(inst, dv2, de2, a1, a2, gw, true)};
}

std::pair<SubInstance, SubInstance> build_sub_instances_t(const Instance& inst, const NegativeForest& forest,
                                                          unsigned trees_t, int b1, int b2, int tree) {
    const Weight gw = -forest.path_weight(tree, b1, b2) / 2;
    std::vector<char> dv1(inst.n(), 0), de1(inst.m(), 0), dv2(inst.n(), 0), de2(inst.m(), 0);
    for (int tr = 0; tr < forest.c(); ++tr) {
        const NegTree& T = forest.tree(tr);
        if ((trees_t >> tr) & 1u) {
            for (int v : T.vertices) dv1[v] = 1;
        } else {
            for (int e : T.edges) de2[e] = 1;
            for (int v : T.vertices)
                if (v != b1 && v != b2) dv2[v] = 1;
        }
    }
    return {make_sub(inst, dv1, de1, b1, b2, gw, false), make_sub(inst, dv2, de2, b1, b2, gw, true)};
}

std::optional<Solution> solve(const Instance& inst, const SolveOptions& options, SolveStats* stats) {
    auto cert = is_conservative(inst);
    if (!cert.ok) throw NonConservativeInput(cert, "instance has a negative cycle");
    Search search(options, stats);
    auto best = search.run(inst, kInfinity, 0);
    if (best && options.assert_invariants) {
        if (!is_locally_cheapest(best->p1, best->p2, negative_forest(inst)) && stats)
            stats->violations.push_back("returned solution admits a shortcut");
    }
    return best;
}

}  // namespace stdp
