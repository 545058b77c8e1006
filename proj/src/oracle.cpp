#include "stdp/oracle.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <random>
#include <unordered_set>

namespace stdp {

namespace {

// Simple paths from `from` to `to` that avoid blocked vertices.
void each_path(const Instance& inst, int from, int to, const std::vector<char>& blocked,
               const std::function<void(const Path&, Weight)>& visit) {
    Path path{from};
    std::vector<char> on(inst.n(), 0);
    on[from] = 1;
    std::function<void(int, Weight)> go = [&](int x, Weight w) {
        if (x == to) {
            visit(path, w);
            return;
        }
        for (auto [y, e] : inst.adj(x)) {
            if (on[y] || blocked[y]) continue;
            on[y] = 1;
            path.push_back(y);
            go(y, w + inst.edge(e).w);
            path.pop_back();
            on[y] = 0;
        }
    };
    go(from, 0);
}

std::vector<std::pair<Path, Weight>> all_paths(const Instance& inst, int from, int to,
                                               const std::vector<char>& blocked) {
    std::vector<std::pair<Path, Weight>> out;
    each_path(inst, from, to, blocked, [&](const Path& p, Weight w) { out.push_back({p, w}); });
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
    return out;
}

void guard(const Instance& inst, int max_n) {
    if (inst.n() > max_n)
        throw TooLarge("oracle refuses n = " + std::to_string(inst.n()) + " above " + std::to_string(max_n));
}

}  // namespace

std::optional<OracleResult> brute_force_stdp(const Instance& inst, int max_n) {
    guard(inst, max_n);
    const int s = inst.s(), t = inst.t();
    Weight neg_total = 0;
    for (const Edge& e : inst.edges())
        if (e.w < 0) neg_total += e.w;

    std::optional<OracleResult> best;
    std::vector<char> used_edge(inst.m(), 0);
    std::vector<char> on(inst.n(), 0);
    Path p1{s}, p2{s};

    // Lower bound for the unexplored part: every unused negative edge taken once.
    Weight unused_neg = neg_total;
    auto bound_ok = [&](Weight w) { return !best || w + unused_neg < best->weight; };

    std::function<void(int, Weight, Weight)> second = [&](int x, Weight w1, Weight w) {
        if (x == t) {
            if (p1.size() == 2 && p2.size() == 2) return;
            if (!best || w1 + w < best->weight) best = OracleResult{w1 + w, PathPair{p1, p2, w1 + w}};
            return;
        }
        for (auto [y, e] : inst.adj(x)) {
            if (on[y] && y != t) continue;
            if (x == s && p1.size() > 1 && y <= p1[1]) continue;  // order the pair by second vertex
            if (used_edge[e]) continue;
            Weight ew = inst.edge(e).w;
            if (ew < 0) unused_neg -= ew;
            if (bound_ok(w1 + w + ew)) {
                on[y] = y != t;
                used_edge[e] = 1;
                p2.push_back(y);
                second(y, w1, w + ew);
                p2.pop_back();
                used_edge[e] = 0;
                on[y] = 0;
            }
            if (ew < 0) unused_neg += ew;
        }
    };

    std::function<void(int, Weight)> first = [&](int x, Weight w) {
        if (x == t) {
            second(s, w, 0);
            return;
        }
        for (auto [y, e] : inst.adj(x)) {
            if (on[y]) continue;
            Weight ew = inst.edge(e).w;
            if (ew < 0) unused_neg -= ew;
            if (bound_ok(w + ew)) {
                on[y] = y != t;
                used_edge[e] = 1;
                p1.push_back(y);
                first(y, w + ew);
                p1.pop_back();
                used_edge[e] = 0;
                on[y] = 0;
            }
            if (ew < 0) unused_neg += ew;
        }
    };
    on[s] = 1;
    first(s, 0);
    return best;
}

std::optional<OracleResult> brute_force_perm_disjoint(const Instance& inst, int a1, int a2, int b1, int b2,
                                                      int max_n) {
    guard(inst, max_n);
    std::optional<OracleResult> best;
    const std::vector<char> none(inst.n(), 0);
    for (auto [e1, e2] : {std::pair{b1, b2}, std::pair{b2, b1}}) {
        for (const auto& [q1, w1] : all_paths(inst, a1, e1, none)) {
            std::vector<char> blocked(inst.n(), 0);
            for (int x : q1) blocked[x] = 1;
            if (a1 == a2) blocked[a1] = 0;
            if (e1 == e2) blocked[e1] = 0;
            if (blocked[a2]) continue;
            each_path(inst, a2, e2, blocked, [&](const Path& q2, Weight w2) {
                if (!permissively_disjoint(q1, q2)) return;
                if (!best || w1 + w2 < best->weight) best = OracleResult{w1 + w2, PathPair{q1, q2, w1 + w2}};
            });
        }
    }
    return best;
}

std::optional<OracleResult> brute_force_partial_solution(const Instance& inst, const NegativeForest& forest,
                                                         const Spine& spine, int u, int v, unsigned tau,
                                                         int max_n) {
    guard(inst, max_n);
    std::optional<OracleResult> best;
    const std::vector<char> none(inst.n(), 0);
    for (auto [h1, h2] : {std::pair{spine.a1, spine.a2}, std::pair{spine.a2, spine.a1}}) {
        auto firsts = all_paths(inst, h1, u, none);
        auto seconds = all_paths(inst, h2, v, none);
        for (const auto& [q1, w1] : firsts) {
            for (const auto& [q2, w2] : seconds) {
                if (best && w1 + w2 >= best->weight) break;
                if (!is_partial_solution(q1, q2, u, v, tau, spine, inst, forest)) continue;
                best = OracleResult{w1 + w2, PathPair{q1, q2, w1 + w2}};
                break;
            }
        }
    }
    return best;
}

std::optional<Weight> brute_force_min_cost_flow(const FlowNetwork& net, int target) {
    std::vector<std::vector<int>> out(net.nodes);
    for (int k = 0; k < static_cast<int>(net.arcs.size()); ++k) out[net.arcs[k].tail].push_back(k);

    std::vector<std::pair<std::vector<int>, Weight>> paths;
    std::vector<int> arcs;
    std::vector<char> on(net.nodes, 0);
    std::function<void(int, Weight)> go = [&](int x, Weight w) {
        if (x == net.sink) {
            paths.push_back({arcs, w});
            return;
        }
        for (int k : out[x]) {
            int y = net.arcs[k].head;
            if (on[y] || net.arcs[k].cap <= 0) continue;
            on[y] = 1;
            arcs.push_back(k);
            go(y, w + net.arcs[k].cost);
            arcs.pop_back();
            on[y] = 0;
        }
    };
    on[net.source] = 1;
    go(net.source, 0);
    std::stable_sort(paths.begin(), paths.end(), [](const auto& a, const auto& b) { return a.second < b.second; });

    std::optional<Weight> best;
    std::vector<int> load(net.arcs.size(), 0);
    std::function<void(size_t, int, Weight)> pick = [&](size_t from, int left, Weight w) {
        if (left == 0) {
            if (!best || w < *best) best = w;
            return;
        }
        for (size_t i = from; i < paths.size(); ++i) {
            if (best && w + left * paths[i].second >= *best) break;
            bool fits = true;
            for (int k : paths[i].first)
                if (load[k] + 1 > net.arcs[k].cap) fits = false;
            if (!fits) continue;
            for (int k : paths[i].first) ++load[k];
            pick(i, left - 1, w + paths[i].second);
            for (int k : paths[i].first) --load[k];
        }
    };
    pick(0, target, 0);
    return best;
}

Instance generate_instance(const GenParams& params) {
    const int n = params.n, c = params.c;
    if (n < 4) throw ParamsInfeasible("n must be at least 4");
    if (c < 0 || 2 * c > n) throw ParamsInfeasible("c disjoint trees need at least 2c vertices");
    if (params.max_tree_size < 2 || params.wmax < 1) throw ParamsInfeasible("trees need two vertices and wmax >= 1");

    std::mt19937_64 rng(params.seed);
    for (int attempt = 0;; ++attempt) {
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);

        // Tree sizes: at least 2 each, spread the spare vertices at random.
        std::vector<int> size(c, 2);
        int spare = n - 2 * c;
        for (int k = 0; k < c && spare > 0; ++k) {
            int extra = std::uniform_int_distribution<int>(0, std::min(spare, params.max_tree_size - 2))(rng);
            size[k] += extra;
            spare -= extra;
        }

        std::vector<std::array<long long, 3>> raw;
        std::vector<int> owner(n, -1);
        std::vector<long long> total(c, 0);
        std::uniform_int_distribution<long long> neg(-params.wmax, -1);
        int next = 0;
        for (int k = 0; k < c; ++k) {
            std::vector<int> vs(order.begin() + next, order.begin() + next + size[k]);
            next += size[k];
            for (int x : vs) owner[x] = k;
            for (size_t i = 1; i < vs.size(); ++i) {
                int parent = vs[std::uniform_int_distribution<size_t>(0, i - 1)(rng)];
                long long w = neg(rng);
                total[k] += w;
                raw.push_back({std::min(parent, vs[i]), std::max(parent, vs[i]), w});
            }
        }
        long long M = c ? -*std::min_element(total.begin(), total.end()) : params.wmax;
        M = std::max<long long>(M, 1);

        std::unordered_set<long long> present;
        for (auto& e : raw) present.insert(e[0] * n + e[1]);
        std::bernoulli_distribution coin(params.density);
        std::uniform_int_distribution<long long> pos(params.tight ? 1 : M, 2 * M);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (!present.count(static_cast<long long>(u) * n + v) && coin(rng)) raw.push_back({u, v, pos(rng)});

        int s = std::uniform_int_distribution<int>(0, n - 1)(rng);
        int t = std::uniform_int_distribution<int>(0, n - 2)(rng);
        if (t >= s) ++t;
        Instance inst = build_instance(n, raw, s, t);
        if (is_conservative(inst).ok) return inst;
        if (attempt > (params.tight ? 4096 : 64)) throw ParamsInfeasible("could not draw a conservative instance");
    }
}

}  // namespace stdp
