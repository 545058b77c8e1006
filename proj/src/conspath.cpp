#include "stdp/conspath.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>

#include "stdp/matching.hpp"

namespace stdp {

namespace {

constexpr Weight kInf = std::numeric_limits<Weight>::max() / 4;

struct Sssp {
    std::vector<Weight> dist;
    std::vector<int> parent_edge;
};

// Dijkstra on |w| over the alive part of the view.
Sssp abs_dijkstra(const GraphView& g, int src) {
    const Instance& inst = *g.inst;
    Sssp r{std::vector<Weight>(inst.n(), kInf), std::vector<int>(inst.n(), -1)};
    using Item = std::pair<Weight, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    r.dist[src] = 0;
    pq.push({0, src});
    while (!pq.empty()) {
        auto [d, x] = pq.top();
        pq.pop();
        if (d != r.dist[x]) continue;
        for (auto [y, id] : inst.adj(x)) {
            if (!g.edge_alive(id)) continue;
            Weight w = inst.edge(id).w;
            Weight nd = d + (w < 0 ? -w : w);
            if (nd < r.dist[y]) {
                r.dist[y] = nd;
                r.parent_edge[y] = id;
                pq.push({nd, y});
            }
        }
    }
    return r;
}

std::optional<PathResult> join_path(const GraphView& g, int u, int v) {
    const Instance& inst = *g.inst;
    auto join = min_weight_join(g, {u, v});
    if (!join) return std::nullopt;

    std::vector<std::vector<std::pair<int, int>>> jadj(inst.n());
    for (int id : join->edges) {
        const Edge& e = inst.edge(id);
        jadj[e.u].push_back({e.v, id});
        jadj[e.v].push_back({e.u, id});
    }
    for (auto& a : jadj) std::sort(a.begin(), a.end());

    // Any u-v path inside the join is optimal; the remainder is an even-degree set.
    std::vector<int> prev(inst.n(), -2);
    std::vector<int> stack{u};
    prev[u] = -1;
    while (!stack.empty() && prev[v] == -2) {
        int x = stack.back();
        stack.pop_back();
        for (auto it = jadj[x].rbegin(); it != jadj[x].rend(); ++it) {
            int y = it->first;
            if (prev[y] != -2) continue;
            prev[y] = x;
            stack.push_back(y);
        }
    }
    if (prev[v] == -2) throw std::logic_error("join does not connect its odd vertices");
    Path p;
    for (int x = v; x != -1; x = prev[x]) p.push_back(x);
    std::reverse(p.begin(), p.end());
    Weight w = path_weight(inst, p);
    if (join->weight - w < 0) throw NonConservativeView("view contains a negative cycle");
    return PathResult{std::move(p), w};
}

std::optional<PathResult> search_path(const GraphView& g, int u, int v) {
    const Instance& inst = *g.inst;
    Weight neg_total = 0;
    for (int id = 0; id < inst.m(); ++id)
        if (g.edge_alive(id) && inst.edge(id).w < 0) neg_total += inst.edge(id).w;

    std::optional<PathResult> best;
    std::vector<char> on(inst.n(), 0);
    Path cur{u};
    on[u] = 1;
    std::function<void(int, Weight)> dfs = [&](int x, Weight w) {
        if (best && w + neg_total >= best->weight) return;
        for (auto [y, id] : inst.adj(x)) {
            if (!g.edge_alive(id) || on[y]) continue;
            Weight w2 = w + inst.edge(id).w;
            if (y == v) {
                // Paths are met in lexicographic order, so only a strictly cheaper one replaces.
                if (!best || w2 < best->weight) {
                    Path p = cur;
                    p.push_back(v);
                    best = PathResult{std::move(p), w2};
                }
                continue;
            }
            on[y] = 1;
            cur.push_back(y);
            dfs(y, w2);
            cur.pop_back();
            on[y] = 0;
        }
    };
    dfs(u, 0);
    return best;
}

}  // namespace

std::optional<JoinResult> min_weight_join(const GraphView& g, const std::vector<int>& odd_set) {
    const Instance& inst = *g.inst;
    std::vector<char> parity(inst.n(), 0);
    std::vector<char> in_join(inst.m(), 0);
    for (int id = 0; id < inst.m(); ++id) {
        const Edge& e = inst.edge(id);
        if (e.w < 0 && g.edge_alive(id)) {
            parity[e.u] ^= 1;
            parity[e.v] ^= 1;
            in_join[id] = 1;
        }
    }
    for (int x : odd_set) {
        if (!g.alive[x]) return std::nullopt;
        parity[x] ^= 1;
    }
    std::vector<int> odd;
    for (int x = 0; x < inst.n(); ++x)
        if (parity[x]) odd.push_back(x);

    const int k = static_cast<int>(odd.size());
    std::vector<Sssp> trees;
    trees.reserve(k);
    std::vector<std::int64_t> cost(static_cast<size_t>(k) * k, -1);
    for (int i = 0; i < k; ++i) {
        trees.push_back(abs_dijkstra(g, odd[i]));
        for (int j = 0; j < k; ++j) {
            Weight d = trees[i].dist[odd[j]];
            if (i != j && d < kInf) cost[static_cast<size_t>(i) * k + j] = d;
        }
    }
    auto mate = min_cost_perfect_matching(k, cost);
    if (!mate) return std::nullopt;

    // Symmetric difference of the matched shortest paths with the negative edge set.
    for (int i = 0; i < k; ++i) {
        int j = (*mate)[i];
        if (j < i) continue;
        for (int x = odd[j]; x != odd[i];) {
            int id = trees[i].parent_edge[x];
            in_join[id] ^= 1;
            const Edge& e = inst.edge(id);
            x = (e.u == x) ? e.v : e.u;
        }
    }
    JoinResult r;
    for (int id = 0; id < inst.m(); ++id) {
        if (in_join[id]) {
            r.edges.push_back(id);
            r.weight += inst.edge(id).w;
        }
    }
    return r;
}

std::vector<std::vector<int>> split_cycles(const Instance& inst, const std::vector<int>& edge_ids) {
    std::vector<std::vector<int>> inc(inst.n());
    for (int id : edge_ids) {
        inc[inst.edge(id).u].push_back(id);
        inc[inst.edge(id).v].push_back(id);
    }
    std::vector<char> used(inst.m(), 0);
    std::vector<size_t> next(inst.n(), 0);
    std::vector<int> pos(inst.n(), -1);
    std::vector<std::vector<int>> cycles;

    auto take = [&](int x) -> int {
        while (next[x] < inc[x].size() && used[inc[x][next[x]]]) ++next[x];
        return next[x] < inc[x].size() ? inc[x][next[x]] : -1;
    };

    for (int start = 0; start < inst.n(); ++start) {
        if (take(start) < 0) continue;
        std::vector<int> stack{start};
        pos[start] = 0;
        while (!stack.empty()) {
            int x = stack.back();
            int id = take(x);
            if (id < 0) {
                pos[x] = -1;
                stack.pop_back();
                continue;
            }
            used[id] = 1;
            const Edge& e = inst.edge(id);
            int y = (e.u == x) ? e.v : e.u;
            if (pos[y] >= 0) {
                std::vector<int> cyc(stack.begin() + pos[y], stack.end());
                cyc.push_back(y);
                cycles.push_back(std::move(cyc));
                for (size_t i = pos[y] + 1; i < stack.size(); ++i) pos[stack[i]] = -1;
                stack.resize(pos[y] + 1);
            } else {
                pos[y] = static_cast<int>(stack.size());
                stack.push_back(y);
            }
        }
    }
    return cycles;
}

std::optional<PathResult> conservative_shortest_path(const GraphView& g, int u, int v, SpBackend backend) {
    if (!g.alive[u] || !g.alive[v]) return std::nullopt;
    if (u == v) return PathResult{{u}, 0};
    if (backend == SpBackend::Search) return search_path(g, u, v);
    return join_path(g, u, v);
}

std::optional<PathResult> nonneg_shortest_path(const GraphView& g, int u, int v) {
    const Instance& inst = *g.inst;
    for (int id = 0; id < inst.m(); ++id)
        if (g.edge_alive(id) && inst.edge(id).w < 0) throw NegativeWeightSeen("negative edge in view");
    if (!g.alive[u] || !g.alive[v]) return std::nullopt;
    if (u == v) return PathResult{{u}, 0};

    Sssp to_v = abs_dijkstra(g, v);
    if (to_v.dist[u] >= kInf) return std::nullopt;

    // Smallest-id tight neighbour first; backtracking is only needed around zero-weight edges.
    std::vector<char> on(inst.n(), 0);
    Path cur{u};
    on[u] = 1;
    std::function<bool(int)> walk = [&](int x) {
        if (x == v) return true;
        for (auto [y, id] : inst.adj(x)) {
            if (!g.edge_alive(id) || on[y]) continue;
            if (inst.edge(id).w + to_v.dist[y] != to_v.dist[x]) continue;
            on[y] = 1;
            cur.push_back(y);
            if (walk(y)) return true;
            cur.pop_back();
            on[y] = 0;
        }
        return false;
    };
    walk(u);
    return PathResult{cur, to_v.dist[u]};
}

}  // namespace stdp
