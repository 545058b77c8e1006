#include "stdp/flows.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>

namespace stdp {

namespace {

constexpr Weight kInf = std::numeric_limits<Weight>::max() / 4;

// Splits every vertex except the listed terminals.
FlowNetwork skeleton(const Instance& inst, std::initializer_list<int> unsplit, int extra) {
    const int n = inst.n();
    FlowNetwork net;
    net.nodes = 2 * n + extra;
    net.vertex_of.assign(net.nodes, -1);
    net.out_node.assign(n, -1);
    for (int v = 0; v < n; ++v) {
        net.vertex_of[v] = v;
        bool split = std::find(unsplit.begin(), unsplit.end(), v) == unsplit.end();
        net.out_node[v] = split ? n + v : v;
        if (split) {
            net.vertex_of[n + v] = v;
            net.arcs.push_back({v, n + v, 1, 0});
        }
    }
    return net;
}

void add_arc(FlowNetwork& net, int x, int y, Weight w) {
    net.arcs.push_back({net.out_node[x], y, 1, w});
}

// BFS parents inside one tree, rooted at r.
std::vector<int> tree_parents(const NegativeForest& forest, int r, int n) {
    std::vector<int> parent(n, -2);
    parent[r] = -1;
    std::vector<int> queue{r};
    for (size_t i = 0; i < queue.size(); ++i) {
        int x = queue[i];
        for (int y : forest.tree_adj(x)) {
            if (parent[y] != -2) continue;
            parent[y] = x;
            queue.push_back(y);
        }
    }
    return parent;
}

}  // namespace

FlowNetwork build_Nz(const Instance& inst, const NegativeForest& forest, const Selection& Z) {
    const int s = inst.s(), t = inst.t();
    for (int tr = 0; tr < forest.c(); ++tr) {
        const NegTree& T = forest.tree(tr);
        bool terminal = T.contains(s) || T.contains(t);
        auto it = Z.find(tr);
        if (terminal && it != Z.end()) throw BadSelection("tree with a terminal needs no selection");
        if (!terminal && it == Z.end()) throw BadSelection("missing selection for tree " + std::to_string(tr));
        if (it != Z.end() && !T.contains(it->second)) throw BadSelection("selected vertex outside its tree");
    }
    for (auto [tr, z] : Z) {
        (void)z;
        if (tr < 0 || tr >= forest.c()) throw BadSelection("unknown tree index");
    }

    FlowNetwork net = skeleton(inst, {s, t}, 0);
    net.source = s;
    net.sink = t;

    // Arc (x, y) for each tree edge with y the child of x.
    std::vector<std::pair<int, int>> oriented(inst.m(), {-1, -1});
    for (int tr = 0; tr < forest.c(); ++tr) {
        const NegTree& T = forest.tree(tr);
        bool toward = false;
        int root;
        // A tree holding both terminals points away from s, so T[s,t] runs toward t.
        if (T.contains(s)) {
            root = s;
        } else if (T.contains(t)) {
            root = t;
            toward = true;
        } else {
            root = Z.at(tr);
        }
        auto parent = tree_parents(forest, root, inst.n());
        for (int id : T.edges) {
            const Edge& e = inst.edge(id);
            int child = parent[e.v] == e.u ? e.v : e.u;
            oriented[id] = toward ? std::make_pair(child, parent[child]) : std::make_pair(parent[child], child);
        }
    }
    for (int id = 0; id < inst.m(); ++id) {
        const Edge& e = inst.edge(id);
        if (e.w >= 0) {
            add_arc(net, e.u, e.v, e.w);
            add_arc(net, e.v, e.u, e.w);
        } else {
            add_arc(net, oriented[id].first, oriented[id].second, e.w);
        }
    }
    return net;
}

FlowNetwork build_Naabb(const Instance& inst, const NegativeForest& forest, int a1, int b1, int a2, int b2) {
    const int n = inst.n(), s = inst.s(), t = inst.t();
    FlowNetwork net = skeleton(inst, {s, t}, 2);
    const int sstar = 2 * n, tstar = 2 * n + 1;
    net.source = sstar;
    net.sink = tstar;

    std::vector<char> keep(n, 1);
    for (int v = 0; v < n; ++v)
        if (forest.tree_of_vertex(v) >= 0) keep[v] = 0;
    for (int v : {a1, a2, b1, b2}) keep[v] = 1;

    for (int id = 0; id < inst.m(); ++id) {
        const Edge& e = inst.edge(id);
        if (e.w < 0 || !keep[e.u] || !keep[e.v]) continue;
        if (e.v != s && e.v != t) add_arc(net, e.u, e.v, e.w);
        if (e.u != s && e.u != t) add_arc(net, e.v, e.u, e.w);
    }
    net.arcs.push_back({sstar, s, 2, 0});
    net.arcs.push_back({sstar, t, 2, 0});
    for (int v : {a1, a2, b1, b2}) net.arcs.push_back({net.out_node[v], tstar, 1, 0});
    return net;
}

std::optional<Flow> min_cost_flow(const FlowNetwork& net, int target) {
    const int N = net.nodes;
    const int A = static_cast<int>(net.arcs.size());
    // Residual arc 2k is arc k, 2k+1 its reverse.
    std::vector<int> res_cap(2 * A);
    std::vector<std::vector<int>> out(N);
    for (int k = 0; k < A; ++k) {
        res_cap[2 * k] = net.arcs[k].cap;
        res_cap[2 * k + 1] = 0;
        out[net.arcs[k].tail].push_back(2 * k);
        out[net.arcs[k].head].push_back(2 * k + 1);
    }
    auto head = [&](int r) { return r % 2 == 0 ? net.arcs[r / 2].head : net.arcs[r / 2].tail; };
    auto cost = [&](int r) { return r % 2 == 0 ? net.arcs[r / 2].cost : -net.arcs[r / 2].cost; };

    Flow f;
    f.arc_flow.assign(A, 0);
    if (target <= 0) return f;

    // Bellman-Ford from the source over arcs with capacity.
    std::vector<Weight> pot(N, kInf);
    pot[net.source] = 0;
    for (int round = 0; round < N; ++round) {
        bool changed = false;
        for (int k = 0; k < A; ++k) {
            const Arc& a = net.arcs[k];
            if (a.cap <= 0 || pot[a.tail] >= kInf) continue;
            if (pot[a.tail] + a.cost < pot[a.head]) {
                pot[a.head] = pot[a.tail] + a.cost;
                changed = true;
            }
        }
        if (!changed) break;
        if (round == N - 1) throw NegativeCycleDetected("negative-cost cycle reachable from the source");
    }

    using Item = std::pair<Weight, int>;
    while (f.value < target) {
        std::vector<Weight> dist(N, kInf);
        std::vector<int> via(N, -1);
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        dist[net.source] = 0;
        pq.push({0, net.source});
        while (!pq.empty()) {
            auto [d, x] = pq.top();
            pq.pop();
            if (d != dist[x]) continue;
            for (int r : out[x]) {
                if (res_cap[r] <= 0) continue;
                int y = head(r);
                if (pot[y] >= kInf) continue;
                Weight nd = d + cost(r) + pot[x] - pot[y];
                if (nd < dist[y]) {
                    dist[y] = nd;
                    via[y] = r;
                    pq.push({nd, y});
                }
            }
        }
        if (dist[net.sink] >= kInf) return std::nullopt;
        for (int x = 0; x < N; ++x)
            if (dist[x] < kInf) pot[x] += dist[x];

        int push = target - f.value;
        for (int y = net.sink; y != net.source; y = head(via[y] ^ 1)) push = std::min(push, res_cap[via[y]]);
        for (int y = net.sink; y != net.source; y = head(via[y] ^ 1)) {
            int r = via[y];
            res_cap[r] -= push;
            res_cap[r ^ 1] += push;
            f.cost += cost(r) * push;
        }
        f.value += push;
    }
    for (int k = 0; k < A; ++k) f.arc_flow[k] = res_cap[2 * k + 1];
    return f;
}

std::vector<Path> decompose_flow(const FlowNetwork& net, const Flow& flow) {
    const int N = net.nodes;
    const int A = static_cast<int>(net.arcs.size());
    if (static_cast<int>(flow.arc_flow.size()) != A) throw NonIntegralFlow("flow does not match network");
    std::vector<int> rem = flow.arc_flow;
    std::vector<Weight> balance(N, 0);
    for (int k = 0; k < A; ++k) {
        if (rem[k] < 0 || rem[k] > net.arcs[k].cap) throw NonIntegralFlow("arc flow outside its capacity");
        balance[net.arcs[k].tail] -= rem[k];
        balance[net.arcs[k].head] += rem[k];
    }
    for (int x = 0; x < N; ++x) {
        if (x == net.source || x == net.sink) continue;
        if (balance[x] != 0) throw NonIntegralFlow("flow conservation violated");
    }
    if (-balance[net.source] != flow.value) throw NonIntegralFlow("flow value mismatch");

    std::vector<std::vector<int>> out(N);
    for (int k = 0; k < A; ++k) out[net.arcs[k].tail].push_back(k);

    std::vector<Path> paths;
    for (int unit = 0; unit < flow.value; ++unit) {
        std::vector<int> nodes{net.source};
        std::vector<int> arcs;
        std::vector<int> pos(N, -1);
        pos[net.source] = 0;
        while (nodes.back() != net.sink) {
            int x = nodes.back();
            int next = -1;
            for (int k : out[x])
                if (rem[k] > 0) {
                    next = k;
                    break;
                }
            if (next < 0) throw NonIntegralFlow("flow path stops before the sink");
            int y = net.arcs[next].head;
            if (pos[y] >= 0) {
                // Drop the cycle closed by this arc.
                --rem[next];
                for (size_t i = pos[y]; i < arcs.size(); ++i) --rem[arcs[i]];
                for (size_t i = pos[y] + 1; i < nodes.size(); ++i) pos[nodes[i]] = -1;
                nodes.resize(pos[y] + 1);
                arcs.resize(pos[y]);
                continue;
            }
            pos[y] = static_cast<int>(nodes.size());
            nodes.push_back(y);
            arcs.push_back(next);
        }
        for (int k : arcs) --rem[k];
        Path p;
        for (int x : nodes) {
            int v = net.vertex_of[x];
            if (v < 0) continue;
            if (p.empty() || p.back() != v) p.push_back(v);
        }
        paths.push_back(std::move(p));
    }
    return paths;
}

}  // namespace stdp
