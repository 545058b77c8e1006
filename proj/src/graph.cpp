#include "stdp/graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "stdp/conspath.hpp"

namespace stdp {

Instance Instance::from_scaled(int n, std::vector<Edge> edges, int s, int t) {
    if (n <= 0) throw BadTerminal("instance needs at least one vertex");
    if (s < 0 || s >= n || t < 0 || t >= n) throw BadTerminal("terminal out of range");
    if (s == t) throw BadTerminal("s and t must differ");

    Instance g;
    g.n_ = n;
    g.s_ = s;
    g.t_ = t;
    for (auto& e : edges) {
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
            throw GraphError("edge endpoint out of range");
        if (e.u == e.v) throw SelfLoop("self-loop at vertex " + std::to_string(e.u));
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end(),
              [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
    for (size_t i = 1; i < edges.size(); ++i) {
        if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v)
            throw DuplicateEdge("duplicate edge " + std::to_string(edges[i].u) + "-" +
                                std::to_string(edges[i].v));
    }
    g.edges_ = std::move(edges);
    g.adj_.assign(n, {});
    g.index_.assign(static_cast<size_t>(n) * n, -1);
    for (int id = 0; id < g.m(); ++id) {
        const Edge& e = g.edges_[id];
        g.adj_[e.u].push_back({e.v, id});
        g.adj_[e.v].push_back({e.u, id});
        g.index_[static_cast<size_t>(e.u) * n + e.v] = id;
        g.index_[static_cast<size_t>(e.v) * n + e.u] = id;
    }
    for (auto& a : g.adj_) std::sort(a.begin(), a.end());
    return g;
}

int Instance::edge_id(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) return -1;
    return index_[static_cast<size_t>(u) * n_ + v];
}

Weight Instance::weight(int u, int v) const {
    int id = edge_id(u, v);
    if (id < 0) throw UnknownEdge("no edge " + std::to_string(u) + "-" + std::to_string(v));
    return edges_[id].w;
}

Instance build_instance(int n, const std::vector<std::array<long long, 3>>& raw, int s, int t) {
    std::vector<Edge> edges;
    edges.reserve(raw.size());
    for (const auto& r : raw) {
        edges.push_back({static_cast<int>(r[0]), static_cast<int>(r[1]), 2 * static_cast<Weight>(r[2])});
    }
    return Instance::from_scaled(n, std::move(edges), s, t);
}

bool NegTree::contains(int v) const {
    return std::binary_search(vertices.begin(), vertices.end(), v);
}

Path NegativeForest::path(int tr, int a, int b) const {
    if (tr < 0 || tr >= c()) throw VertexNotInTree("no such tree");
    if (a < 0 || b < 0 || a >= static_cast<int>(vertex_tree_.size()) ||
        b >= static_cast<int>(vertex_tree_.size()) || vertex_tree_[a] != tr || vertex_tree_[b] != tr)
        throw VertexNotInTree("vertex not in tree " + std::to_string(tr));
    Path front, back;
    int x = a, y = b;
    while (depth_[x] > depth_[y]) {
        front.push_back(x);
        x = parent_[x];
    }
    while (depth_[y] > depth_[x]) {
        back.push_back(y);
        y = parent_[y];
    }
    while (x != y) {
        front.push_back(x);
        back.push_back(y);
        x = parent_[x];
        y = parent_[y];
    }
    front.push_back(x);
    front.insert(front.end(), back.rbegin(), back.rend());
    return front;
}

Weight NegativeForest::path_weight(int tr, int a, int b) const {
    if (vertex_tree_[a] != tr || vertex_tree_[b] != tr) throw VertexNotInTree("vertex not in tree");
    Weight w = 0;
    int x = a, y = b;
    while (depth_[x] > depth_[y]) {
        w += up_weight_[x];
        x = parent_[x];
    }
    while (depth_[y] > depth_[x]) {
        w += up_weight_[y];
        y = parent_[y];
    }
    while (x != y) {
        w += up_weight_[x] + up_weight_[y];
        x = parent_[x];
        y = parent_[y];
    }
    return w;
}

NegativeForest negative_forest(const Instance& inst) {
    const int n = inst.n();
    NegativeForest f;
    f.vertex_tree_.assign(n, -1);
    f.edge_tree_.assign(inst.m(), -1);
    f.parent_.assign(n, -1);
    f.depth_.assign(n, 0);
    f.up_weight_.assign(n, 0);
    f.tree_adj_.assign(n, {});

    for (int id = 0; id < inst.m(); ++id) {
        const Edge& e = inst.edge(id);
        if (e.w < 0) {
            f.tree_adj_[e.u].push_back(e.v);
            f.tree_adj_[e.v].push_back(e.u);
        }
    }
    for (auto& a : f.tree_adj_) std::sort(a.begin(), a.end());

    // Components by BFS from the smallest vertex; a non-tree negative edge closes a cycle.
    for (int root = 0; root < n; ++root) {
        if (f.tree_adj_[root].empty() || f.vertex_tree_[root] >= 0) continue;
        NegTree tree;
        tree.index = f.c();
        std::vector<int> queue{root};
        f.vertex_tree_[root] = tree.index;
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            int x = queue[qi];
            tree.vertices.push_back(x);
            for (int y : f.tree_adj_[x]) {
                if (y == f.parent_[x]) continue;
                if (f.vertex_tree_[y] == tree.index) {
                    // Cycle: climb both ends to their meeting point.
                    Path up, down;
                    int p = x, q = y;
                    while (f.depth_[p] > f.depth_[q]) up.push_back(p), p = f.parent_[p];
                    while (f.depth_[q] > f.depth_[p]) down.push_back(q), q = f.parent_[q];
                    while (p != q) {
                        up.push_back(p), p = f.parent_[p];
                        down.push_back(q), q = f.parent_[q];
                    }
                    Path cyc = up;
                    cyc.push_back(p);
                    cyc.insert(cyc.end(), down.rbegin(), down.rend());
                    cyc.push_back(x);
                    throw NegativeCycleInForest(cyc, "negative edges contain a cycle");
                }
                f.vertex_tree_[y] = tree.index;
                f.parent_[y] = x;
                f.depth_[y] = f.depth_[x] + 1;
                f.up_weight_[y] = inst.weight(x, y);
                queue.push_back(y);
            }
        }
        std::sort(tree.vertices.begin(), tree.vertices.end());
        f.trees_.push_back(std::move(tree));
    }
    for (int id = 0; id < inst.m(); ++id) {
        const Edge& e = inst.edge(id);
        if (e.w < 0) {
            int tr = f.vertex_tree_[e.u];
            f.edge_tree_[id] = tr;
            f.trees_[tr].edges.push_back(id);
            f.trees_[tr].total += e.w;
        }
    }
    return f;
}

namespace {

// Every simple cycle is found once from its smallest vertex, in one direction.
ConservativenessCertificate enumerate_cycles(const Instance& inst) {
    const int n = inst.n();
    ConservativenessCertificate cert;
    std::vector<char> on(n, 0);
    std::vector<int> stack;
    bool found = false;

    std::function<void(int, int, Weight)> dfs = [&](int root, int x, Weight w) {
        for (auto [y, id] : inst.adj(x)) {
            if (found) return;
            if (y < root) continue;
            Weight w2 = w + inst.edge(id).w;
            if (y == root) {
                if (stack.size() >= 3 && stack[1] < x && w2 < 0) {
                    found = true;
                    cert.ok = false;
                    cert.cycle = stack;
                    cert.cycle.push_back(root);
                    cert.weight = w2;
                }
                continue;
            }
            if (on[y]) continue;
            on[y] = 1;
            stack.push_back(y);
            dfs(root, y, w2);
            stack.pop_back();
            on[y] = 0;
        }
    };
    for (int root = 0; root < n && !found; ++root) {
        on[root] = 1;
        stack = {root};
        dfs(root, root, 0);
        on[root] = 0;
    }
    return cert;
}

ConservativenessCertificate join_check(const Instance& inst) {
    ConservativenessCertificate cert;
    GraphView g(inst);
    auto join = min_weight_join(g, {});
    if (!join || join->weight >= 0) return cert;
    for (auto& cyc : split_cycles(inst, join->edges)) {
        Weight w = 0;
        for (size_t i = 0; i + 1 < cyc.size(); ++i) w += inst.weight(cyc[i], cyc[i + 1]);
        if (w < 0) {
            cert.ok = false;
            cert.cycle = cyc;
            cert.weight = w;
            return cert;
        }
    }
    // Some cycle of a negative join must be negative; reaching here is a defect.
    throw std::logic_error("negative join without a negative cycle");
}

}  // namespace

ConservativenessCertificate is_conservative(const Instance& inst) {
    try {
        negative_forest(inst);
    } catch (const NegativeCycleInForest& e) {
        ConservativenessCertificate cert;
        cert.ok = false;
        cert.cycle = e.cycle();
        for (size_t i = 0; i + 1 < cert.cycle.size(); ++i)
            cert.weight += inst.weight(cert.cycle[i], cert.cycle[i + 1]);
        return cert;
    }
    // Exhaustive enumeration is cheap only on small sparse graphs.
    if (inst.n() <= 14 && inst.m() <= 3 * inst.n()) return enumerate_cycles(inst);
    return join_check(inst);
}

Weight weight_of(const Instance& inst, const std::vector<int>& edge_ids) {
    Weight w = 0;
    for (int id : edge_ids) {
        if (id < 0 || id >= inst.m()) throw UnknownEdge("edge id out of range");
        w += inst.edge(id).w;
    }
    return w;
}

Weight weight_of(const Instance& inst, const Walk& walk) {
    Weight w = 0;
    for (size_t i = 0; i + 1 < walk.vertices.size(); ++i) w += inst.weight(walk.vertices[i], walk.vertices[i + 1]);
    return w;
}

Weight path_weight(const Instance& inst, const Path& p) {
    Weight w = 0;
    for (size_t i = 0; i + 1 < p.size(); ++i) w += inst.weight(p[i], p[i + 1]);
    return w;
}

std::vector<int> edges_of(const Instance& inst, const Path& p) {
    std::vector<int> ids;
    for (size_t i = 0; i + 1 < p.size(); ++i) {
        int id = inst.edge_id(p[i], p[i + 1]);
        if (id < 0) throw UnknownEdge("no edge " + std::to_string(p[i]) + "-" + std::to_string(p[i + 1]));
        ids.push_back(id);
    }
    return ids;
}

bool is_simple_path(const Instance& inst, const Path& p) {
    if (p.empty()) return false;
    std::vector<char> seen(inst.n(), 0);
    for (size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 0 || p[i] >= inst.n() || seen[p[i]]) return false;
        seen[p[i]] = 1;
        if (i > 0 && !inst.has_edge(p[i - 1], p[i])) return false;
    }
    return true;
}

}  // namespace stdp
