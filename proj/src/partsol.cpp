#include "stdp/partsol.hpp"

#include <algorithm>
#include <unordered_set>

namespace stdp {

std::optional<PathResult> SpCache::query(const GraphView& g, int u, int v) {
    std::string key(g.alive.begin(), g.alive.end());
    key.append(reinterpret_cast<const char*>(&u), sizeof u);
    key.append(reinterpret_cast<const char*>(&v), sizeof v);
    for (int e : g.cut) key.append(reinterpret_cast<const char*>(&e), sizeof e);
    auto it = memo_.find(key);
    if (it != memo_.end()) {
        ++hits_;
        return it->second;
    }
    ++misses_;
    auto r = conservative_shortest_path(g, u, v);
    memo_.emplace(std::move(key), r);
    return r;
}

GraphView auxiliary_graph(const Instance& inst, const NegativeForest& forest, const Spine& spine, const Path& P,
                          int u, int v, unsigned tau) {
    GraphView g(inst);
    std::unordered_set<int> onp(P.begin(), P.end());
    for (const auto& sub : spine.subtrees) {
        bool hit = std::any_of(sub.begin(), sub.end(), [&](int x) { return onp.count(x) > 0; });
        if (!hit)
            for (int x : sub) g.alive[x] = 0;
    }
    for (int x : P) g.alive[x] = 0;
    for (int tr = 0; tr < forest.c(); ++tr) {
        if (tr == spine.tree || ((tau >> tr) & 1u)) continue;
        for (int x : forest.tree(tr).vertices) g.alive[x] = 0;
    }
    g.alive[u] = 1;
    g.alive[v] = 1;
    for (size_t k = 0; k + 1 < P.size(); ++k) g.cut.push_back(inst.edge_id(P[k], P[k + 1]));
    return g;
}

PartSolTable::PartSolTable(const Instance& inst, const NegativeForest& forest, Spine spine, SpCache* cache)
    : inst_(&inst), forest_(&forest), spine_(std::move(spine)), cache_(cache ? cache : &own_cache_) {
    for (int tr = 0; tr < forest.c(); ++tr)
        if (tr != spine_.tree) full_ |= 1u << tr;
    local_.assign(inst.n(), -1);
    for (int x : forest.tree(spine_.tree).vertices) local_[x] = size_++;
    const size_t cells = static_cast<size_t>(size_) * size_ << forest.c();
    state_.assign(cells, 0);
    cells_.assign(cells, std::nullopt);
}

size_t PartSolTable::slot(int u, int v, unsigned tau) const {
    if (u < 0 || v < 0 || u >= inst_->n() || v >= inst_->n() || local_[u] < 0 || local_[v] < 0)
        throw VertexNotInTree("key vertex outside the spine's tree");
    return ((static_cast<size_t>(local_[u]) * size_ + local_[v]) << forest_->c()) | tau;
}

bool PartSolTable::computed(int u, int v, unsigned tau) const { return state_[slot(u, v, tau)] != 0; }

const std::optional<PartialEntry>& PartSolTable::get(int u, int v, unsigned tau) const {
    size_t k = slot(u, v, tau);
    if (!state_[k])
        throw TableOrderViolation("F(" + std::to_string(u) + "," + std::to_string(v) + "," + std::to_string(tau) +
                                  ") requested before it was computed");
    return cells_[k];
}

void PartSolTable::set(int u, int v, unsigned tau, std::optional<PartialEntry> entry) {
    size_t k = slot(u, v, tau);
    state_[k] = entry ? 2 : 1;
    cells_[k] = std::move(entry);
}

std::vector<unsigned> PartSolTable::submasks(unsigned mask) const {
    std::vector<unsigned> out;
    for (unsigned s = mask;; s = (s - 1) & mask) {
        out.push_back(s);
        if (s == 0) break;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::vector<PartSolTable::Key> PartSolTable::keys() const {
    std::vector<Key> out;
    const auto taus = submasks(full_);
    const int r = spine_.r();
    for (int i = 0; i < r; ++i)
        for (int j = i; j < r; ++j)
            for (int u : spine_.subtrees[i])
                for (int v : spine_.subtrees[j])
                    for (unsigned tau : taus) out.push_back({u, v, tau});
    return out;
}

namespace {

bool share_edge(const Path& a, const Path& b) {
    std::unordered_set<long long> ea;
    auto key = [](int x, int y) { return (static_cast<long long>(std::min(x, y)) << 32) | std::max(x, y); };
    for (size_t i = 0; i + 1 < a.size(); ++i) ea.insert(key(a[i], a[i + 1]));
    for (size_t i = 0; i + 1 < b.size(); ++i)
        if (ea.count(key(b[i], b[i + 1]))) return true;
    return false;
}

bool only_meet_at(const Path& a, const Path& b, int x) {
    std::unordered_set<int> in(a.begin(), a.end());
    for (int y : b)
        if (y != x && in.count(y)) return false;
    return true;
}

}  // namespace

std::optional<PartialEntry> part_sol(int u, int v, unsigned tau, const PartSolTable& table) {
    const Instance& inst = table.instance();
    const NegativeForest& forest = table.forest();
    const Spine& sp = table.spine();
    const int i = sp.sub[u], j = sp.sub[v];
    if (i < 0 || j < 0 || i > j) throw std::invalid_argument("part_sol key needs u in T_i, v in T_j, i <= j");

    std::optional<PartialEntry> best;
    auto offer = [&](Path q1, Path q2, Weight w) {
        if (best && w >= best->weight) return;
        if (!is_partial_solution(q1, q2, u, v, tau, sp, inst, forest)) return;
        best = PartialEntry{std::move(q1), std::move(q2), w};
    };

    // Q2 avoids T[x_1,x_i]: Q1 is A_h followed by T[x_1,u].
    const Path xu = forest.path(sp.tree, sp.X.front(), u);
    for (int h = 0; h < 2; ++h) {
        const Path& A = sp.A(h);
        if (!only_meet_at(A, xu, sp.X.front())) continue;
        Path q1 = join_paths(A, xu);
        int other = sp.a(1 - h);
        GraphView aux = auxiliary_graph(inst, forest, sp, q1, other, v, tau);
        auto R = table.cache().query(aux, other, v);
        if (!R) continue;
        offer(q1, R->path, path_weight(inst, q1) + R->weight);
    }

    // Q2 touches T[x_1,x_i]: extend a stored solution for an earlier subtree.
    const Path xiu = forest.path(sp.tree, sp.X[i], u);
    const auto taus = table.submasks(tau);
    for (int i2 = 0; i2 < i; ++i2) {
        for (int u2 : sp.subtrees[i2]) {
            for (int j2 = i2 + 1; j2 <= i; ++j2) {
                for (int v2 : sp.subtrees[j2]) {
                    if (share_edge(forest.path(sp.tree, sp.X[j2], v2), xiu)) continue;
                    const Path tvu = forest.path(sp.tree, v2, u);
                    const Weight wtvu = forest.path_weight(sp.tree, v2, u);
                    for (unsigned t2 : taus) {
                        const auto& prev = table.get(u2, v2, t2);
                        if (!prev) continue;
                        GraphView aux = auxiliary_graph(inst, forest, sp, tvu, u2, v, tau & ~t2);
                        auto R = table.cache().query(aux, u2, v);
                        if (!R) continue;
                        Weight w = prev->weight + wtvu + R->weight;
                        if (best && w >= best->weight) continue;
                        offer(join_paths(prev->q2, tvu), join_paths(prev->q1, R->path), w);
                    }
                }
            }
        }
    }
    return best;
}

void fill_table(PartSolTable& table) {
    for (const auto& k : table.keys()) table.set(k.u, k.v, k.tau, part_sol(k.u, k.v, k.tau, table));
}

std::optional<PathPair> perm_disjoint(const Instance& inst, const NegativeForest& forest, int tree, int a1, int a2,
                                      int b1, int b2, SpCache* cache) {
    PartSolTable table(inst, forest, build_spine(forest, tree, a1, a2, b1, b2), cache);
    fill_table(table);
    const Spine& sp = table.spine();
    std::optional<PathPair> best;
    for (auto [x, y] : {std::pair{sp.b1, sp.b2}, std::pair{sp.b2, sp.b1}}) {
        const auto& e = table.get(x, y, table.full_mask());
        if (e && (!best || e->weight < best->weight)) best = PathPair{e->q1, e->q2, e->weight};
    }
    return best;
}

}  // namespace stdp
