#include "stdp/matching.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace stdp {

namespace {

using i64 = std::int64_t;

// Edmonds' weighted matching in the primal-dual formulation with explicit
// blossom bookkeeping. Endpoint p of edge k is endpoint[p], p = 2k or 2k+1.
class Blossom {
public:
    Blossom(int n, const std::vector<std::tuple<int, int, i64>>& edges, bool maxcard)
        : nv_(n), ne_(static_cast<int>(edges.size())), maxcard_(maxcard), edges_(edges) {}

    std::vector<int> run();

private:
    int nv_, ne_;
    bool maxcard_;
    const std::vector<std::tuple<int, int, i64>>& edges_;

    std::vector<int> endpoint_;
    std::vector<std::vector<int>> neighbend_;
    std::vector<int> mate_, label_, labelend_, inblossom_, blossomparent_, blossombase_, bestedge_;
    std::vector<std::vector<int>> blossomchilds_, blossomendps_, blossombestedges_;
    std::vector<char> has_bestedges_;
    std::vector<int> unused_;
    std::vector<i64> dualvar_;
    std::vector<char> allowedge_;
    std::vector<int> queue_;

    int eu(int k) const { return std::get<0>(edges_[k]); }
    int ev(int k) const { return std::get<1>(edges_[k]); }
    i64 ew(int k) const { return std::get<2>(edges_[k]); }

    i64 slack(int k) const { return dualvar_[eu(k)] + dualvar_[ev(k)] - 2 * ew(k); }

    void leaves(int b, std::vector<int>& out) const {
        if (b < nv_) {
            out.push_back(b);
            return;
        }
        for (int t : blossomchilds_[b]) leaves(t, out);
    }
    std::vector<int> leaves(int b) const {
        std::vector<int> out;
        leaves(b, out);
        return out;
    }

    void assign_label(int w, int t, int p);
    int scan_blossom(int v, int w);
    void add_blossom(int base, int k);
    void expand_blossom(int b, bool endstage);
    void augment_blossom(int b, int v);
    void augment_matching(int k);
};

void Blossom::assign_label(int w, int t, int p) {
    int b = inblossom_[w];
    label_[w] = label_[b] = t;
    labelend_[w] = labelend_[b] = p;
    bestedge_[w] = bestedge_[b] = -1;
    if (t == 1) {
        for (int v : leaves(b)) queue_.push_back(v);
    } else if (t == 2) {
        int base = blossombase_[b];
        assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
    }
}

int Blossom::scan_blossom(int v, int w) {
    std::vector<int> path;
    int base = -1;
    while (v != -1 || w != -1) {
        int b = inblossom_[v];
        if (label_[b] & 4) {
            base = blossombase_[b];
            break;
        }
        path.push_back(b);
        label_[b] = 5;
        if (labelend_[b] == -1) {
            v = -1;
        } else {
            v = endpoint_[labelend_[b]];
            b = inblossom_[v];
            v = endpoint_[labelend_[b]];
        }
        if (w != -1) std::swap(v, w);
    }
    for (int b : path) label_[b] = 1;
    return base;
}

void Blossom::add_blossom(int base, int k) {
    int v = eu(k), w = ev(k);
    int bb = inblossom_[base];
    int bv = inblossom_[v];
    int bw = inblossom_[w];
    int b = unused_.back();
    unused_.pop_back();
    blossombase_[b] = base;
    blossomparent_[b] = -1;
    blossomparent_[bb] = b;
    std::vector<int> path, endps;
    while (bv != bb) {
        blossomparent_[bv] = b;
        path.push_back(bv);
        endps.push_back(labelend_[bv]);
        v = endpoint_[labelend_[bv]];
        bv = inblossom_[v];
    }
    path.push_back(bb);
    std::reverse(path.begin(), path.end());
    std::reverse(endps.begin(), endps.end());
    endps.push_back(2 * k);
    while (bw != bb) {
        blossomparent_[bw] = b;
        path.push_back(bw);
        endps.push_back(labelend_[bw] ^ 1);
        w = endpoint_[labelend_[bw]];
        bw = inblossom_[w];
    }
    blossomchilds_[b] = path;
    blossomendps_[b] = endps;
    label_[b] = 1;
    labelend_[b] = labelend_[bb];
    dualvar_[b] = 0;
    for (int x : leaves(b)) {
        if (label_[inblossom_[x]] == 2) queue_.push_back(x);
        inblossom_[x] = b;
    }
    std::vector<int> bestedgeto(2 * nv_, -1);
    for (int sub : path) {
        std::vector<std::vector<int>> nblists;
        if (!has_bestedges_[sub]) {
            for (int x : leaves(sub)) {
                std::vector<int> l;
                for (int p : neighbend_[x]) l.push_back(p / 2);
                nblists.push_back(std::move(l));
            }
        } else {
            nblists.push_back(blossombestedges_[sub]);
        }
        for (auto& nblist : nblists) {
            for (int kk : nblist) {
                int i = eu(kk), j = ev(kk);
                if (inblossom_[j] == b) std::swap(i, j);
                int bj = inblossom_[j];
                if (bj != b && label_[bj] == 1 &&
                    (bestedgeto[bj] == -1 || slack(kk) < slack(bestedgeto[bj])))
                    bestedgeto[bj] = kk;
            }
        }
        blossombestedges_[sub].clear();
        has_bestedges_[sub] = 0;
        bestedge_[sub] = -1;
    }
    blossombestedges_[b].clear();
    for (int kk : bestedgeto)
        if (kk != -1) blossombestedges_[b].push_back(kk);
    has_bestedges_[b] = 1;
    bestedge_[b] = -1;
    for (int kk : blossombestedges_[b])
        if (bestedge_[b] == -1 || slack(kk) < slack(bestedge_[b])) bestedge_[b] = kk;
}

void Blossom::expand_blossom(int b, bool endstage) {
    for (int s : blossomchilds_[b]) {
        blossomparent_[s] = -1;
        if (s < nv_) {
            inblossom_[s] = s;
        } else if (endstage && dualvar_[s] == 0) {
            expand_blossom(s, endstage);
        } else {
            for (int x : leaves(s)) inblossom_[x] = s;
        }
    }
    if (!endstage && label_[b] == 2) {
        auto& childs = blossomchilds_[b];
        auto& endps = blossomendps_[b];
        const int len = static_cast<int>(childs.size());
        auto at = [len](int j) { return ((j % len) + len) % len; };
        int entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
        int j = static_cast<int>(std::find(childs.begin(), childs.end(), entrychild) - childs.begin());
        int jstep, endptrick;
        if (j & 1) {
            j -= len;
            jstep = 1;
            endptrick = 0;
        } else {
            jstep = -1;
            endptrick = 1;
        }
        int p = labelend_[b];
        while (j != 0) {
            label_[endpoint_[p ^ 1]] = 0;
            label_[endpoint_[endps[at(j - endptrick)] ^ endptrick ^ 1]] = 0;
            assign_label(endpoint_[p ^ 1], 2, p);
            allowedge_[endps[at(j - endptrick)] / 2] = 1;
            j += jstep;
            p = endps[at(j - endptrick)] ^ endptrick;
            allowedge_[p / 2] = 1;
            j += jstep;
        }
        int bv = childs[at(j)];
        label_[endpoint_[p ^ 1]] = label_[bv] = 2;
        labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
        bestedge_[bv] = -1;
        j += jstep;
        while (childs[at(j)] != entrychild) {
            bv = childs[at(j)];
            if (label_[bv] == 1) {
                j += jstep;
                continue;
            }
            int found = -1;
            for (int x : leaves(bv)) {
                if (label_[x] != 0) {
                    found = x;
                    break;
                }
            }
            if (found >= 0) {
                label_[found] = 0;
                label_[endpoint_[mate_[blossombase_[bv]]]] = 0;
                assign_label(found, 2, labelend_[found]);
            }
            j += jstep;
        }
    }
    label_[b] = labelend_[b] = -1;
    blossomchilds_[b].clear();
    blossomendps_[b].clear();
    blossombase_[b] = -1;
    blossombestedges_[b].clear();
    has_bestedges_[b] = 0;
    bestedge_[b] = -1;
    unused_.push_back(b);
}

void Blossom::augment_blossom(int b, int v) {
    int t = v;
    while (blossomparent_[t] != b) t = blossomparent_[t];
    if (t >= nv_) augment_blossom(t, v);
    auto& childs = blossomchilds_[b];
    auto& endps = blossomendps_[b];
    const int len = static_cast<int>(childs.size());
    auto at = [len](int j) { return ((j % len) + len) % len; };
    int i = static_cast<int>(std::find(childs.begin(), childs.end(), t) - childs.begin());
    int j = i;
    int jstep, endptrick;
    if (i & 1) {
        j -= len;
        jstep = 1;
        endptrick = 0;
    } else {
        jstep = -1;
        endptrick = 1;
    }
    while (j != 0) {
        j += jstep;
        t = childs[at(j)];
        int p = endps[at(j - endptrick)] ^ endptrick;
        if (t >= nv_) augment_blossom(t, endpoint_[p]);
        j += jstep;
        t = childs[at(j)];
        if (t >= nv_) augment_blossom(t, endpoint_[p ^ 1]);
        mate_[endpoint_[p]] = p ^ 1;
        mate_[endpoint_[p ^ 1]] = p;
    }
    std::rotate(childs.begin(), childs.begin() + i, childs.end());
    std::rotate(endps.begin(), endps.begin() + i, endps.end());
    blossombase_[b] = blossombase_[childs[0]];
}

void Blossom::augment_matching(int k) {
    int v = eu(k), w = ev(k);
    const int starts[2][2] = {{v, 2 * k + 1}, {w, 2 * k}};
    for (const auto& sp : starts) {
        int s = sp[0], p = sp[1];
        while (true) {
            int bs = inblossom_[s];
            if (bs >= nv_) augment_blossom(bs, s);
            mate_[s] = p;
            if (labelend_[bs] == -1) break;
            int t = endpoint_[labelend_[bs]];
            int bt = inblossom_[t];
            s = endpoint_[labelend_[bt]];
            int j = endpoint_[labelend_[bt] ^ 1];
            if (bt >= nv_) augment_blossom(bt, j);
            mate_[j] = labelend_[bt];
            p = labelend_[bt] ^ 1;
        }
    }
}

std::vector<int> Blossom::run() {
    if (ne_ == 0 || nv_ == 0) return std::vector<int>(nv_, -1);
    i64 maxweight = 0;
    for (int k = 0; k < ne_; ++k) maxweight = std::max(maxweight, ew(k));

    endpoint_.resize(2 * ne_);
    neighbend_.assign(nv_, {});
    for (int k = 0; k < ne_; ++k) {
        endpoint_[2 * k] = eu(k);
        endpoint_[2 * k + 1] = ev(k);
        neighbend_[eu(k)].push_back(2 * k + 1);
        neighbend_[ev(k)].push_back(2 * k);
    }
    mate_.assign(nv_, -1);
    label_.assign(2 * nv_, 0);
    labelend_.assign(2 * nv_, -1);
    inblossom_.resize(nv_);
    for (int i = 0; i < nv_; ++i) inblossom_[i] = i;
    blossomparent_.assign(2 * nv_, -1);
    blossomchilds_.assign(2 * nv_, {});
    blossombase_.assign(2 * nv_, -1);
    for (int i = 0; i < nv_; ++i) blossombase_[i] = i;
    blossomendps_.assign(2 * nv_, {});
    bestedge_.assign(2 * nv_, -1);
    blossombestedges_.assign(2 * nv_, {});
    has_bestedges_.assign(2 * nv_, 0);
    unused_.clear();
    for (int i = nv_; i < 2 * nv_; ++i) unused_.push_back(i);
    dualvar_.assign(2 * nv_, 0);
    for (int i = 0; i < nv_; ++i) dualvar_[i] = maxweight;
    allowedge_.assign(ne_, 0);

    for (int stage = 0; stage < nv_; ++stage) {
        std::fill(label_.begin(), label_.end(), 0);
        std::fill(bestedge_.begin(), bestedge_.end(), -1);
        for (int b = nv_; b < 2 * nv_; ++b) {
            blossombestedges_[b].clear();
            has_bestedges_[b] = 0;
        }
        std::fill(allowedge_.begin(), allowedge_.end(), 0);
        queue_.clear();
        for (int v = 0; v < nv_; ++v)
            if (mate_[v] == -1 && label_[inblossom_[v]] == 0) assign_label(v, 1, -1);

        bool augmented = false;
        while (true) {
            while (!queue_.empty() && !augmented) {
                int v = queue_.back();
                queue_.pop_back();
                for (int p : neighbend_[v]) {
                    int k = p / 2;
                    int w = endpoint_[p];
                    if (inblossom_[v] == inblossom_[w]) continue;
                    i64 kslack = 0;
                    if (!allowedge_[k]) {
                        kslack = slack(k);
                        if (kslack <= 0) allowedge_[k] = 1;
                    }
                    if (allowedge_[k]) {
                        if (label_[inblossom_[w]] == 0) {
                            assign_label(w, 2, p ^ 1);
                        } else if (label_[inblossom_[w]] == 1) {
                            int base = scan_blossom(v, w);
                            if (base >= 0) {
                                add_blossom(base, k);
                            } else {
                                augment_matching(k);
                                augmented = true;
                                break;
                            }
                        } else if (label_[w] == 0) {
                            label_[w] = 2;
                            labelend_[w] = p ^ 1;
                        }
                    } else if (label_[inblossom_[w]] == 1) {
                        int b = inblossom_[v];
                        if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) bestedge_[b] = k;
                    } else if (label_[w] == 0) {
                        if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) bestedge_[w] = k;
                    }
                }
            }
            if (augmented) break;

            int deltatype = -1;
            i64 delta = 0;
            int deltaedge = -1, deltablossom = -1;
            if (!maxcard_) {
                deltatype = 1;
                delta = *std::min_element(dualvar_.begin(), dualvar_.begin() + nv_);
            }
            for (int v = 0; v < nv_; ++v) {
                if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
                    i64 d = slack(bestedge_[v]);
                    if (deltatype == -1 || d < delta) {
                        delta = d;
                        deltatype = 2;
                        deltaedge = bestedge_[v];
                    }
                }
            }
            for (int b = 0; b < 2 * nv_; ++b) {
                if (blossomparent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
                    i64 ks = slack(bestedge_[b]);
                    assert(ks % 2 == 0);
                    i64 d = ks / 2;
                    if (deltatype == -1 || d < delta) {
                        delta = d;
                        deltatype = 3;
                        deltaedge = bestedge_[b];
                    }
                }
            }
            for (int b = nv_; b < 2 * nv_; ++b) {
                if (blossombase_[b] >= 0 && blossomparent_[b] == -1 && label_[b] == 2 &&
                    (deltatype == -1 || dualvar_[b] < delta)) {
                    delta = dualvar_[b];
                    deltatype = 4;
                    deltablossom = b;
                }
            }
            if (deltatype == -1) {
                deltatype = 1;
                delta = std::max<i64>(0, *std::min_element(dualvar_.begin(), dualvar_.begin() + nv_));
            }
            for (int v = 0; v < nv_; ++v) {
                if (label_[inblossom_[v]] == 1)
                    dualvar_[v] -= delta;
                else if (label_[inblossom_[v]] == 2)
                    dualvar_[v] += delta;
            }
            for (int b = nv_; b < 2 * nv_; ++b) {
                if (blossombase_[b] >= 0 && blossomparent_[b] == -1) {
                    if (label_[b] == 1)
                        dualvar_[b] += delta;
                    else if (label_[b] == 2)
                        dualvar_[b] -= delta;
                }
            }
            if (deltatype == 1) {
                break;
            } else if (deltatype == 2) {
                allowedge_[deltaedge] = 1;
                int i = eu(deltaedge), j = ev(deltaedge);
                if (label_[inblossom_[i]] == 0) std::swap(i, j);
                queue_.push_back(i);
            } else if (deltatype == 3) {
                allowedge_[deltaedge] = 1;
                queue_.push_back(eu(deltaedge));
            } else {
                expand_blossom(deltablossom, false);
            }
        }
        if (!augmented) break;
        for (int b = nv_; b < 2 * nv_; ++b) {
            if (blossomparent_[b] == -1 && blossombase_[b] >= 0 && label_[b] == 1 && dualvar_[b] == 0)
                expand_blossom(b, true);
        }
    }
    std::vector<int> result(nv_, -1);
    for (int v = 0; v < nv_; ++v)
        if (mate_[v] >= 0) result[v] = endpoint_[mate_[v]];
    return result;
}

}  // namespace

std::vector<int> max_weight_matching(int n, const std::vector<std::tuple<int, int, std::int64_t>>& edges,
                                     bool max_cardinality) {
    for (const auto& [u, v, w] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n || u == v) throw std::invalid_argument("bad matching edge");
        (void)w;
    }
    Blossom b(n, edges, max_cardinality);
    return b.run();
}

std::optional<std::vector<int>> min_cost_perfect_matching(int k, const std::vector<std::int64_t>& cost) {
    if (k % 2) return std::nullopt;
    if (k == 0) return std::vector<int>{};
    i64 maxc = 0;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) maxc = std::max(maxc, cost[i * k + j]);
    // Maximum cardinality first, then maximum of (C - cost): the cheapest perfect matching.
    std::vector<std::tuple<int, int, i64>> edges;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (cost[i * k + j] >= 0) edges.emplace_back(i, j, maxc + 1 - cost[i * k + j]);
    auto mate = max_weight_matching(k, edges, true);
    for (int v : mate)
        if (v < 0) return std::nullopt;
    return mate;
}

}  // namespace stdp
