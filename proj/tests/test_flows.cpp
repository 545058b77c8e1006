#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "stdp/flows.hpp"
#include "stdp/solver.hpp"

using namespace stdp;
using namespace fixtures;

namespace {

bool has_arc(const FlowNetwork& net, int x, int y) {
    return std::any_of(net.arcs.begin(), net.arcs.end(),
                       [&](const Arc& a) { return a.tail == net.out_node[x] && a.head == y; });
}

// Every way to pick one vertex per tree avoiding s and t.
std::vector<Selection> all_selections(const Instance& g, const NegativeForest& f) {
    std::vector<Selection> out{{}};
    for (int tr = 0; tr < f.c(); ++tr) {
        const NegTree& T = f.tree(tr);
        if (T.contains(g.s()) || T.contains(g.t())) continue;
        std::vector<Selection> next;
        for (const auto& z : out)
            for (int v : T.vertices) {
                Selection w = z;
                w[tr] = v;
                next.push_back(w);
            }
        out = std::move(next);
    }
    return out;
}

Weight paths_weight(const Instance& g, const std::vector<Path>& ps) {
    Weight w = 0;
    for (const Path& p : ps) w += path_weight(g, p);
    return w;
}

}  // namespace

TEST_CASE("N_Z of I1 orients the tree away from the selection") {
    Instance g = i1();
    NegativeForest f = negative_forest(g);
    FlowNetwork net = build_Nz(g, f, {{0, U}});
    CHECK(has_arc(net, U, V));
    CHECK_FALSE(has_arc(net, V, U));
    for (const Arc& a : net.arcs)
        if (a.tail == net.out_node[U] && a.head == V) CHECK(a.cost == -2);
    CHECK(has_arc(net, S, U));
    CHECK(has_arc(net, U, S));
    CHECK(net.out_node[S] == S);
    CHECK(net.out_node[U] != U);

    auto flow = min_cost_flow(net, 2);
    REQUIRE(flow);
    CHECK(flow->cost == 8);
    auto paths = decompose_flow(net, *flow);
    std::sort(paths.begin(), paths.end());
    CHECK(paths == std::vector<Path>{{S, U, T}, {S, V, T}});
    CHECK(brute_force_min_cost_flow(net, 2) == 8);
}

TEST_CASE("build_Nz selection errors") {
    Instance g = i1();
    NegativeForest f = negative_forest(g);
    CHECK_THROWS_AS(build_Nz(g, f, {}), BadSelection);
    CHECK_THROWS_AS(build_Nz(g, f, {{0, S}}), BadSelection);
    CHECK_THROWS_AS(build_Nz(g, f, {{0, U}, {1, V}}), BadSelection);

    // A tree holding s takes no selection and points away from s.
    Instance h = build_instance(4, {{0, 1, -1}, {1, 2, -1}, {0, 3, 5}, {2, 3, 5}}, 0, 3);
    NegativeForest hf = negative_forest(h);
    FlowNetwork net = build_Nz(h, hf, {});
    CHECK(has_arc(net, 0, 1));
    CHECK(has_arc(net, 1, 2));
    CHECK_FALSE(has_arc(net, 1, 0));
    CHECK_FALSE(has_arc(net, 2, 1));
    CHECK_THROWS_AS(build_Nz(h, hf, {{0, 1}}), BadSelection);
}

TEST_CASE("min_cost_flow corner cases") {
    Instance bridge = build_instance(4, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}, {2, 3, 1}}, 0, 3);
    FlowNetwork net = build_Nz(bridge, negative_forest(bridge), {});
    CHECK_FALSE(min_cost_flow(net, 2));
    CHECK_FALSE(brute_force_min_cost_flow(net, 2));

    auto zero = min_cost_flow(net, 0);
    REQUIRE(zero);
    CHECK(zero->cost == 0);
    CHECK(zero->value == 0);
    CHECK(decompose_flow(net, *zero).empty());

    FlowNetwork cyc;
    cyc.nodes = 3;
    cyc.source = 0;
    cyc.sink = 2;
    cyc.arcs = {{0, 1, 1, 0}, {1, 0, 1, -3}, {0, 2, 1, 1}, {1, 2, 1, 0}};
    cyc.arcs.push_back({0, 1, 1, 1});
    CHECK_THROWS_AS(min_cost_flow(cyc, 1), NegativeCycleDetected);
}

TEST_CASE("decompose_flow rejects infeasible flows") {
    Instance g = i1();
    FlowNetwork net = build_Nz(g, negative_forest(g), {{0, U}});
    Flow bad;
    bad.arc_flow.assign(net.arcs.size(), 0);
    bad.arc_flow[0] = 5;
    bad.value = 0;
    CHECK_THROWS_AS(decompose_flow(net, bad), NonIntegralFlow);
    Flow loose;
    loose.arc_flow.assign(net.arcs.size(), 0);
    loose.arc_flow[0] = 1;
    CHECK_THROWS_AS(decompose_flow(net, loose), NonIntegralFlow);
    Flow short_flow;
    short_flow.arc_flow.assign(net.arcs.size() + 1, 0);
    CHECK_THROWS_AS(decompose_flow(net, short_flow), NonIntegralFlow);
}

TEST_CASE("N_aabb with a shared terminal has parallel sink arcs") {
    // Tree t=0 - 1 - 2, plus s=3 reaching both ends.
    Instance g = build_instance(5, {{0, 1, -1}, {1, 2, -1}, {3, 4, 2}, {4, 2, 9}, {3, 1, 9}, {3, 0, 9}}, 3, 0);
    NegativeForest f = negative_forest(g);
    FlowNetwork net = build_Naabb(g, f, 2, 0, 1, 0);
    int parallel = 0;
    for (const Arc& a : net.arcs)
        if (a.tail == net.out_node[0] && a.head == net.sink) {
            CHECK(a.cap == 1);
            ++parallel;
        }
    CHECK(parallel == 2);
    int into_t = 0;
    for (const Arc& a : net.arcs)
        if (a.head == 0) ++into_t;
    CHECK(into_t == 1);  // only from s*
}

TEST_CASE("N_aabb bidirects every surviving edge") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Instance g = generated(8, 1, seed, 0.5);
        NegativeForest f = negative_forest(g);
        const auto& vs = f.tree(0).vertices;
        for (int a1 : vs)
            for (int a2 : vs)
                for (int b1 : vs)
                    for (int b2 : vs) {
                        if (!reasonable_guess(f, 0, a1, a2, b1, b2, g.s(), g.t())) continue;
                        FlowNetwork net = build_Naabb(g, f, a1, b1, a2, b2);
                        auto kept = [&](int v) {
                            return f.tree_of_vertex(v) < 0 || v == a1 || v == a2 || v == b1 || v == b2;
                        };
                        for (const Edge& e : g.edges()) {
                            bool live = e.w >= 0 && kept(e.u) && kept(e.v);
                            bool uv = has_arc(net, e.u, e.v), vu = has_arc(net, e.v, e.u);
                            if (!live) {
                                CHECK_FALSE(uv);
                                CHECK_FALSE(vu);
                                continue;
                            }
                            bool terminal_u = e.u == g.s() || e.u == g.t();
                            bool terminal_v = e.v == g.s() || e.v == g.t();
                            CHECK(uv == !terminal_v);
                            CHECK(vu == !terminal_u);
                        }
                    }
    }
}

TEST_CASE("value-4 flow splits two from s and two from t") {
    // a1=1 - 2 - 3 - b1=4, a2=5 off 2, b2=6 off 3; s=0, t=7.
    Instance g = build_instance(8,
                                {{1, 2, -1}, {2, 3, -1}, {3, 4, -1}, {2, 5, -1}, {3, 6, -1},
                                 {0, 1, 10}, {0, 5, 10}, {4, 7, 10}, {6, 7, 10}, {0, 7, 40}},
                                0, 7);
    NegativeForest f = negative_forest(g);
    REQUIRE(reasonable_guess(f, 0, 1, 5, 4, 6, 0, 7));
    FlowNetwork net = build_Naabb(g, f, 1, 4, 5, 6);
    auto flow = min_cost_flow(net, 4);
    REQUIRE(flow);
    CHECK(flow->cost == 80);
    CHECK(brute_force_min_cost_flow(net, 4) == 80);
    auto paths = decompose_flow(net, *flow);
    std::sort(paths.begin(), paths.end());
    CHECK(paths == std::vector<Path>{{0, 1}, {0, 5}, {7, 4}, {7, 6}});
}

TEST_CASE("min_cost_flow equals brute force on small networks") {
    int nz = 0, naabb = 0;
    for (std::uint64_t seed = 1; seed <= 120; ++seed) {
        int n = 5 + seed % 4;
        int c = seed % 3;
        Instance g = generated(n, c, seed, 0.45, 3);
        NegativeForest f = negative_forest(g);
        for (const Selection& z : all_selections(g, f)) {
            FlowNetwork net = build_Nz(g, f, z);
            auto flow = min_cost_flow(net, 2);
            auto expect = brute_force_min_cost_flow(net, 2);
            REQUIRE(flow.has_value() == expect.has_value());
            ++nz;
            if (!flow) continue;
            CHECK(flow->cost == *expect);
            auto paths = decompose_flow(net, *flow);
            REQUIRE(paths.size() == 2);
            CHECK(paths_weight(g, paths) == flow->cost);
            CHECK(is_solution(g, paths[0], paths[1]));
        }
        for (int tr = 0; tr < f.c(); ++tr) {
            const auto& vs = f.tree(tr).vertices;
            for (int a1 : vs)
                for (int a2 : vs)
                    for (int b1 : vs)
                        for (int b2 : vs) {
                            if (!reasonable_guess(f, tr, a1, a2, b1, b2, g.s(), g.t())) continue;
                            FlowNetwork net = build_Naabb(g, f, a1, b1, a2, b2);
                            auto flow = min_cost_flow(net, 4);
                            auto expect = brute_force_min_cost_flow(net, 4);
                            REQUIRE(flow.has_value() == expect.has_value());
                            ++naabb;
                            if (!flow) continue;
                            CHECK(flow->cost == *expect);
                            auto paths = decompose_flow(net, *flow);
                            REQUIRE(paths.size() == 4);
                            CHECK(paths_weight(g, paths) == flow->cost);
                            int from_s = 0;
                            std::vector<int> ends, want{a1, a2, b1, b2};
                            for (const Path& p : paths) {
                                from_s += p.front() == g.s();
                                ends.push_back(p.back());
                            }
                            CHECK(from_s == 2);
                            std::sort(ends.begin(), ends.end());
                            std::sort(want.begin(), want.end());
                            CHECK(ends == want);
                        }
        }
    }
    CHECK(nz > 100);
    CHECK(naabb > 20);
}
