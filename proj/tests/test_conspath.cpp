#include <doctest.h>

#include "fixtures.hpp"
#include "stdp/conspath.hpp"

using namespace stdp;
using namespace fixtures;

TEST_CASE("conservative shortest path on I1") {
    Instance g = i1();
    for (auto backend : {SpBackend::Matching, SpBackend::Search}) {
        auto r = conservative_shortest_path(GraphView(g), S, T, backend);
        REQUIRE(r);
        CHECK(r->weight == 2);
        CHECK(path_weight(g, r->path) == 2);
        if (backend == SpBackend::Search) CHECK(r->path == Path{S, U, V, T});
        auto same = conservative_shortest_path(GraphView(g), U, U, backend);
        REQUIRE(same);
        CHECK(same->path == Path{U});
        CHECK(same->weight == 0);
    }
}

TEST_CASE("disconnected pairs give none") {
    Instance g = build_instance(4, {{0, 1, 1}, {2, 3, -1}}, 0, 3);
    CHECK_FALSE(conservative_shortest_path(GraphView(g), 0, 3));
    CHECK_FALSE(conservative_shortest_path(GraphView(g), 0, 3, SpBackend::Search));
    Instance h = i1();
    GraphView view(h);
    view.alive[U] = view.alive[V] = 0;
    CHECK_FALSE(conservative_shortest_path(view, S, T));
}

TEST_CASE("cut edges are avoided") {
    Instance g = i1();
    GraphView view(g);
    view.cut.push_back(g.edge_id(U, V));
    auto r = conservative_shortest_path(view, S, T);
    REQUIRE(r);
    CHECK(r->weight == 4);
    CHECK(r->path.size() == 3);
}

TEST_CASE("nonneg shortest path breaks ties lexicographically") {
    Instance g = i1();
    GraphView view(g);
    CHECK_THROWS_AS(nonneg_shortest_path(view, S, T), NegativeWeightSeen);
    view.cut.push_back(g.edge_id(U, V));
    auto r = nonneg_shortest_path(view, S, T);
    REQUIRE(r);
    CHECK(r->path == Path{S, U, T});
    CHECK(r->weight == 4);
    auto adj = nonneg_shortest_path(view, S, U);
    REQUIRE(adj);
    CHECK(adj->path == Path{S, U});

    Instance iso = build_instance(3, {{0, 1, 2}}, 0, 2);
    CHECK_FALSE(nonneg_shortest_path(GraphView(iso), 0, 2));
}

TEST_CASE("conservative shortest path equals enumeration") {
    int checked = 0;
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        Instance g = generated(6 + seed % 5, 1 + seed % 3, seed, 0.4);
        NegativeForest f = negative_forest(g);
        for (int a = 0; a < g.n(); ++a)
            for (int b = a + 1; b < g.n(); b += 2) {
                auto all = simple_paths(g, a, b);
                auto r = conservative_shortest_path(GraphView(g), a, b);
                auto back = conservative_shortest_path(GraphView(g), b, a);
                REQUIRE(r.has_value() == !all.empty());
                if (!r) continue;
                Weight best = all.front().second;
                for (auto& [p, w] : all) best = std::min(best, w);
                CHECK(r->weight == best);
                CHECK(path_weight(g, r->path) == best);
                CHECK(is_simple_path(g, r->path));
                CHECK(back->weight == best);
                int ta = f.tree_of_vertex(a);
                if (ta >= 0 && ta == f.tree_of_vertex(b)) CHECK(r->weight >= f.path_weight(ta, a, b));
                ++checked;
            }
    }
    CHECK(checked > 500);
}

TEST_CASE("empty join and cycle splitting") {
    Instance g = i1();
    auto j = min_weight_join(GraphView(g), {});
    REQUIRE(j);
    CHECK(j->weight == 0);

    Instance tri = build_instance(4, {{0, 1, 2}, {1, 2, 2}, {0, 2, -5}, {2, 3, 1}}, 0, 3);
    auto bad = min_weight_join(GraphView(tri), {});
    REQUIRE(bad);
    CHECK(bad->weight < 0);
    auto cycles = split_cycles(tri, bad->edges);
    REQUIRE(cycles.size() == 1);
    CHECK(cycles[0].front() == cycles[0].back());
    CHECK(weight_of(tri, Walk{cycles[0]}) == -2);
}
