#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "stdp/uncross.hpp"

using namespace stdp;
using namespace fixtures;

namespace {

Weight total(const Instance& g, const PathPair& p) { return path_weight(g, p.p1) + path_weight(g, p.p2); }

bool same_ends(int a, int b, int c, int d) { return (a == c && b == d) || (a == d && b == c); }

PathPair pair_of(const Instance& g, Path a, Path b) {
    Weight w = path_weight(g, a) + path_weight(g, b);
    return {std::move(a), std::move(b), w};
}

}  // namespace

TEST_CASE("combine case A stitches straight through") {
    // Tree 0-1; P-paths 2->0, 3->1; Q-paths 0->4, 1->5.
    Instance g = build_instance(6, {{0, 1, -1}, {2, 0, 1}, {3, 1, 1}, {0, 4, 1}, {1, 5, 1}, {2, 3, 1}}, 2, 4);
    NegativeForest f = negative_forest(g);
    CombineReport rep;
    PathPair S = combine(g, f, pair_of(g, {2, 0}, {3, 1}), pair_of(g, {0, 4}, {1, 5}), 0, 0, &rep);
    CHECK(rep.which == CombineCase::A);
    CHECK(S.p1 == Path{2, 0, 4});
    CHECK(S.p2 == Path{3, 1, 5});
    CHECK(S.weight == 8);
    CHECK(total(g, S) == 8);
}

TEST_CASE("combine case B crosses over") {
    // Tree 0-1; Q1 = 0,6,4 and Q2 = 1,7,5; P1 = 2,7,8,0 meets Q2 first, P2 = 3,6,9,1 meets Q1 first.
    Instance g = build_instance(10,
                                {{0, 1, -1}, {0, 6, 1}, {6, 4, 1}, {1, 7, 1}, {7, 5, 1}, {2, 7, 1}, {7, 8, 1},
                                 {8, 0, 1}, {3, 6, 1}, {6, 9, 1}, {9, 1, 1}},
                                2, 5);
    REQUIRE(is_conservative(g).ok);
    NegativeForest f = negative_forest(g);
    PathPair P = pair_of(g, {2, 7, 8, 0}, {3, 6, 9, 1});
    PathPair Q = pair_of(g, {0, 6, 4}, {1, 7, 5});
    CombineReport rep;
    PathPair S = combine(g, f, P, Q, 0, 0, &rep);
    CHECK(rep.which == CombineCase::B);
    CHECK(S.p1 == Path{2, 7, 5});
    CHECK(S.p2 == Path{3, 6, 4});
    CHECK(permissively_disjoint(S.p1, S.p2));
    CHECK(total(g, S) == S.weight);
    CHECK(S.weight <= P.weight + Q.weight);
    auto best = brute_force_perm_disjoint(g, 2, 3, 4, 5);
    REQUIRE(best);
    CHECK(S.weight >= best->weight);
}

TEST_CASE("combine reports violated preconditions") {
    Instance g = build_instance(6, {{0, 1, -1}, {2, 0, 1}, {3, 1, 1}, {0, 4, 1}, {1, 5, 1}, {2, 3, 1}}, 2, 4);
    NegativeForest f = negative_forest(g);
    auto P = pair_of(g, {2, 0}, {3, 1});
    auto Q = pair_of(g, {0, 4}, {1, 5});
    CHECK_THROWS_AS(combine(g, f, pair_of(g, {2, 0}, {3, 2, 0}), Q, 0, 0), PreconditionViolated);
    CHECK_THROWS_AS(combine(g, f, P, pair_of(g, {0, 4}, {0, 1, 5}), 0, 0), PreconditionViolated);
    CHECK_THROWS_AS(combine(g, f, P, Q, 0, 1u), PreconditionViolated);
    // P2 runs through P1 and the tree edge into v2.
    CHECK_THROWS_AS(combine(g, f, pair_of(g, {2, 0}, {3, 2, 0, 1}), Q, 0, 0), PreconditionViolated);
    try {
        combine(g, f, pair_of(g, {2, 0}, {3, 1}), pair_of(g, {1, 5}, {0, 4}), 0, 0);
    } catch (const PreconditionViolated&) {
        FAIL("Q-pair order should be normalized");
    }
}

TEST_CASE("combine with a trivial P-path looks past the shared start") {
    // P1 is the single vertex 7; P2 leaves 7 and first meets the Q-paths at their shared end 1.
    Instance g = build_instance(10,
                                {{0, 5, 9}, {0, 7, 9}, {0, 8, 10}, {0, 9, -2}, {1, 5, 9}, {1, 6, 10}, {1, 7, 12},
                                 {1, 8, 13}, {2, 4, -5}, {2, 5, 9}, {2, 6, 11}, {3, 4, 16}, {3, 5, 16}, {3, 6, 15},
                                 {3, 7, 10}, {3, 8, 16}, {3, 9, 15}, {4, 6, -3}, {4, 8, 16}, {5, 7, -3}, {5, 8, -5},
                                 {6, 7, 12}, {6, 8, 9}, {6, 9, 12}, {8, 9, 11}},
                                7, 1);
    REQUIRE(is_conservative(g).ok);
    NegativeForest f = negative_forest(g);
    PathPair P = pair_of(g, {7}, {7, 1, 8});
    PathPair Q = pair_of(g, {7, 5, 1}, {8, 1});
    CombineReport rep;
    PathPair S = combine(g, f, P, Q, f.tree_of_vertex(7), 0, &rep);
    CHECK(rep.which == CombineCase::A);
    CHECK(S.p1 == Path{7, 5, 1});
    CHECK(S.p2 == Path{7, 1});
    CHECK(S.weight <= P.weight + Q.weight);
}

TEST_CASE("combine never returns one edge twice") {
    // Triangle with tree edge 0-1; the straight stitch would give 0,2 twice.
    Instance g = build_instance(3, {{0, 1, -1}, {0, 2, 3}, {1, 2, 3}}, 0, 2);
    NegativeForest f = negative_forest(g);
    PathPair P = pair_of(g, {0}, {0, 2, 1});
    PathPair Q = pair_of(g, {0, 2}, {1, 2});
    PathPair S = combine(g, f, P, Q, 0, 0);
    CHECK(S.p1 == Path{0, 2});
    CHECK(S.p2 == Path{0, 1, 2});
    CHECK(permissively_disjoint(S.p1, S.p2));
    CHECK(S.weight == 10);
    CHECK(S.weight <= P.weight + Q.weight);
}

TEST_CASE("combine with all four ends equal stays put") {
    Instance g = build_instance(3, {{0, 1, -1}, {0, 2, 3}, {1, 2, 3}}, 0, 2);
    NegativeForest f = negative_forest(g);
    PathPair S = combine(g, f, pair_of(g, {0}, {0, 2, 1}), pair_of(g, {0}, {1, 0}), 0, 0);
    CHECK(S.p1 == Path{0});
    CHECK(S.p2 == Path{0});
    CHECK(S.weight == 0);
}

TEST_CASE("combine on random quadruples") {
    int valid = 0, case_c = 0, mirrored = 0;
    int seen[4] = {0, 0, 0, 0};
    for (std::uint64_t seed = 1; valid < 300 && seed < 200000; ++seed) {
        auto q = random_quadruple(seed);
        if (!q) continue;
        ++valid;
        CombineReport rep;
        PathPair S = combine(q->inst, q->forest, q->P, q->Q, q->tree, q->first, &rep);
        ++seen[static_cast<int>(rep.which)];
        const Instance& g = q->inst;
        CHECK(is_simple_path(g, S.p1));
        CHECK(is_simple_path(g, S.p2));
        CHECK(permissively_disjoint(S.p1, S.p2));
        CHECK(same_ends(S.p1.front(), S.p2.front(), q->P.p1.front(), q->P.p2.front()));
        CHECK(same_ends(S.p1.back(), S.p2.back(), q->Q.p1.back(), q->Q.p2.back()));
        CHECK(total(g, S) == S.weight);
        const Weight in = q->P.weight + q->Q.weight;
        CHECK(S.weight <= in);
        if (rep.which == CombineCase::C1 || rep.which == CombineCase::C2) {
            CHECK(S.weight < in);
            ++case_c;
            mirrored += rep.mirrored;
        }
        auto again = combine(q->inst, q->forest, q->P, q->Q, q->tree, q->first);
        CHECK(again.p1 == S.p1);
        CHECK(again.p2 == S.p2);
    }
    CHECK(valid == 300);
    CHECK(seen[0] > 0);
    CHECK(seen[1] > 0);
    CHECK(case_c > 0);
    CHECK(mirrored > 0);
    CHECK(mirrored < case_c);
    MESSAGE("cases A/B/C1/C2: " << seen[0] << "/" << seen[1] << "/" << seen[2] << "/" << seen[3]);
}

TEST_CASE("case C output is no better than the cheapest stitch") {
    int checked = 0;
    for (std::uint64_t seed = 1; checked < 40 && seed < 400000; ++seed) {
        auto q = random_quadruple(seed);
        if (!q) continue;
        CombineReport rep;
        PathPair S = combine(q->inst, q->forest, q->P, q->Q, q->tree, q->first, &rep);
        if (rep.which != CombineCase::C1 && rep.which != CombineCase::C2) continue;
        auto best = brute_force_perm_disjoint(q->inst, q->P.p1.front(), q->P.p2.front(), q->Q.p1.back(),
                                              q->Q.p2.back());
        REQUIRE(best);
        CHECK(best->weight <= S.weight);
        ++checked;
    }
    CHECK(checked == 40);
}
