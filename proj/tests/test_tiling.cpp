#include <doctest.h>

#include "oracles.hpp"
#include "tritile/constructions.hpp"
#include "tritile/tiling.hpp"

using namespace tritile;

namespace {

// Vertices [0, a) form A, [a, a + b) form B; density p inside each side and across.
Graph two_sided_random(int a, int b, double p_a, double p_b, double p_ab, uint64_t seed) {
    Rng rng(seed);
    GraphBuilder gb(a + b);
    for (int u = 0; u < a + b; ++u)
        for (int v = u + 1; v < a + b; ++v) {
            const bool ua = u < a, va = v < a;
            const double p = (ua && va) ? p_a : (!ua && !va) ? p_b : p_ab;
            if (rng.bernoulli(p)) gb.add_edge(u, v);
        }
    return std::move(gb).build();
}

VertexSet range(int n, int lo, int hi) {
    VertexSet s(n);
    for (int v = lo; v < hi; ++v) s.set(v);
    return s;
}

int count_a_triangles(const TriangleTiling& t, const VertexSet& A) {
    int c = 0;
    for (const auto& tri : t.triangles)
        if (A.test(tri.a) + A.test(tri.b) + A.test(tri.c) == 2) ++c;
    return c;
}

}  // namespace

TEST_CASE("max_tiling_exact examples") {
    auto k6 = max_tiling_exact(Graph::complete(6));
    CHECK(k6.optimal);
    CHECK(k6.tiling.size() == 2);

    auto g1 = max_tiling_exact(gen_g1(3).graph);
    CHECK(g1.optimal);
    CHECK(g1.tiling.size() == 2);
    CHECK(9 - 3 * g1.tiling.size() == 3);

    const Graph g3 = gen_g3(1).graph;
    auto r3 = max_tiling_exact(g3);
    CHECK(r3.optimal);
    CHECK(r3.tiling.size() == 2);
    CHECK(oracle::max_tiling(g3) == 2);
}

TEST_CASE("property: exact solver matches the oracle on every graph with n <= 7") {
    const auto graphs = oracle::read_graph6_file(TRITILE_TEST_DATA "/all_n7.g6");
    REQUIRE(graphs.size() == 1252);
    for (const auto& g : graphs) {
        auto r = max_tiling_exact(g);
        REQUIRE(r.optimal);
        CHECK(tiling_is_valid(g, r.tiling));
        CHECK(r.tiling.size() == oracle::max_tiling(g));
    }
}

TEST_CASE("property: exact solver matches the oracle on random graphs with n <= 12") {
    Rng rng(21);
    for (int it = 0; it < 400; ++it) {
        const int n = 3 + rng.below_int(10);
        const Graph g = oracle::gnp(n, 0.2 + 0.7 * rng.uniform(), rng);
        auto r = max_tiling_exact(g);
        REQUIRE(r.optimal);
        CHECK(tiling_is_valid(g, r.tiling));
        CHECK(r.tiling.size() == oracle::max_tiling(g));
    }
}

TEST_CASE("exact solver honours a node limit") {
    Rng rng(3);
    const Graph g = oracle::gnp(45, 0.3, rng);
    auto a = max_tiling_exact(g, Budget(), 50);
    auto b = max_tiling_exact(g, Budget(), 50);
    CHECK(tiling_is_valid(g, a.tiling));
    CHECK(a.tiling.triangles == b.tiling.triangles);
    CHECK(a.nodes == b.nodes);
}

TEST_CASE("greedy_ab_tiling examples") {
    // K_{4,4,4}: A = first two parts, B = third.
    GraphBuilder gb(12);
    for (int u = 0; u < 12; ++u)
        for (int v = u + 1; v < 12; ++v)
            if (u / 4 != v / 4) gb.add_edge(u, v);
    const Graph k444 = std::move(gb).build();
    const VertexSet A = range(12, 0, 8), B = range(12, 8, 12);
    auto t = greedy_ab_tiling(k444, A, B, {4, 0}, TilerParams{});
    CHECK(t.size() == 4);
    CHECK(count_a_triangles(t, A) == 4);
    CHECK(tiling_is_valid(k444, t));

    // G[A] edgeless: no A-triangle exists.
    const Graph blow = two_sided_random(6, 6, 0.0, 1.0, 1.0, 1);
    CHECK_THROWS_AS(greedy_ab_tiling(blow, range(12, 0, 6), range(12, 6, 12), {1, 0}, TilerParams{}),
                    StarvedStep);
}

TEST_CASE("greedy_ab_tiling on random 150/150 instances, 20 seeds") {
    const VertexSet A = range(300, 0, 150), B = range(300, 150, 300);
    int ok = 0;
    for (uint64_t seed = 0; seed < 20; ++seed) {
        const Graph g = two_sided_random(150, 150, 0.5, 0.5, 0.5, seed);
        try {
            auto t = greedy_ab_tiling(g, A, B, {37, 37}, TilerParams{});
            CHECK(tiling_is_valid(g, t));
            CHECK(t.size() == 74);
            CHECK(count_a_triangles(t, A) == 37);
            ++ok;
        } catch (const StarvedStep&) {
        }
    }
    CHECK(ok == 20);
}

TEST_CASE("property: greedy_ab_tiling delivers exactly the requested counts or throws") {
    Rng rng(8);
    for (int it = 0; it < 200; ++it) {
        const int a = 6 + rng.below_int(20), b = 6 + rng.below_int(20);
        const Graph g = two_sided_random(a, b, rng.uniform(), rng.uniform(), rng.uniform(), rng.next());
        const VertexSet A = range(a + b, 0, a), B = range(a + b, a, a + b);
        const ABTilingSpec spec{rng.below_int(a / 3 + 1), rng.below_int(b / 3 + 1)};
        try {
            auto t = greedy_ab_tiling(g, A, B, spec, TilerParams{});
            CHECK(tiling_is_valid(g, t));
            CHECK(count_a_triangles(t, A) == spec.a);
            CHECK(t.size() == spec.a + spec.b);
        } catch (const StarvedStep&) {
        }
    }
}

TEST_CASE("tile_avoiding_core covers A \\ S and B and exactly z vertices of S") {
    constexpr int n = 600, a = 250;
    const VertexSet A = range(n, 0, a), B = range(n, a, n);
    TilerParams p;
    p.phi = 0.01;
    p.eps_prime = 0.1;
    int ok = 0;
    for (uint64_t seed = 0; seed < 20; ++seed) {
        const Graph g = two_sided_random(a, n - a, 0.5, 0.5, 0.5, 100 + seed);
        p.seed = seed;
        const VertexSet S = range(n, 0, static_cast<int>(p.phi * n));
        try {
            auto [t, tr] = tile_avoiding_core(g, A, B, S, p);
            CHECK(tiling_is_valid(g, t));
            CHECK((((A - S) | B) - t.covered).empty());
            CHECK(t.covered.intersect_count(S) == static_cast<int>(p.phi * p.eps_prime * n));
            CHECK(replay_trace(g, tr).triangles == t.triangles);
            ++ok;
        } catch (const StarvedStep& e) {
            MESSAGE("seed " << seed << ": " << std::string(e.what()));
        }
    }
    CHECK(ok == 20);
}

TEST_CASE("tile_avoiding_core with a positive z and with S empty") {
    // n = 3000 would be needed for z > 0 at phi = 0.01, eps' = 0.1; use larger phi instead.
    constexpr int n = 300, a = 120;
    const VertexSet A = range(n, 0, a), B = range(n, a, n);
    const Graph g = two_sided_random(a, n - a, 0.6, 0.6, 0.6, 7);
    TilerParams p;
    p.phi = 0.1;
    p.eps_prime = 0.2;
    p.eps = 0.05;
    const VertexSet S = range(n, 0, 30);
    const int z = static_cast<int>(p.phi * p.eps_prime * n);
    REQUIRE(z == 6);
    auto [t, tr] = tile_avoiding_core(g, A, B, S, p);
    CHECK(tiling_is_valid(g, t));
    CHECK((((A - S) | B) - t.covered).empty());
    CHECK(t.covered.intersect_count(S) == z);
    CHECK(tr.counter("covered_in_S") == z);

    TilerParams q;
    q.phi = 1e-6;
    const VertexSet none(n);
    auto [t0, tr0] = tile_avoiding_core(g, A, B, none, q);
    CHECK(t0.covered == g.all());

    const VertexSet odd = range(n, 0, 1);
    CHECK_THROWS_AS(tile_avoiding_core(g, A, B, odd, q), DivisibilityViolation);
}

TEST_CASE("verify_robust_matchable examples") {
    GraphBuilder gb(8);
    for (int x = 0; x < 5; ++x)
        for (int y = 5; y < 8; ++y) gb.add_edge(x, y);
    const Graph k53 = std::move(gb).build();
    CHECK(verify_robust_matchable(k53, range(8, 0, 5), range(8, 5, 8)));
    CHECK_THROWS_AS(verify_robust_matchable(k53, range(8, 5, 8), range(8, 0, 5)), SideMismatch);

    GraphBuilder gi(8);
    for (int x = 0; x < 5; ++x)
        for (int y = 5; y < 7; ++y) gi.add_edge(x, y);  // vertex 7 isolated
    CHECK_FALSE(verify_robust_matchable(std::move(gi).build(), range(8, 0, 5), range(8, 5, 8)));
}

TEST_CASE("property: verify_robust_matchable agrees with the subset oracle") {
    Rng rng(4);
    for (int it = 0; it < 300; ++it) {
        const int x = it < 100 ? 10 : 1 + rng.below_int(12);
        const int y = it < 100 ? 7 : 1 + rng.below_int(x);
        const double p = it < 100 ? 0.6 : rng.uniform();
        GraphBuilder gb(x + y);
        for (int i = 0; i < x; ++i)
            for (int j = 0; j < y; ++j)
                if (rng.bernoulli(p)) gb.add_edge(i, x + j);
        const Graph f = std::move(gb).build();
        std::vector<int> xs, ys;
        for (int i = 0; i < x; ++i) xs.push_back(i);
        for (int j = 0; j < y; ++j) ys.push_back(x + j);
        CHECK(verify_robust_matchable(f, range(x + y, 0, x), range(x + y, x, x + y)) ==
              oracle::robust_matchable(f, xs, ys));
    }
}

TEST_CASE("build_link_graph examples") {
    const Graph k7 = Graph::complete(7);
    auto lg = build_link_graph(k7, range(7, 0, 3), {{3, 4}, {5, 6}});
    CHECK(lg.h.edges() == 6);
    CHECK(lg.a_side.count() == 3);
    CHECK(lg.m_side.count() == 2);

    const Graph split(7, {{3, 4}, {5, 6}});
    CHECK(build_link_graph(split, range(7, 0, 3), {{3, 4}, {5, 6}}).h.edges() == 0);

    CHECK_THROWS_AS(build_link_graph(k7, range(7, 0, 3), {{3, 4}, {4, 5}}), NotAMatching);
    CHECK_THROWS_AS(build_link_graph(split, range(7, 0, 3), {{3, 5}}), NotAMatching);

    // G2(1): link degrees equal the brute-force count of triangles through each matching edge.
    const Graph g2 = gen_g2(1).graph;
    const VertexSet A = range(9, 0, 5);
    const std::vector<Edge> M = {{5, 6}, {7, 8}};
    auto l2 = build_link_graph(g2, A, M);
    for (size_t j = 0; j < M.size(); ++j) {
        int brute = 0;
        for (const auto& t : oracle::triangles(g2)) {
            int third = -1, hits = 0;
            for (int v : t) {
                if (v == M[j].first || v == M[j].second)
                    ++hits;
                else
                    third = v;
            }
            if (hits == 2 && A.test(third)) ++brute;
        }
        CHECK(l2.h.degree(5 + static_cast<int>(j)) == brute);
    }
}

TEST_CASE("balance_tripartite examples") {
    const Graph k15 = Graph::complete(15);
    {
        auto [t, tr] = balance_tripartite(k15, range(15, 0, 5), range(15, 5, 10), range(15, 10, 15));
        CHECK(t.size() == 0);
        CHECK(tr.counter("steps") == 0);
    }
    {
        auto [t, tr] = balance_tripartite(k15, range(15, 0, 4), range(15, 4, 9), range(15, 9, 15));
        CHECK(t.size() == 1);
        CHECK(balance_sizes(tr).back() == std::vector<int>{4, 4, 4});
    }
    for (int k = 3; k <= 6; ++k) {
        const int n = 3 * k + 3;
        auto [t, tr] = balance_tripartite(Graph::complete(n), range(n, 0, k), range(n, k, 2 * k),
                                          range(n, 2 * k, n));
        CHECK(t.size() == 2);
        CHECK(balance_trace_monotone(tr));
    }
    CHECK_THROWS_AS(balance_tripartite(Graph::empty(6), range(6, 0, 1), range(6, 1, 2), range(6, 2, 6)),
                    StarvedStep);
    CHECK_THROWS_AS(balance_tripartite(k15, range(15, 0, 1), range(15, 1, 2), range(15, 2, 4)),
                    DivisibilityViolation);
}

TEST_CASE("property: balance traces are monotone and replay to the output") {
    Rng rng(13);
    int finished = 0;
    for (int it = 0; it < 200; ++it) {
        const int s1 = 1 + rng.below_int(10), s2 = 1 + rng.below_int(10);
        int s3 = 1 + rng.below_int(10);
        s3 += (3 - (s1 + s2 + s3) % 3) % 3;
        const int n = s1 + s2 + s3;
        const Graph g = oracle::gnp(n, 0.5 + 0.5 * rng.uniform(), rng);
        try {
            auto [t, tr] = balance_tripartite(g, range(n, 0, s1), range(n, s1, s1 + s2), range(n, s1 + s2, n));
            CHECK(balance_trace_monotone(tr));
            CHECK(replay_trace(g, tr).triangles == t.triangles);
            const auto last = balance_sizes(tr).back();
            CHECK(last[0] == last[2]);
            ++finished;
        } catch (const StarvedStep&) {
        }
    }
    CHECK(finished > 100);
}

TEST_CASE("tiling_is_valid and trace replay") {
    const Graph k6 = Graph::complete(6);
    CHECK(tiling_is_valid(k6, TriangleTiling(6)));
    TriangleTiling bad(6);
    bad.triangles = {make_triangle(0, 1, 2), make_triangle(2, 3, 4)};
    bad.covered = VertexSet::of(6, {0, 1, 2, 3, 4});
    CHECK_FALSE(tiling_is_valid(k6, bad));
    TriangleTiling t(6);
    t.add(make_triangle(0, 1, 2));
    CHECK_THROWS_AS(t.add(make_triangle(2, 3, 4)), InvalidGraph);
    CHECK_THROWS_AS(make_triangle(1, 1, 2), InvalidGraph);

    Rng rng(17);
    for (int it = 0; it < 100; ++it) {
        const Graph g = oracle::gnp(5 + rng.below_int(25), rng.uniform(), rng);
        CHECK(tiling_is_valid(g, max_tiling_exact(g, Budget::millis(2000)).tiling));
    }

    ProcedureTrace tr;
    tr.steps.push_back({"s", {}, {make_triangle(0, 1, 2)}});
    CHECK(replay_trace(k6, tr).size() == 1);
    tr.steps.push_back({"s", {}, {make_triangle(2, 3, 4)}});
    CHECK_THROWS_AS(replay_trace(k6, tr), TraceMismatch);
    ProcedureTrace missing;
    missing.steps.push_back({"s", {}, {make_triangle(0, 1, 2)}});
    CHECK_THROWS_AS(replay_trace(Graph::empty(6), missing), TraceMismatch);
}
