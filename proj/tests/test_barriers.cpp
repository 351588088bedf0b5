#include <doctest.h>

#include "oracles.hpp"
#include "tritile/barriers.hpp"
#include "tritile/constructions.hpp"
#include "tritile/tiling.hpp"

using namespace tritile;

namespace {

VertexSet range(int n, int lo, int hi) {
    VertexSet s(n);
    for (int v = lo; v < hi; ++v) s.set(v);
    return s;
}

// Brute-force: number of triangles with two vertices in X, and whether two disjoint ones exist.
std::pair<long, bool> two_in(const Graph& g, const VertexSet& X) {
    std::vector<std::vector<int>> ts;
    for (const auto& t : oracle::triangles(g))
        if (X.test(t[0]) + X.test(t[1]) + X.test(t[2]) == 2) ts.push_back(t);
    for (size_t i = 0; i < ts.size(); ++i)
        for (size_t j = i + 1; j < ts.size(); ++j) {
            bool disjoint = true;
            for (int u : ts[i])
                for (int v : ts[j])
                    if (u == v) disjoint = false;
            if (disjoint) return {static_cast<long>(ts.size()), true};
        }
    return {static_cast<long>(ts.size()), false};
}

}  // namespace

TEST_CASE("check_divisibility_barrier examples") {
    const auto g2 = gen_g2(1);
    const auto r = check_divisibility_barrier(g2.graph, g2.parts[0], g2.parts[1]);
    CHECK(g2.parts[0].count() == 4);
    CHECK(g2.parts[1].count() == 5);
    CHECK(r.is_barrier);
    CHECK(r.b_triangles == 0);
    CHECK(r.disjoint_a_triangles <= 1);

    const Graph k9 = Graph::complete(9);
    const auto k = check_divisibility_barrier(k9, range(9, 0, 4), range(9, 4, 9));
    CHECK_FALSE(k.is_barrier);
    CHECK(k.b_triangles > 0);
    REQUIRE(k.b_witness);
    CHECK(is_triangle(k9, *k.b_witness));

    // Two triangle-free parts of sizes 4 and 5 with no cross edges.
    const Graph e1 = er_graph(4, 1), e2 = er_graph(5, 2);
    GraphBuilder b(9);
    b.add_graph(e1, {0, 1, 2, 3});
    b.add_graph(e2, {4, 5, 6, 7, 8});
    const Graph u = std::move(b).build();
    const auto d = check_divisibility_barrier(u, range(9, 0, 4), range(9, 4, 9));
    CHECK(d.is_barrier);
    CHECK(d.a_triangles == 0);

    CHECK_THROWS_AS(check_divisibility_barrier(k9, range(9, 0, 4), range(9, 5, 9)), NotAPartition);
    CHECK_THROWS_AS(check_divisibility_barrier(k9, range(9, 0, 5), range(9, 4, 9)), NotAPartition);
}

TEST_CASE("property: divisibility verdicts match brute force and are order-sensitive") {
    Rng rng(31);
    int barriers = 0;
    for (int it = 0; it < 400; ++it) {
        const int n = 3 + rng.below_int(13);
        const Graph g = oracle::gnp(n, 0.15 + 0.5 * rng.uniform(), rng);
        VertexSet A(n), B(n);
        for (int v = 0; v < n; ++v) (rng.bernoulli(0.5) ? A : B).set(v);
        const auto r = check_divisibility_barrier(g, A, B);
        const auto [bt, bdisj] = two_in(g, B);
        const auto [at, adisj] = two_in(g, A);
        CHECK(r.residues_ok == (A.count() % 3 == 1 && B.count() % 3 == 2));
        CHECK(r.b_triangles == bt);
        CHECK(r.a_triangles == at);
        CHECK((r.disjoint_a_triangles == 2) == adisj);
        if (r.disjoint_a_triangles == 2) {
            REQUIRE(r.a_witness.size() == 2);
            const auto &s = r.a_witness[0], &t = r.a_witness[1];
            CHECK(is_triangle(g, s));
            CHECK(is_triangle(g, t));
            CHECK_FALSE((t.contains(s.a) || t.contains(s.b) || t.contains(s.c)));
        }
        CHECK(r.is_barrier == (r.residues_ok && bt == 0 && !adisj));
        const auto swapped = check_divisibility_barrier(g, B, A);
        CHECK_FALSE((r.is_barrier && swapped.is_barrier));
        if (r.is_barrier) {
            ++barriers;
            CHECK_FALSE(swapped.residues_ok);
        }
    }
    CHECK(barriers > 0);
}

TEST_CASE("check_space_barrier examples") {
    const auto g1 = gen_g1(3);
    const auto s = check_space_barrier(g1.graph, g1.parts[1] | g1.parts[2]);
    CHECK(s.is_barrier);
    CHECK(s.slack3 == 3);
    CHECK(s.slack() == doctest::Approx(1.0));

    const auto k6 = check_space_barrier(Graph::complete(6), Graph::complete(6).all());
    CHECK_FALSE(k6.is_barrier);
    REQUIRE(k6.witness);

    const auto sb = gen_space_barrier_k5free(30, 3);
    const auto u = check_space_barrier(sb.graph, sb.parts[0]);
    CHECK(u.is_barrier);
    CHECK(u.slack3 == 3);

    // Exactly 2n/3 is not a barrier: the excess must be strict.
    CHECK_FALSE(check_space_barrier(Graph::empty(9), range(9, 0, 6)).is_barrier);
    CHECK(check_space_barrier(Graph::empty(9), range(9, 0, 7)).is_barrier);
}

TEST_CASE("search_space_barrier examples") {
    int found = 0;
    for (uint64_t seed = 0; seed < 20; ++seed) {
        const auto sb = gen_space_barrier_k5free(30, seed);
        SpaceSearchOptions opt;
        opt.seed = seed;
        const auto r = search_space_barrier(sb.graph, Budget::millis(5000), opt);
        if (r) {
            CHECK(check_space_barrier(sb.graph, r->A).is_barrier);
            if (r->A == sb.parts[0]) ++found;
        }
    }
    CHECK(found == 20);

    CHECK_FALSE(search_space_barrier(Graph::complete(12)).has_value());

    GraphBuilder b(12);
    for (int u = 0; u < 12; ++u)
        for (int v = u + 1; v < 12; ++v)
            if (u / 4 != v / 4) b.add_edge(u, v);
    CHECK_FALSE(search_space_barrier(std::move(b).build()).has_value());
}

TEST_CASE("barrier_implies_no_perfect_tiling examples") {
    const auto g1 = gen_g1(3);
    const auto v1 = barrier_implies_no_perfect_tiling(g1.graph, check_space_barrier(g1.graph, g1.parts[1] | g1.parts[2]));
    CHECK(v1.barrier_valid);
    CHECK(v1.predicted_min_uncovered == 3);
    CHECK(v1.uncovered == 3);
    CHECK(v1.prediction_holds);

    const auto g2 = gen_g2(1);
    const auto v2 =
        barrier_implies_no_perfect_tiling(g2.graph, check_divisibility_barrier(g2.graph, g2.parts[0], g2.parts[1]));
    CHECK(v2.kind == "divisibility");
    CHECK(v2.uncovered == 3);
    CHECK(v2.prediction_holds);

    const auto g3 = gen_g3(1);
    const auto r3 = max_tiling_exact(g3.graph);
    CHECK(g3.graph.n() - 3 * r3.tiling.size() == 4);

    const Graph k6 = Graph::complete(6);
    CHECK_THROWS_AS(barrier_implies_no_perfect_tiling(k6, check_space_barrier(k6, k6.all())), PreconditionViolated);
}

TEST_CASE("property: validated barriers on small random graphs predict the exact deficit") {
    Rng rng(77);
    int checked = 0;
    for (int it = 0; it < 300; ++it) {
        const int n = 6 + rng.below_int(13);
        const Graph g = oracle::gnp(n, 0.2 + 0.4 * rng.uniform(), rng);
        SpaceSearchOptions opt;
        opt.seed = rng.next();
        if (auto s = search_space_barrier(g, Budget::millis(500), opt)) {
            const auto v = barrier_implies_no_perfect_tiling(g, *s);
            CHECK(v.prediction_holds);
            CHECK(v.uncovered == n - 3 * oracle::max_tiling(g));
            ++checked;
        }
        VertexSet A(n), B(n);
        for (int v = 0; v < n; ++v) (rng.bernoulli(0.5) ? A : B).set(v);
        const auto d = check_divisibility_barrier(g, A, B);
        if (d.is_barrier) {
            const auto v = barrier_implies_no_perfect_tiling(g, d);
            CHECK(v.prediction_holds);
            CHECK(v.uncovered >= 3);
            ++checked;
        }
    }
    CHECK(checked > 20);
}
