#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "tritile/constructions.hpp"
#include "tritile/regularity.hpp"

using namespace tritile;

namespace {

VertexSet range(int n, int lo, int hi) {
    VertexSet s(n);
    for (int v = lo; v < hi; ++v) s.set(v);
    return s;
}

// Bipartite host on [0, a) + [a, a + b) with edge probability p.
Graph random_bipartite(int a, int b, double p, Rng& rng) {
    GraphBuilder gb(a + b);
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j)
            if (rng.bernoulli(p)) gb.add_edge(i, a + j);
    return std::move(gb).build();
}

Graph complete_bipartite(int a, int b) {
    GraphBuilder gb(a + b);
    gb.add_complete_bipartite(range(a + b, 0, a), range(a + b, a, a + b));
    return std::move(gb).build();
}

// A split in halves, each half complete to its own half of B.
Graph half_half(int a, int b) {
    GraphBuilder gb(a + b);
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j)
            if ((i < a / 2) == (j < b / 2)) gb.add_edge(i, a + j);
    return std::move(gb).build();
}

std::vector<int> iota_vec(int lo, int hi) {
    std::vector<int> v;
    for (int i = lo; i < hi; ++i) v.push_back(i);
    return v;
}

}  // namespace

TEST_CASE("density examples") {
    const Graph k34 = complete_bipartite(3, 4);
    const BipartitePair p(k34, range(7, 0, 3), range(7, 3, 7));
    CHECK(density(p) == 1);
    const Graph e = Graph::empty(7);
    CHECK(density(BipartitePair(e, range(7, 0, 3), range(7, 3, 7))) == 0);
    const auto g1 = gen_g1(3);
    CHECK(density(BipartitePair(g1.graph, g1.parts[0], g1.parts[1])) == 1);
    CHECK_THROWS_AS(BipartitePair(k34, range(7, 0, 4), range(7, 3, 7)), PreconditionViolated);
    CHECK_THROWS_AS(BipartitePair(k34, VertexSet(7), range(7, 3, 7)), PreconditionViolated);
}

TEST_CASE("property: density two ways") {
    Rng rng(61);
    for (int it = 0; it < 200; ++it) {
        const int a = 1 + rng.below_int(30), b = 1 + rng.below_int(30);
        const Graph g = random_bipartite(a, b, rng.uniform(), rng);
        const BipartitePair p(g, range(a + b, 0, a), range(a + b, a, a + b));
        CHECK(density(p) == density_by_degrees(p));
        CHECK(density(p) == ratio(p.edges(), static_cast<long>(a) * b));
    }
}

TEST_CASE("check_regular_exhaustive examples") {
    const Graph k55 = complete_bipartite(5, 5);
    const BipartitePair p(k55, range(10, 0, 5), range(10, 5, 10));
    for (double eps : {0.01, 0.2, 0.5}) CHECK(check_regular_exhaustive(p, Rational(1), eps).holds);

    // K_{5,5} minus a perfect matching at d = 4/5.
    GraphBuilder gb(10);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            if (i != j) gb.add_edge(i, 5 + j);
    const Graph km = std::move(gb).build();
    const BipartitePair q(km, range(10, 0, 5), range(10, 5, 10));
    for (double eps : {0.2, 0.4, 0.6, 0.8}) {
        const auto c = check_regular_exhaustive(q, Rational(4, 5), eps);
        CHECK(c.holds == oracle::regular_full(km, iota_vec(0, 5), iota_vec(5, 10), 0.8, eps));
        CHECK(c.method == RegMethod::Exhaustive);
    }

    // Planted empty 4 x 4 block in K_{8,8}.
    GraphBuilder gp(16);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            if (!(i < 4 && j < 4)) gp.add_edge(i, 8 + j);
    const Graph planted = std::move(gp).build();
    const BipartitePair r(planted, range(16, 0, 8), range(16, 8, 16));
    const auto c = check_regular_exhaustive(r, density(r), 0.5);
    CHECK_FALSE(c.holds);
    REQUIRE(c.witness);
    const auto& [X, Y] = *c.witness;
    CHECK(X.count() >= 4);
    CHECK(Y.count() >= 4);
    CHECK(std::abs(to_double(density(r, X, Y)) - to_double(density(r))) > 0.5);

    const Graph big = complete_bipartite(17, 3);
    CHECK_THROWS_AS(check_regular_exhaustive(BipartitePair(big, range(20, 0, 17), range(20, 17, 20)), Rational(1), 0.5),
                    TooLarge);
}

TEST_CASE("property: exhaustive verdicts match full enumeration") {
    Rng rng(67);
    for (int it = 0; it < 300; ++it) {
        const int a = 1 + rng.below_int(7), b = 1 + rng.below_int(7);
        const Graph g = random_bipartite(a, b, rng.uniform(), rng);
        const BipartitePair p(g, range(a + b, 0, a), range(a + b, a, a + b));
        const double eps = 0.1 + 0.8 * rng.uniform();
        const Rational d = rng.bernoulli(0.5) ? density(p) : Rational(rng.below_int(5), 4);
        const auto c = check_regular_exhaustive(p, d, eps);
        CHECK(c.holds == oracle::regular_full(g, iota_vec(0, a), iota_vec(a, a + b), to_double(d), eps));
        if (!c.holds) {
            REQUIRE(c.witness);
            const auto& [X, Y] = *c.witness;
            CHECK(std::abs(to_double(density(p, X, Y)) - to_double(d)) > eps);
        }
    }
}

TEST_CASE("codegree_graph examples") {
    const Graph k = complete_bipartite(6, 6);
    const BipartitePair p(k, range(12, 0, 6), range(12, 6, 12));
    const auto D = codegree_graph(p, 0.1);
    CHECK(D.edges == 15);

    GraphBuilder gb(12);
    for (int i = 1; i < 6; ++i)
        for (int j = 6; j < 12; ++j) gb.add_edge(i, j);
    const Graph iso = std::move(gb).build();
    const auto Di = codegree_graph(BipartitePair(iso, range(12, 0, 6), range(12, 6, 12)), 0.3);
    CHECK(Di.adj[0].empty());
}

TEST_CASE("codegree graph of random 200 x 200 pairs is nearly complete") {
    // e(D) / C(a, 2) >= 0.99 at eps = 0.05, over 20 seeds.
    double worst = 1;
    for (uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(seed);
        const Graph g = random_bipartite(200, 200, 0.5, rng);
        const auto D = codegree_graph(BipartitePair(g, range(400, 0, 200), range(400, 200, 400)), 0.05);
        worst = std::min(worst, static_cast<double>(D.edges) / (200.0 * 199 / 2));
    }
    MESSAGE("smallest codegree edge share: " << worst);
    CHECK(worst >= 0.99);
}

TEST_CASE("kr_sufficient examples") {
    const Graph k = complete_bipartite(40, 40);
    const BipartitePair p(k, range(80, 0, 40), range(80, 40, 80));
    const auto c = kr_sufficient(p, 0.1);
    REQUIRE(c);
    CHECK(c->method == RegMethod::CodegreeSufficient);
    CHECK(c->eps == doctest::Approx(std::pow(1.6, 0.2)));

    const Graph hh = half_half(40, 40);
    CHECK_FALSE(kr_sufficient(BipartitePair(hh, range(80, 0, 40), range(80, 40, 80)), 0.05).has_value());

    Rng rng(5);
    const Graph g = random_bipartite(200, 200, 0.5, rng);
    const BipartitePair r(g, range(400, 0, 200), range(400, 200, 400));
    const auto cr = kr_sufficient(r, 0.05);
    REQUIRE(cr);
    CHECK(cr->eps == doctest::Approx(std::pow(0.8, 0.2)));
    // eps = 1e-4 needs |A| >= 20000.
    CHECK_THROWS_AS(kr_sufficient(r, 1e-4), PreconditionViolated);
    CHECK(std::pow(16 * 1e-4, 0.2) == doctest::Approx(0.2759).epsilon(1e-3));
}

TEST_CASE("kr_necessary_check examples") {
    const Graph k = complete_bipartite(10, 10);
    CHECK(kr_necessary_check(BipartitePair(k, range(20, 0, 10), range(20, 10, 20)), Rational(1), 0.1));
    const Graph hh = half_half(40, 40);
    const BipartitePair p(hh, range(80, 0, 40), range(80, 40, 80));
    CHECK_FALSE(kr_necessary_check(p, density(p), 0.05));
    CHECK_THROWS_AS(kr_necessary_check(BipartitePair(Graph::empty(4), range(4, 0, 2), range(4, 2, 4)), Rational(0), 0.1),
                    PreconditionViolated);
}

TEST_CASE("property: exhaustive regularity never contradicts the necessary codegree bound") {
    Rng rng(71);
    int regular = 0;
    for (int it = 0; it < 300; ++it) {
        const int a = 2 + rng.below_int(9), b = 2 + rng.below_int(9);
        const Graph g = random_bipartite(a, b, 0.3 + 0.7 * rng.uniform(), rng);
        const BipartitePair p(g, range(a + b, 0, a), range(a + b, a, a + b));
        if (p.edges() < a) continue;
        const double eps = 0.05 + 0.5 * rng.uniform();
        const auto c = check_regular_exhaustive(p, density(p), eps);
        if (!c.holds) continue;
        ++regular;
        CHECK(kr_necessary_check(p, density(p), eps));
    }
    CHECK(regular > 30);
}

TEST_CASE("property: slicing lemma on certified tiny pairs") {
    Rng rng(73);
    const double beta = 0.5;
    int certified = 0;
    for (int it = 0; it < 200; ++it) {
        const int a = 4 + rng.below_int(5), b = 4 + rng.below_int(5);
        const Graph g = random_bipartite(a, b, 0.5 + 0.5 * rng.uniform(), rng);
        const BipartitePair p(g, range(a + b, 0, a), range(a + b, a, a + b));
        const double eps = 0.2 + 0.2 * rng.uniform();
        const Rational d = density(p);
        if (!check_regular_exhaustive(p, d, eps).holds) continue;
        ++certified;
        for (int k = 0; k < 20; ++k) {
            const int xs = static_cast<int>(std::ceil(beta * a)) + rng.below_int(a - static_cast<int>(std::ceil(beta * a)) + 1);
            const int ys = static_cast<int>(std::ceil(beta * b)) + rng.below_int(b - static_cast<int>(std::ceil(beta * b)) + 1);
            const auto X = rng.sample(iota_vec(0, a), static_cast<size_t>(xs));
            const auto Y = rng.sample(iota_vec(a, a + b), static_cast<size_t>(ys));
            const BipartitePair sub(g, VertexSet::of(a + b, X), VertexSet::of(a + b, Y));
            CHECK(check_regular_exhaustive(sub, d, eps / beta).holds);
        }
    }
    CHECK(certified > 20);
}

TEST_CASE("check_super_regular and trimming") {
    const Graph k = complete_bipartite(8, 8);
    const BipartitePair p(k, range(16, 0, 8), range(16, 8, 16));
    CHECK(check_super_regular(p, Rational(1), 0.1).holds);
    const Graph kc = complete_bipartite(30, 30);
    CHECK(check_super_regular(BipartitePair(kc, range(60, 0, 30), range(60, 30, 60)), Rational(1), 0.1,
                              SuperMethod::Codegree)
              .holds);

    GraphBuilder gb(16);
    for (int i = 1; i < 8; ++i)
        for (int j = 8; j < 16; ++j) gb.add_edge(i, j);
    const Graph star = std::move(gb).build();
    const auto c = check_super_regular(BipartitePair(star, range(16, 0, 8), range(16, 8, 16)), Rational(7, 8), 0.3);
    CHECK_FALSE(c.holds);

    // Trimming: a random pair plus a few vertices with deliberately low degree.
    Rng rng(79);
    GraphBuilder gt(120);
    for (int i = 0; i < 60; ++i)
        for (int j = 60; j < 120; ++j)
            if (rng.bernoulli(i < 3 ? 0.05 : 0.5)) gt.add_edge(i, j);
    const Graph h = std::move(gt).build();
    const BipartitePair q(h, range(120, 0, 60), range(120, 60, 120));
    const double eps = 0.1;
    const auto [X, Y] = trim_low_degree(q, density(q), eps);
    CHECK_FALSE(X.test(0));
    CHECK(X.count() >= (1 - eps) * 60);
    CHECK(Y.count() >= (1 - eps) * 60);
    const BipartitePair t(h, X, Y);
    const auto cert = check_super_regular(t, density(q) - Rational(1, 20), 2 * eps, SuperMethod::Codegree);
    MESSAGE("trimmed pair codegree verdict: " << (cert.holds ? "super-regular" : cert.note));
}

TEST_CASE("random_slicing_experiment") {
    const Graph k = complete_bipartite(100, 100);
    const BipartitePair p(k, range(200, 0, 100), range(200, 100, 200));
    const auto s = random_slicing_experiment(p, {25, 25}, {25, 25}, 1, 5);
    CHECK(s.pass_rate == 1.0);
    CHECK(s.max_dev_density == 0.0);
    CHECK(s.max_dev_deg_a == 0.0);

    Rng rng(83);
    const Graph g = random_bipartite(400, 400, 0.5, rng);
    const BipartitePair r(g, range(800, 0, 400), range(800, 400, 800));
    const std::vector<int> sl(4, 100);
    const auto rs = random_slicing_experiment(r, sl, sl, 9, 50);
    CHECK(rs.slice_pairs == 50 * 16);
    CHECK(rs.density_rate >= 0.95);
    CHECK(rs.pass_rate >= 0.95);
    CHECK(rs.eps_prime == doctest::Approx(std::pow(33 * 0.05, 0.2)));

    const Graph hh = half_half(400, 400);
    const BipartitePair a(hh, range(800, 0, 400), range(800, 400, 800));
    const auto as = random_slicing_experiment(a, sl, sl, 9, 20);
    CHECK(as.pass_rate < 0.5);

    CHECK_THROWS_AS(random_slicing_experiment(r, {300, 300}, sl, 1, 1), SizeBudget);
    CHECK_THROWS_AS(random_slicing_experiment(r, {10}, sl, 1, 1), SizeBudget);
}

TEST_CASE("chernoff_bound") {
    CHECK(chernoff_bound(Rational(300), Rational(1, 10)) == doctest::Approx(2 * std::exp(-1.0)));
    CHECK(chernoff_bound(Rational(300), Rational(1, 100000)) == doctest::Approx(2.0).epsilon(1e-6));
    CHECK_THROWS_AS(chernoff_bound(Rational(1), Rational(0)), RangeError);
    CHECK_THROWS_AS(chernoff_bound(Rational(1), Rational(3, 2)), RangeError);

    // Hypergeometric tails: draws of 100 from 400 of which 200 are marked, mean 50.
    Rng rng(89);
    std::vector<int> pool(400);
    for (int i = 0; i < 400; ++i) pool[static_cast<size_t>(i)] = i < 200;
    for (const Rational a : {Rational(1, 10), Rational(1, 5), Rational(3, 10)}) {
        int hits = 0;
        const int trials = 10000;
        for (int t = 0; t < trials; ++t) {
            int c = 0;
            for (int v : rng.sample(pool, 100)) c += v;
            if (std::abs(c - 50) >= to_double(a) * 50) ++hits;
        }
        CHECK(static_cast<double>(hits) / trials <= chernoff_bound(Rational(50), a));
    }
}
