#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "tritile/constructions.hpp"
#include "tritile/graph.hpp"

using namespace tritile;

namespace {

Graph cycle(int n) {
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i) es.push_back({std::min(i, (i + 1) % n), std::max(i, (i + 1) % n)});
    return Graph(n, es);
}

Graph path(int n) {
    std::vector<Edge> es;
    for (int i = 0; i + 1 < n; ++i) es.push_back({i, i + 1});
    return Graph(n, es);
}

}  // namespace

TEST_CASE("min_degree examples") {
    CHECK(min_degree(Graph::complete(4)) == 3);
    CHECK(min_degree(gen_g1(3).graph) == 5);
    CHECK(min_degree(path(3)) == 1);
    CHECK_THROWS_AS(min_degree(Graph::empty(0)), EmptyGraph);
}

TEST_CASE("enumerate_triangles examples") {
    CHECK(enumerate_triangles(Graph::complete(4)).size() == 4);
    CHECK(enumerate_triangles(cycle(5)).empty());
    const Graph g2 = gen_g2(1).graph;
    CHECK(g2.n() == 9);
    CHECK(enumerate_triangles(g2).size() == 20);
    CHECK(oracle::triangles(g2).size() == 20);
}

TEST_CASE("independence_number examples") {
    for (int n : {1, 5, 12}) {
        auto a = independence_number(Graph::complete(n));
        CHECK(a.exact);
        CHECK(a.lower == 1);
    }
    for (int m : {1, 2}) {
        auto a = independence_number(gen_g2(m).graph);
        CHECK(a.exact);
        CHECK(a.lower == 2);
    }
    auto c5 = independence_number(cycle(5));
    CHECK(c5.lower == 2);
    CHECK(c5.upper == 2);
    CHECK(oracle::alpha(cycle(5)) == 2);
}

TEST_CASE("common_neighbors examples") {
    const Graph k4 = Graph::complete(4);
    CHECK(common_neighbors(k4, 0, 1).to_vector() == std::vector<int>{2, 3});
    CHECK(common_neighbors(cycle(5), 0, 1).empty());
    const Graph k23(5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}});
    CHECK(common_neighbors(k23, 0, 1).to_vector() == std::vector<int>{2, 3, 4});
    CHECK_THROWS_AS(common_neighbors(k4, 2, 2), SameVertex);
}

TEST_CASE("graph construction rejects malformed input") {
    CHECK_THROWS_AS(Graph(3, {{0, 0}}), InvalidGraph);
    CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), InvalidGraph);
    CHECK_THROWS_AS(Graph(3, {{0, 3}}), InvalidGraph);
}

TEST_CASE("edge-list parsing reports line numbers") {
    auto parse = [](const std::string& s) {
        std::istringstream in(s);
        return read_edge_list(in);
    };
    const Graph g = parse("3 2\n0 1\n1 2\n");
    CHECK(g.n() == 3);
    CHECK(g.edges() == 2);
    CHECK(to_edge_list(g) == "3 2\n0 1\n1 2\n");
    try {
        parse("3 2\n0 1\n0 1\n");
        FAIL("duplicate accepted");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
    try {
        parse("3 1\n2 2\n");
        FAIL("loop accepted");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("3 2\n0 1\n"), ParseError);
    CHECK_THROWS_AS(parse("3 1\n0 7\n"), ParseError);
    CHECK_THROWS_AS(parse("3 1\n0 1 2\n"), ParseError);
}

TEST_CASE("property: degree sum, triangles, alpha and codegree symmetry on random graphs") {
    Rng rng(11);
    for (int it = 0; it < 300; ++it) {
        const int n = 1 + rng.below_int(18);
        const Graph g = oracle::gnp(n, rng.uniform(), rng);
        long sum = 0;
        for (int v = 0; v < n; ++v) sum += g.degree(v);
        CHECK(sum == 2 * g.edges());

        std::vector<std::vector<int>> mine;
        for (const auto& t : enumerate_triangles(g)) mine.push_back({t.a, t.b, t.c});
        CHECK(mine == oracle::triangles(g));

        const auto a = independence_number(g);
        CHECK(a.lower <= a.upper);
        CHECK(is_independent(g, a.witness));
        CHECK(a.witness.count() == a.lower);
        if (a.exact) CHECK(a.lower == oracle::alpha(g));

        if (n >= 2) {
            const int u = rng.below_int(n);
            int v = rng.below_int(n - 1);
            if (v >= u) ++v;
            CHECK(common_neighbors(g, u, v) == common_neighbors(g, v, u));
        }
    }
}

TEST_CASE("independence bounds stay sound above the exact cutoff") {
    Rng rng(5);
    const Graph g = oracle::gnp(80, 0.3, rng);
    const auto a = independence_number(g, Budget(), 50);
    CHECK_FALSE(a.exact);
    CHECK(a.lower <= a.upper);
    CHECK(is_independent(g, a.witness));
    CHECK(a.witness.count() == a.lower);
}

TEST_CASE("induced subgraph, complement and components") {
    const Graph g = gen_g3(1).graph;
    CHECK_FALSE(is_connected(g));
    const auto comps = components(g);
    REQUIRE(comps.size() == 2);
    std::vector<int> map;
    const Graph h = g.induced(comps[1], &map);
    CHECK(h.n() == 5);
    CHECK(h.edges() == 10);
    CHECK(map.front() == 5);
    CHECK(g.complement().edges() == 45 - g.edges());
    CHECK(edges_between(g, comps[0], comps[1]) == 0);
    CHECK(edges_within(g, comps[0]) == 10);
    CHECK(has_clique(g, 5));
    CHECK_FALSE(has_clique(g, 6));
    CHECK(find_clique(g, 5).size() == 5);
}
