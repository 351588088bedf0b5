#pragma once

#include <compare>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "tritile/budget.hpp"
#include "tritile/errors.hpp"
#include "tritile/vertex_set.hpp"

namespace tritile {

using Edge = std::pair<int, int>;

/// Undirected simple graph on vertices 0..n-1 with bitset adjacency. Immutable once built.
class Graph {
public:
    Graph() = default;
    /// Throws InvalidGraph on loops, duplicates or out-of-range endpoints.
    Graph(int n, const std::vector<Edge>& edges);

    static Graph complete(int n);
    static Graph empty(int n) { return Graph(n, {}); }

    int n() const { return n_; }
    long edges() const { return m_; }
    const VertexSet& adj(int v) const { return adj_[static_cast<size_t>(v)]; }
    bool has_edge(int u, int v) const { return adj_[static_cast<size_t>(u)].test(v); }
    int degree(int v) const { return adj_[static_cast<size_t>(v)].count(); }
    VertexSet all() const { return VertexSet::full(n_); }

    /// Edges (u,v) with u < v in lexicographic order.
    std::vector<Edge> edge_list() const;

    /// Subgraph induced on s, relabelled by increasing original index. map[i] = original index.
    Graph induced(const VertexSet& s, std::vector<int>* map = nullptr) const;

    /// Complement graph.
    Graph complement() const;

private:
    friend class GraphBuilder;
    int n_ = 0;
    long m_ = 0;
    std::vector<VertexSet> adj_;
};

/// Mutable accumulator producing an immutable Graph.
class GraphBuilder {
public:
    explicit GraphBuilder(int n);
    int n() const { return n_; }
    /// Returns false (and does nothing) if the edge exists already. Throws on loops.
    bool add_edge(int u, int v);
    void remove_edge(int u, int v);
    bool has_edge(int u, int v) const { return adj_[static_cast<size_t>(u)].test(v); }
    const VertexSet& adj(int v) const { return adj_[static_cast<size_t>(v)]; }
    /// Adds every edge of h with vertex i of h mapped to map[i].
    void add_graph(const Graph& h, const std::vector<int>& map);
    void add_complete_bipartite(const VertexSet& a, const VertexSet& b);
    Graph build() &&;

private:
    int n_;
    long m_ = 0;
    std::vector<VertexSet> adj_;
};

/// Triangle with vertices stored in ascending order.
struct Triangle {
    int a = 0, b = 0, c = 0;
    auto operator<=>(const Triangle&) const = default;
    bool contains(int v) const { return v == a || v == b || v == c; }
};

/// Sorts the three vertices; throws InvalidGraph if they are not distinct.
Triangle make_triangle(int u, int v, int w);
bool is_triangle(const Graph& g, const Triangle& t);

struct IndependenceBound {
    int lower = 0;
    int upper = 0;
    bool exact = false;
    VertexSet witness;
};

/// Throws EmptyGraph when n = 0.
int min_degree(const Graph& g);
int max_degree(const Graph& g);

/// Every triangle once, lexicographically sorted.
std::vector<Triangle> enumerate_triangles(const Graph& g);
/// Triangles inside s only.
std::vector<Triangle> enumerate_triangles(const Graph& g, const VertexSet& s);
bool triangle_free(const Graph& g, const VertexSet& s);

/// Exact branch and bound (greedy-colouring bound) for n <= exact_cutoff until budget runs out;
/// otherwise greedy witness plus clique-cover upper bound.
IndependenceBound independence_number(const Graph& g, const Budget& budget = Budget(),
                                      int exact_cutoff = 50);

/// Throws SameVertex when u == v.
VertexSet common_neighbors(const Graph& g, int u, int v);

bool is_independent(const Graph& g, const VertexSet& s);
bool is_connected(const Graph& g);
/// Connected components as vertex sets, ordered by lowest member.
std::vector<VertexSet> components(const Graph& g);
/// Number of edges with both ends in s.
long edges_within(const Graph& g, const VertexSet& s);
/// Number of edges with one end in a and one in b (a, b disjoint).
long edges_between(const Graph& g, const VertexSet& a, const VertexSet& b);

/// True if g contains a clique of size r (exact search).
bool has_clique(const Graph& g, int r);
/// A clique of size r, or empty vector.
std::vector<int> find_clique(const Graph& g, int r);

// Edge-list text format: "n m" then m lines "u v" with 0 <= u < v < n.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);
std::string to_edge_list(const Graph& g);

}  // namespace tritile
