#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tritile/graph.hpp"

namespace tritile {

/// Vertex-disjoint triangles together with the set they cover.
struct TriangleTiling {
    std::vector<Triangle> triangles;
    VertexSet covered;

    TriangleTiling() = default;
    explicit TriangleTiling(int n) : covered(n) {}

    int size() const { return static_cast<int>(triangles.size()); }
    /// Appends t; throws InvalidGraph if t meets a covered vertex.
    void add(const Triangle& t);
    void append(const TriangleTiling& other);
};

struct TilerParams {
    double eps = 0.05;
    double phi = 0.01;
    double eps_prime = 0.1;
    double omega = 0.05;
    uint64_t seed = 0;  ///< drives the random choice of B2
};

struct ABTilingSpec {
    int a = 0;  ///< A-triangles (two vertices in A)
    int b = 0;  ///< B-triangles (two vertices in B)
};

struct TraceStep {
    std::string label;
    std::vector<std::pair<std::string, std::vector<int>>> sets;
    std::vector<Triangle> added;
};

/// Ordered log of a procedure: named vertex sets, counters and the triangles each step added.
struct ProcedureTrace {
    std::string procedure;
    uint64_t seed = 0;
    std::vector<std::pair<std::string, long>> counters;
    std::vector<TraceStep> steps;

    long counter(const std::string& name, long fallback = -1) const;
    void set_counter(const std::string& name, long value);
};

struct ExactTilingResult {
    TriangleTiling tiling;
    bool optimal = false;
    long nodes = 0;
};

/// Branch and bound maximum triangle tiling. optimal is false when the budget or the node
/// limit (negative = none) ran out. A node limit keeps truncated searches reproducible.
ExactTilingResult max_tiling_exact(const Graph& g, const Budget& budget = Budget(),
                                   long node_limit = -1);

/// Greedy tiling with exactly spec.a A-triangles and spec.b B-triangles. {A,B} must partition V(g).
TriangleTiling greedy_ab_tiling(const Graph& g, const VertexSet& A, const VertexSet& B,
                                const ABTilingSpec& spec, const TilerParams& p);

/// Same greedy rule restricted to the disjoint sets A, B (which need not cover V(g)),
/// avoiding vertices already in `used`. Threshold density d is supplied by the caller.
TriangleTiling greedy_ab_within(const Graph& g, const VertexSet& A, const VertexSet& B,
                                const ABTilingSpec& spec, double d, double eps,
                                const VertexSet& used, const std::string& label);

/// Four-phase procedure covering (A \ S) and B and exactly floor(phi*eps_prime*n) vertices of S.
std::pair<TriangleTiling, ProcedureTrace> tile_avoiding_core(const Graph& g, const VertexSet& A,
                                                             const VertexSet& B,
                                                             const VertexSet& S,
                                                             const TilerParams& p);

/// Hopcroft-Karp on left vertices 0..adj.size()-1 and right vertices 0..n_right-1.
/// match_left[i] is the matched right vertex or -1.
int max_bipartite_matching(const std::vector<std::vector<int>>& adj, int n_right,
                           std::vector<int>* match_left = nullptr);

/// True iff F[X', Y] has a perfect matching for every X' subset of X with |X'| = |Y|.
/// Throws SideMismatch if |X| < |Y|.
bool verify_robust_matchable(const Graph& F, const VertexSet& X, const VertexSet& Y);

struct LinkGraph {
    Graph h;                    ///< vertices 0..|A|-1 are A, then one vertex per matching edge
    VertexSet a_side, m_side;   ///< the two sides inside h
    std::vector<int> a_vertices;
    std::vector<Edge> m_edges;
};

/// a ~ xy iff ax and ay are edges of g. Throws NotAMatching if M is not a matching of g.
LinkGraph build_link_graph(const Graph& g, const VertexSet& A, const std::vector<Edge>& M);

/// Removes triangles with one vertex in the middle-sized set and two in the largest until the
/// three residual sets have equal size.
std::pair<TriangleTiling, ProcedureTrace> balance_tripartite(const Graph& g, const VertexSet& V1,
                                                             const VertexSet& V2,
                                                             const VertexSet& V3);

/// Residual sizes (smallest, middle, largest) per time step of a balance trace.
std::vector<std::vector<int>> balance_sizes(const ProcedureTrace& trace);
/// The two monotonicity facts: over every two steps the spread drops by at least 3
/// and the smallest set loses at most one vertex.
bool balance_trace_monotone(const ProcedureTrace& trace);

/// Disjointness, edge membership and covered-set accounting.
bool tiling_is_valid(const Graph& g, const TriangleTiling& t);

/// Rebuilds the tiling from the triangles recorded in a trace; throws TraceMismatch if a
/// recorded triangle is not a triangle of g or overlaps an earlier one.
TriangleTiling replay_trace(const Graph& g, const ProcedureTrace& trace);

}  // namespace tritile
