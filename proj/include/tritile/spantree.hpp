#pragma once

#include <vector>

#include "tritile/graph.hpp"

namespace tritile {

/// Spanning tree as a parent array rooted at vertex 0 (parent[0] = -1).
struct BoundedTree {
    std::vector<int> parent;
    int k = 0;

    std::vector<Edge> edges() const;  ///< (min, max) pairs, sorted
    std::vector<int> degrees() const;
    int max_degree() const;
    /// Spanning, acyclic, uses only edges of R and has maximum degree <= k.
    bool valid_for(const Graph& R) const;
};

enum class WinMode { Exact, MinDegree };

/// Exact mode: every independent set of size k has degree sum >= |R| - 1 (enumerated with
/// pruning, TooLarge above 40 vertices). MinDegree mode: delta(R) >= (|R| - 1)/k.
/// Throws Disconnected unless R is connected, PreconditionViolated unless k >= 2.
bool win_condition(const Graph& R, int k, WinMode mode = WinMode::Exact);

struct SpanTreeResult {
    bool success = false;
    BoundedTree tree;     ///< the final tree, also on failure
    int rounds = 0;
    bool used_exact_fallback = false;
};

inline constexpr int kSpanTreeExactFallbackMax = 14;

/// Local search from a BFS tree: a swap adds a non-tree edge and removes an edge of the cycle
/// it closes, and is accepted when the histogram of tree degrees above k gets lexicographically
/// smaller from the top. Rounds are capped at n^2. If the search gets stuck on a graph with at
/// most kSpanTreeExactFallbackMax vertices, an exact backtracking search decides the instance.
/// Throws Disconnected unless R is connected.
SpanTreeResult bounded_degree_spanning_tree(const Graph& R, int k);

}  // namespace tritile
