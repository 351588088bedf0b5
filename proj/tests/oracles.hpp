#pragma once

// Independent reference implementations for the test suite. They use nothing from the library
// beyond Graph adjacency queries, so a bug in a solver cannot hide in its own oracle.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "tritile/graph.hpp"
#include "tritile/rng.hpp"

namespace oracle {

using tritile::Graph;

inline std::vector<std::vector<int>> triangles(const Graph& g) {
    std::vector<std::vector<int>> out;
    for (int a = 0; a < g.n(); ++a)
        for (int b = a + 1; b < g.n(); ++b)
            for (int c = b + 1; c < g.n(); ++c)
                if (g.has_edge(a, b) && g.has_edge(a, c) && g.has_edge(b, c)) out.push_back({a, b, c});
    return out;
}

/// Maximum number of disjoint triangles, memoised over the uncovered set (n <= 24).
inline int max_tiling(const Graph& g) {
    const int n = g.n();
    if (n > 24) throw std::runtime_error("oracle::max_tiling: n too large");
    std::unordered_map<uint32_t, int> memo;
    std::function<int(uint32_t)> go = [&](uint32_t free) -> int {
        if (std::popcount(free) < 3) return 0;
        if (auto it = memo.find(free); it != memo.end()) return it->second;
        const int v = std::countr_zero(free);
        const uint32_t rest = free & ~(uint32_t{1} << v);
        int best = go(rest);  // v stays uncovered
        for (int a = 0; a < n; ++a) {
            if (!((rest >> a) & 1u) || !g.has_edge(v, a)) continue;
            for (int b = a + 1; b < n; ++b)
                if (((rest >> b) & 1u) && g.has_edge(v, b) && g.has_edge(a, b))
                    best = std::max(best, 1 + go(rest & ~(uint32_t{1} << a) & ~(uint32_t{1} << b)));
        }
        memo.emplace(free, best);
        return best;
    };
    return go(n == 32 ? ~uint32_t{0} : ((uint32_t{1} << n) - 1));
}

/// Independence number by subset enumeration (n <= 20).
inline int alpha(const Graph& g) {
    const int n = g.n();
    if (n > 20) throw std::runtime_error("oracle::alpha: n too large");
    int best = 0;
    for (uint32_t s = 0; s < (uint32_t{1} << n); ++s) {
        const int c = std::popcount(s);
        if (c <= best) continue;
        bool ok = true;
        for (int u = 0; u < n && ok; ++u)
            if ((s >> u) & 1u)
                for (int v = u + 1; v < n && ok; ++v)
                    if (((s >> v) & 1u) && g.has_edge(u, v)) ok = false;
        if (ok) best = c;
    }
    return best;
}

/// Kuhn's augmenting paths; size of a maximum matching of left into right.
inline int matching(const std::vector<std::vector<int>>& adj, int n_right) {
    std::vector<int> owner(static_cast<size_t>(n_right), -1);
    int size = 0;
    for (size_t l = 0; l < adj.size(); ++l) {
        std::vector<char> seen(static_cast<size_t>(n_right), 0);
        std::function<bool(int)> aug = [&](int u) {
            for (int r : adj[static_cast<size_t>(u)]) {
                if (seen[static_cast<size_t>(r)]) continue;
                seen[static_cast<size_t>(r)] = 1;
                if (owner[static_cast<size_t>(r)] < 0 || aug(owner[static_cast<size_t>(r)])) {
                    owner[static_cast<size_t>(r)] = u;
                    return true;
                }
            }
            return false;
        };
        if (aug(static_cast<int>(l))) ++size;
    }
    return size;
}

/// Every |Y|-subset of X perfectly matches into Y.
inline bool robust_matchable(const Graph& f, const std::vector<int>& X, const std::vector<int>& Y) {
    const int x = static_cast<int>(X.size()), y = static_cast<int>(Y.size());
    for (uint32_t s = 0; s < (uint32_t{1} << x); ++s) {
        if (std::popcount(s) != y) continue;
        std::vector<std::vector<int>> adj;
        for (int i = 0; i < x; ++i) {
            if (!((s >> i) & 1u)) continue;
            std::vector<int> row;
            for (int j = 0; j < y; ++j)
                if (f.has_edge(X[static_cast<size_t>(i)], Y[static_cast<size_t>(j)])) row.push_back(j);
            adj.push_back(row);
        }
        if (matching(adj, y) != y) return false;
    }
    return true;
}

/// Feasibility of { A x = b, x >= 0 } by a dense two-phase simplex in doubles (phase 1 only).
/// Returns the optimal sum of artificials; zero (within tol) means feasible.
inline double lp_phase1(std::vector<std::vector<double>> A, std::vector<double> b) {
    const size_t m = A.size(), nv = m ? A[0].size() : 0;
    for (size_t i = 0; i < m; ++i)
        if (b[i] < 0) {
            for (double& a : A[i]) a = -a;
            b[i] = -b[i];
        }
    // Tableau columns: nv originals, m artificials, rhs.
    const size_t cols = nv + m + 1;
    std::vector<std::vector<double>> t(m + 1, std::vector<double>(cols, 0.0));
    std::vector<size_t> basis(m);
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < nv; ++j) t[i][j] = A[i][j];
        t[i][nv + i] = 1;
        t[i][cols - 1] = b[i];
        basis[i] = nv + i;
    }
    // Objective row: minimise sum of artificials, expressed in the nonbasic columns.
    for (size_t j = 0; j < cols; ++j) {
        double s = 0;
        for (size_t i = 0; i < m; ++i) s += t[i][j];
        t[m][j] = (j >= nv && j < nv + m) ? 0.0 : -s;
    }
    const double tol = 1e-9;
    for (int iter = 0; iter < 100000; ++iter) {
        size_t enter = cols;
        for (size_t j = 0; j + 1 < cols; ++j)
            if (t[m][j] < -tol) {
                enter = j;
                break;
            }
        if (enter == cols) break;
        size_t leave = m;
        double best = 0;
        for (size_t i = 0; i < m; ++i)
            if (t[i][enter] > tol) {
                const double r = t[i][cols - 1] / t[i][enter];
                if (leave == m || r < best - 1e-12 || (std::abs(r - best) <= 1e-12 && basis[i] < basis[leave])) {
                    leave = i;
                    best = r;
                }
            }
        if (leave == m) break;  // unbounded cannot happen in phase 1
        const double piv = t[leave][enter];
        for (double& v : t[leave]) v /= piv;
        for (size_t i = 0; i <= m; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            const double f = t[i][enter];
            for (size_t j = 0; j < cols; ++j) t[i][j] -= f * t[leave][j];
        }
        basis[leave] = enter;
    }
    return -t[m][cols - 1];
}

/// Spanning tree with maximum degree <= k exists (backtracking over edges, n <= 12).
inline bool bounded_tree_exists(const Graph& g, int k) {
    const int n = g.n();
    if (n <= 1) return true;
    std::vector<std::pair<int, int>> es;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (g.has_edge(u, v)) es.push_back({u, v});
    std::vector<int> deg(static_cast<size_t>(n), 0), comp(static_cast<size_t>(n));
    std::function<int(int)> find = [&](int x) { return comp[static_cast<size_t>(x)] == x ? x : find(comp[static_cast<size_t>(x)]); };
    for (int i = 0; i < n; ++i) comp[static_cast<size_t>(i)] = i;
    std::function<bool(size_t, int)> go = [&](size_t i, int used) -> bool {
        if (used == n - 1) return true;
        if (es.size() - i < static_cast<size_t>(n - 1 - used)) return false;
        for (size_t j = i; j < es.size(); ++j) {
            auto [u, v] = es[j];
            if (deg[static_cast<size_t>(u)] >= k || deg[static_cast<size_t>(v)] >= k) continue;
            const int ru = find(u), rv = find(v);
            if (ru == rv) continue;
            auto saved = comp;
            comp[static_cast<size_t>(ru)] = rv;
            ++deg[static_cast<size_t>(u)];
            ++deg[static_cast<size_t>(v)];
            if (go(j + 1, used + 1)) return true;
            --deg[static_cast<size_t>(u)];
            --deg[static_cast<size_t>(v)];
            comp = saved;
        }
        return false;
    };
    return go(0, 0);
}

/// Whether every X in A, Y in B with |X| >= eps|A|, |Y| >= eps|B| has density within eps of d.
/// Full enumeration of both sides (|A|, |B| <= 10).
inline bool regular_full(const Graph& h, const std::vector<int>& A, const std::vector<int>& B, double d,
                         double eps) {
    const int a = static_cast<int>(A.size()), b = static_cast<int>(B.size());
    for (uint32_t x = 1; x < (uint32_t{1} << a); ++x) {
        const int cx = std::popcount(x);
        if (cx < eps * a - 1e-12) continue;
        for (uint32_t y = 1; y < (uint32_t{1} << b); ++y) {
            const int cy = std::popcount(y);
            if (cy < eps * b - 1e-12) continue;
            long e = 0;
            for (int i = 0; i < a; ++i)
                if ((x >> i) & 1u)
                    for (int j = 0; j < b; ++j)
                        if (((y >> j) & 1u) && h.has_edge(A[static_cast<size_t>(i)], B[static_cast<size_t>(j)])) ++e;
            const double dens = static_cast<double>(e) / (cx * cy);
            if (std::abs(dens - d) > eps + 1e-12) return false;
        }
    }
    return true;
}

inline Graph gnp(int n, double p, tritile::Rng& rng) {
    std::vector<tritile::Edge> es;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) es.push_back({u, v});
    return Graph(n, es);
}

/// Labelled graph on n vertices whose edges are the set bits of mask over pairs (u<v) in order.
inline Graph from_mask(int n, uint64_t mask) {
    std::vector<tritile::Edge> es;
    int bit = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v, ++bit)
            if ((mask >> bit) & 1u) es.push_back({u, v});
    return Graph(n, es);
}

/// graph6 decoding for n <= 62.
inline Graph from_graph6(const std::string& line) {
    if (line.empty()) throw std::runtime_error("empty graph6 line");
    const int n = line[0] - 63;
    std::vector<tritile::Edge> es;
    int bit = 0;
    for (int v = 1; v < n; ++v)
        for (int u = 0; u < v; ++u, ++bit) {
            const int byte = 1 + bit / 6, off = 5 - bit % 6;
            if (((line[static_cast<size_t>(byte)] - 63) >> off) & 1) es.push_back({u, v});
        }
    return Graph(n, es);
}

inline std::vector<Graph> read_graph6_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<Graph> out;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) out.push_back(from_graph6(line));
    return out;
}

}  // namespace oracle
