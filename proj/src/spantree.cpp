#include "tritile/spantree.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "tritile/errors.hpp"

namespace tritile {

std::vector<Edge> BoundedTree::edges() const {
    std::vector<Edge> out;
    for (int v = 0; v < static_cast<int>(parent.size()); ++v)
        if (parent[v] >= 0) out.emplace_back(std::min(v, parent[v]), std::max(v, parent[v]));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> BoundedTree::degrees() const {
    std::vector<int> d(parent.size(), 0);
    for (auto [u, v] : edges()) {
        ++d[u];
        ++d[v];
    }
    return d;
}

int BoundedTree::max_degree() const {
    const auto d = degrees();
    return d.empty() ? 0 : *std::max_element(d.begin(), d.end());
}

bool BoundedTree::valid_for(const Graph& R) const {
    const int n = R.n();
    if (static_cast<int>(parent.size()) != n) return false;
    if (n == 0) return true;
    int roots = 0;
    for (int v = 0; v < n; ++v) {
        if (parent[v] < 0) {
            ++roots;
            continue;
        }
        if (parent[v] >= n || !R.has_edge(v, parent[v])) return false;
    }
    if (roots != 1) return false;
    // Every vertex must reach the root without revisiting.
    for (int v = 0; v < n; ++v) {
        int x = v, steps = 0;
        while (parent[x] >= 0 && steps <= n) {
            x = parent[x];
            ++steps;
        }
        if (steps > n) return false;
    }
    return max_degree() <= k;
}

bool win_condition(const Graph& R, int k, WinMode mode) {
    if (k < 2) throw PreconditionViolated("win_condition needs k >= 2");
    if (!is_connected(R)) throw Disconnected("win_condition needs a connected graph");
    const int n = R.n();
    if (mode == WinMode::MinDegree) return static_cast<long>(k) * min_degree(R) >= n - 1;
    if (n > 40) throw TooLarge("exact win_condition is capped at 40 vertices");
    std::vector<int> order(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) order[i] = i;
    // Ascending degree so that violating sets are found early and prefixes prune well.
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return R.degree(a) < R.degree(b); });
    std::vector<int> suffix_min(static_cast<size_t>(n) + 1, 0);
    bool violated = false;
    std::function<void(int, int, int, const VertexSet&)> rec = [&](int from, int size, int sum,
                                                                  const VertexSet& cand) {
        if (violated) return;
        if (size == k) {
            if (sum < n - 1) violated = true;
            return;
        }
        for (int i = from; i < n && !violated; ++i) {
            const int v = order[i];
            if (!cand.test(v)) continue;
            // Remaining picks have degree >= deg(v); prune if even the smallest sum is large.
            if (sum + (k - size) * R.degree(v) >= n - 1) return;
            VertexSet next = cand - R.adj(v);
            next.reset(v);
            rec(i + 1, size + 1, sum + R.degree(v), next);
        }
    };
    rec(0, 0, 0, R.all());
    return !violated;
}

namespace {

struct TreeState {
    int n;
    std::vector<VertexSet> adj;  // tree adjacency
    std::vector<int> deg;

    explicit TreeState(int n_) : n(n_), adj(static_cast<size_t>(n_), VertexSet(n_)), deg(static_cast<size_t>(n_), 0) {}
    void add(int u, int v) {
        adj[u].set(v);
        adj[v].set(u);
        ++deg[u];
        ++deg[v];
    }
    void remove(int u, int v) {
        adj[u].reset(v);
        adj[v].reset(u);
        --deg[u];
        --deg[v];
    }
    std::vector<int> path(int a, int b) const {
        std::vector<int> prev(static_cast<size_t>(n), -2);
        std::deque<int> q{a};
        prev[a] = -1;
        while (!q.empty()) {
            const int x = q.front();
            q.pop_front();
            if (x == b) break;
            adj[x].for_each([&](int y) {
                if (prev[y] == -2) {
                    prev[y] = x;
                    q.push_back(y);
                }
            });
        }
        std::vector<int> p;
        for (int x = b; x != -1; x = prev[x]) p.push_back(x);
        return p;
    }
    BoundedTree to_tree(int k) const {
        BoundedTree t;
        t.k = k;
        t.parent.assign(static_cast<size_t>(n), -1);
        std::vector<char> seen(static_cast<size_t>(n), 0);
        std::deque<int> q{0};
        seen[0] = 1;
        while (!q.empty()) {
            const int x = q.front();
            q.pop_front();
            adj[x].for_each([&](int y) {
                if (!seen[y]) {
                    seen[y] = 1;
                    t.parent[y] = x;
                    q.push_back(y);
                }
            });
        }
        return t;
    }
};

/// Counts of tree degrees from n-1 down to k+1; smaller lexicographically is better.
std::vector<int> histogram(const std::vector<int>& deg, int n, int k) {
    std::vector<int> h(static_cast<size_t>(std::max(0, n - 1 - k)), 0);
    for (int d : deg)
        if (d > k) ++h[n - 1 - d];
    return h;
}

/// Exact search: add edges in order, keeping a forest with degrees <= k.
bool exact_tree(const Graph& R, int k, TreeState& best) {
    const int n = R.n();
    const auto edges = R.edge_list();
    TreeState t(n);
    std::vector<int> comp(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) comp[i] = i;
    std::function<int(int)> find = [&](int x) { return comp[x] == x ? x : find(comp[x]); };
    std::function<bool(size_t, int)> rec = [&](size_t from, int added) -> bool {
        if (added == n - 1) return true;
        if (edges.size() - from < static_cast<size_t>(n - 1 - added)) return false;
        for (size_t i = from; i < edges.size(); ++i) {
            auto [u, v] = edges[i];
            if (t.deg[u] >= k || t.deg[v] >= k) continue;
            const int ru = find(u), rv = find(v);
            if (ru == rv) continue;
            comp[ru] = rv;
            t.add(u, v);
            if (rec(i + 1, added + 1)) return true;
            t.remove(u, v);
            comp[ru] = ru;
        }
        return false;
    };
    if (!rec(0, 0)) return false;
    best = t;
    return true;
}

}  // namespace

SpanTreeResult bounded_degree_spanning_tree(const Graph& R, int k) {
    if (k < 1) throw PreconditionViolated("degree bound must be positive");
    if (!is_connected(R)) throw Disconnected("spanning tree needs a connected graph");
    const int n = R.n();
    SpanTreeResult res;
    TreeState t(n);
    {
        std::vector<char> seen(static_cast<size_t>(n), 0);
        std::deque<int> q;
        if (n > 0) {
            q.push_back(0);
            seen[0] = 1;
        }
        while (!q.empty()) {
            const int x = q.front();
            q.pop_front();
            R.adj(x).for_each([&](int y) {
                if (!seen[y]) {
                    seen[y] = 1;
                    t.add(x, y);
                    q.push_back(y);
                }
            });
        }
    }
    const auto non_tree_candidates = R.edge_list();
    auto max_deg = [&] { return n ? *std::max_element(t.deg.begin(), t.deg.end()) : 0; };
    const long cap = static_cast<long>(n) * n;
    while (max_deg() > k && res.rounds < cap) {
        ++res.rounds;
        const auto cur = histogram(t.deg, n, k);
        bool moved = false;
        for (auto [a, b] : non_tree_candidates) {
            if (t.adj[a].test(b)) continue;
            const auto p = t.path(a, b);  // b ... a
            for (size_t i = 0; i + 1 < p.size() && !moved; ++i) {
                const int x = p[i], y = p[i + 1];
                if (std::max(t.deg[x], t.deg[y]) <= k) continue;
                t.remove(x, y);
                t.add(a, b);
                if (histogram(t.deg, n, k) < cur) {
                    moved = true;
                } else {
                    t.remove(a, b);
                    t.add(x, y);
                }
            }
            if (moved) break;
        }
        if (!moved) break;
    }
    if (max_deg() > k && n <= kSpanTreeExactFallbackMax) {
        res.used_exact_fallback = true;
        TreeState e(n);
        if (exact_tree(R, k, e)) t = e;
    }
    res.tree = t.to_tree(k);
    res.success = max_deg() <= k;
    return res;
}

}  // namespace tritile
