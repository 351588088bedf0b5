#include "tritile/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace tritile {

Graph::Graph(int n, const std::vector<Edge>& edges) {
    if (n < 0) throw InvalidGraph("negative vertex count");
    GraphBuilder b(n);
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw InvalidGraph("edge endpoint out of range: " + std::to_string(u) + " " +
                               std::to_string(v));
        if (!b.add_edge(u, v))
            throw InvalidGraph("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    }
    *this = std::move(b).build();
}

Graph Graph::complete(int n) {
    GraphBuilder b(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) b.add_edge(u, v);
    return std::move(b).build();
}

std::vector<Edge> Graph::edge_list() const {
    std::vector<Edge> out;
    out.reserve(static_cast<size_t>(m_));
    for (int u = 0; u < n_; ++u)
        for (int v = adj_[u].next(u); v >= 0; v = adj_[u].next(v)) out.emplace_back(u, v);
    return out;
}

Graph Graph::induced(const VertexSet& s, std::vector<int>* map) const {
    std::vector<int> verts = s.to_vector();
    std::vector<int> pos(static_cast<size_t>(n_), -1);
    for (size_t i = 0; i < verts.size(); ++i) pos[verts[i]] = static_cast<int>(i);
    GraphBuilder b(static_cast<int>(verts.size()));
    for (size_t i = 0; i < verts.size(); ++i) {
        const VertexSet nb = adj_[verts[i]] & s;
        nb.for_each([&](int w) {
            if (pos[w] > static_cast<int>(i)) b.add_edge(static_cast<int>(i), pos[w]);
        });
    }
    if (map) *map = std::move(verts);
    return std::move(b).build();
}

Graph Graph::complement() const {
    GraphBuilder b(n_);
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v)
            if (!has_edge(u, v)) b.add_edge(u, v);
    return std::move(b).build();
}

GraphBuilder::GraphBuilder(int n) : n_(n), adj_(static_cast<size_t>(n), VertexSet(n)) {}

bool GraphBuilder::add_edge(int u, int v) {
    if (u == v) throw InvalidGraph("loop at vertex " + std::to_string(u));
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw InvalidGraph("edge endpoint out of range");
    if (adj_[u].test(v)) return false;
    adj_[u].set(v);
    adj_[v].set(u);
    ++m_;
    return true;
}

void GraphBuilder::remove_edge(int u, int v) {
    if (!adj_[u].test(v)) return;
    adj_[u].reset(v);
    adj_[v].reset(u);
    --m_;
}

void GraphBuilder::add_graph(const Graph& h, const std::vector<int>& map) {
    for (auto [u, v] : h.edge_list()) add_edge(map[u], map[v]);
}

void GraphBuilder::add_complete_bipartite(const VertexSet& a, const VertexSet& b) {
    a.for_each([&](int u) { b.for_each([&](int v) { add_edge(u, v); }); });
}

Graph GraphBuilder::build() && {
    Graph g;
    g.n_ = n_;
    g.m_ = m_;
    g.adj_ = std::move(adj_);
    return g;
}

Triangle make_triangle(int u, int v, int w) {
    if (u == v || v == w || u == w) throw InvalidGraph("triangle with repeated vertex");
    int x[3] = {u, v, w};
    std::sort(x, x + 3);
    return Triangle{x[0], x[1], x[2]};
}

bool is_triangle(const Graph& g, const Triangle& t) {
    if (t.a < 0 || t.c >= g.n() || !(t.a < t.b && t.b < t.c)) return false;
    return g.has_edge(t.a, t.b) && g.has_edge(t.a, t.c) && g.has_edge(t.b, t.c);
}

int min_degree(const Graph& g) {
    if (g.n() == 0) throw EmptyGraph("minimum degree of the empty graph");
    int d = g.n();
    for (int v = 0; v < g.n(); ++v) d = std::min(d, g.degree(v));
    return d;
}

int max_degree(const Graph& g) {
    int d = 0;
    for (int v = 0; v < g.n(); ++v) d = std::max(d, g.degree(v));
    return d;
}

std::vector<Triangle> enumerate_triangles(const Graph& g, const VertexSet& s) {
    std::vector<Triangle> out;
    s.for_each([&](int u) {
        const VertexSet nu = g.adj(u) & s;
        for (int v = nu.next(u); v >= 0; v = nu.next(v)) {
            const VertexSet common = nu & g.adj(v);
            for (int w = common.next(v); w >= 0; w = common.next(w)) out.push_back({u, v, w});
        }
    });
    return out;
}

std::vector<Triangle> enumerate_triangles(const Graph& g) {
    return enumerate_triangles(g, g.all());
}

bool triangle_free(const Graph& g, const VertexSet& s) {
    bool found = false;
    s.for_each([&](int u) {
        if (found) return;
        const VertexSet nu = g.adj(u) & s;
        for (int v = nu.next(u); v >= 0 && !found; v = nu.next(v))
            if (nu.intersect_count(g.adj(v)) > 0) found = true;
    });
    return !found;
}

VertexSet common_neighbors(const Graph& g, int u, int v) {
    if (u == v) throw SameVertex("common neighbours of a vertex with itself");
    return g.adj(u) & g.adj(v);
}

bool is_independent(const Graph& g, const VertexSet& s) {
    bool ok = true;
    s.for_each([&](int v) {
        if (ok && g.adj(v).intersects(s)) ok = false;
    });
    return ok;
}

std::vector<VertexSet> components(const Graph& g) {
    std::vector<VertexSet> out;
    VertexSet seen(g.n());
    for (int s = 0; s < g.n(); ++s) {
        if (seen.test(s)) continue;
        VertexSet comp(g.n()), frontier(g.n());
        comp.set(s);
        frontier.set(s);
        while (frontier.any()) {
            VertexSet next(g.n());
            frontier.for_each([&](int v) { next |= g.adj(v); });
            next -= comp;
            comp |= next;
            frontier = next;
        }
        seen |= comp;
        out.push_back(comp);
    }
    return out;
}

bool is_connected(const Graph& g) { return g.n() > 0 && components(g).size() == 1; }

long edges_within(const Graph& g, const VertexSet& s) {
    long twice = 0;
    s.for_each([&](int v) { twice += g.adj(v).intersect_count(s); });
    return twice / 2;
}

long edges_between(const Graph& g, const VertexSet& a, const VertexSet& b) {
    long e = 0;
    a.for_each([&](int v) { e += g.adj(v).intersect_count(b); });
    return e;
}

namespace {

// Independent-set branch and bound. The bound for a candidate set is the size of a
// greedy clique cover (colouring of the complement), Tomita-style.
class MisSearch {
public:
    MisSearch(const Graph& g, const Budget& budget) : g_(g), budget_(budget), cur_(g.n()) {}

    void run(VertexSet p, int initial_best, const VertexSet& initial_witness) {
        best_ = initial_best;
        best_set_ = initial_witness;
        expand(p, 0);
    }
    bool aborted() const { return aborted_; }
    int best() const { return best_; }
    const VertexSet& best_set() const { return best_set_; }

private:
    void cover(const VertexSet& p, std::vector<int>& order, std::vector<int>& bound) {
        VertexSet q = p;
        int k = 0;
        while (q.any()) {
            ++k;
            VertexSet r = q;
            while (r.any()) {
                int v = r.first();
                r.reset(v);
                r &= g_.adj(v);
                q.reset(v);
                order.push_back(v);
                bound.push_back(k);
            }
        }
    }

    void expand(VertexSet p, int size) {
        if (aborted_) return;
        if ((++nodes_ & 1023) == 0 && budget_.expired()) {
            aborted_ = true;
            return;
        }
        std::vector<int> order, bound;
        cover(p, order, bound);
        for (size_t i = order.size(); i-- > 0;) {
            if (size + bound[i] <= best_) return;
            const int v = order[i];
            VertexSet np = p - g_.adj(v);
            np.reset(v);
            cur_.set(v);
            if (np.empty()) {
                if (size + 1 > best_) {
                    best_ = size + 1;
                    best_set_ = cur_;
                }
            } else {
                expand(np, size + 1);
            }
            cur_.reset(v);
            p.reset(v);
            if (aborted_) return;
        }
    }

    const Graph& g_;
    const Budget& budget_;
    VertexSet cur_;
    VertexSet best_set_;
    int best_ = 0;
    long nodes_ = 0;
    bool aborted_ = false;
};

VertexSet greedy_independent(const Graph& g) {
    VertexSet alive = g.all(), out(g.n());
    while (alive.any()) {
        int best = -1, bestdeg = g.n() + 1;
        alive.for_each([&](int v) {
            int d = g.adj(v).intersect_count(alive);
            if (d < bestdeg) {
                bestdeg = d;
                best = v;
            }
        });
        out.set(best);
        alive -= g.adj(best);
        alive.reset(best);
    }
    return out;
}

int clique_cover_size(const Graph& g) {
    VertexSet q = g.all();
    int k = 0;
    while (q.any()) {
        ++k;
        VertexSet r = q;
        while (r.any()) {
            int v = r.first();
            r.reset(v);
            r &= g.adj(v);
            q.reset(v);
        }
    }
    return k;
}

bool clique_search(const Graph& g, VertexSet p, int need, std::vector<int>& cur) {
    if (need == 0) return true;
    if (p.count() < need) return false;
    if (need == 1) {
        cur.push_back(p.first());
        return true;
    }
    if (need == 2) {
        for (int u = p.first(); u >= 0; u = p.next(u)) {
            const VertexSet nu = g.adj(u) & p;
            int w = nu.next(u);
            if (w >= 0) {
                cur.push_back(u);
                cur.push_back(w);
                return true;
            }
        }
        return false;
    }
    for (int v = p.first(); v >= 0; v = p.next(v)) {
        VertexSet np = p & g.adj(v);
        // restrict to later vertices so each clique is visited once
        for (int u = np.first(); u >= 0 && u < v; u = np.next(u)) np.reset(u);
        if (np.count() >= need - 1) {
            cur.push_back(v);
            if (clique_search(g, np, need - 1, cur)) return true;
            cur.pop_back();
        }
    }
    return false;
}

}  // namespace

IndependenceBound independence_number(const Graph& g, const Budget& budget, int exact_cutoff) {
    IndependenceBound r;
    if (g.n() == 0) {
        r.exact = true;
        r.witness = VertexSet(0);
        return r;
    }
    VertexSet greedy = greedy_independent(g);
    r.lower = greedy.count();
    r.witness = greedy;
    r.upper = clique_cover_size(g);
    if (g.n() <= exact_cutoff) {
        MisSearch s(g, budget);
        s.run(g.all(), r.lower, greedy);
        r.lower = s.best();
        r.witness = s.best_set();
        if (!s.aborted()) {
            r.upper = r.lower;
            r.exact = true;
        }
    }
    if (r.lower == r.upper) r.exact = true;
    return r;
}

std::vector<int> find_clique(const Graph& g, int r) {
    std::vector<int> cur;
    if (r <= 0) return cur;
    if (clique_search(g, g.all(), r, cur)) return cur;
    return {};
}

bool has_clique(const Graph& g, int r) { return r <= 0 || !find_clique(g, r).empty(); }

Graph read_edge_list(std::istream& in) {
    std::string line;
    int lineno = 0;
    auto next_line = [&](std::string& out) {
        while (std::getline(in, out)) {
            ++lineno;
            size_t p = out.find_first_not_of(" \t\r");
            if (p == std::string::npos || out[p] == '#') continue;
            return true;
        }
        return false;
    };
    if (!next_line(line)) throw ParseError(lineno, "missing header \"n m\"");
    long n = -1, m = -1;
    {
        std::istringstream hs(line);
        std::string extra;
        if (!(hs >> n >> m) || (hs >> extra) || n < 0 || m < 0)
            throw ParseError(lineno, "malformed header, expected \"n m\"");
    }
    GraphBuilder b(static_cast<int>(n));
    for (long i = 0; i < m; ++i) {
        if (!next_line(line))
            throw ParseError(lineno, "expected " + std::to_string(m) + " edges, found " +
                                         std::to_string(i));
        std::istringstream ls(line);
        long u, v;
        std::string extra;
        if (!(ls >> u >> v) || (ls >> extra)) throw ParseError(lineno, "malformed edge line");
        if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError(lineno, "vertex out of range");
        if (u == v) throw ParseError(lineno, "loop " + std::to_string(u));
        if (u > v) throw ParseError(lineno, "edge must be written with u < v");
        if (!b.add_edge(static_cast<int>(u), static_cast<int>(v)))
            throw ParseError(lineno, "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    }
    if (next_line(line)) throw ParseError(lineno, "trailing content after the edge list");
    return std::move(b).build();
}

Graph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open " + path);
    return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    out << g.n() << ' ' << g.edges() << '\n';
    for (auto [u, v] : g.edge_list()) out << u << ' ' << v << '\n';
}

std::string to_edge_list(const Graph& g) {
    std::ostringstream os;
    write_edge_list(os, g);
    return os.str();
}

}  // namespace tritile
