#include "tritile/tiling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>

#include "tritile/rng.hpp"

namespace tritile {

void TriangleTiling::add(const Triangle& t) {
    if (covered.test(t.a) || covered.test(t.b) || covered.test(t.c))
        throw InvalidGraph("triangle overlaps the tiling");
    covered.set(t.a);
    covered.set(t.b);
    covered.set(t.c);
    triangles.push_back(t);
}

void TriangleTiling::append(const TriangleTiling& other) {
    for (const auto& t : other.triangles) add(t);
}

long ProcedureTrace::counter(const std::string& name, long fallback) const {
    for (const auto& [k, v] : counters)
        if (k == name) return v;
    return fallback;
}

void ProcedureTrace::set_counter(const std::string& name, long value) {
    for (auto& [k, v] : counters)
        if (k == name) {
            v = value;
            return;
        }
    counters.emplace_back(name, value);
}

namespace {

double pair_density(const Graph& g, const VertexSet& A, const VertexSet& B) {
    const double denom = static_cast<double>(A.count()) * B.count();
    return denom == 0 ? 0.0 : static_cast<double>(edges_between(g, A, B)) / denom;
}

// Lowest edge (u, w), u < w, inside set; returns false if none.
bool first_edge_in(const Graph& g, const VertexSet& set, int& u_out, int& w_out) {
    for (int u = set.first(); u >= 0; u = set.next(u)) {
        const VertexSet nu = g.adj(u) & set;
        const int w = nu.next(u);
        if (w >= 0) {
            u_out = u;
            w_out = w;
            return true;
        }
    }
    return false;
}

// Apex vertex among `apexes` (lowest index first) whose neighbourhood in `pool` is large enough
// and spans an edge. Fills the triangle; returns false on starvation.
bool greedy_pick(const Graph& g, const VertexSet& apexes, const VertexSet& pool, double threshold,
                 Triangle& out) {
    for (int x = apexes.first(); x >= 0; x = apexes.next(x)) {
        const VertexSet nb = g.adj(x) & pool;
        if (static_cast<double>(nb.count()) + 1e-9 < threshold) continue;
        int u, w;
        if (first_edge_in(g, nb, u, w)) {
            out = make_triangle(x, u, w);
            return true;
        }
    }
    return false;
}

// Exact search for exactly a A-triangles and b B-triangles inside the pools ap, bp. Used when
// the greedy rule starves on its last steps, where the pools are too small for the density
// argument to apply. Bounded by a node limit.
class CountedFinisher {
public:
    CountedFinisher(const Graph& g, long node_limit) : g_(g), limit_(node_limit) {}

    bool solve(const VertexSet& ap, const VertexSet& bp, int a, int b) {
        cur_.clear();
        nodes_ = 0;
        return dfs(ap, bp, a, b);
    }
    const std::vector<Triangle>& triangles() const { return cur_; }

private:
    bool dfs(VertexSet ap, VertexSet bp, int a, int b) {
        if (a == 0 && b == 0) return true;
        if (++nodes_ > limit_) return false;
        const int sa = ap.count() - (2 * a + b), sb = bp.count() - (a + 2 * b);
        if (sa < 0 || sb < 0) return false;
        // Every triangle of either kind meets A, so an A vertex is always a sound branch point.
        bool in_a = true;
        int v = -1;
        if (sb == 0 && sa > 0) in_a = false;
        const VertexSet& side = in_a ? ap : bp;
        const VertexSet pool = ap | bp;
        int bestdeg = std::numeric_limits<int>::max();
        side.for_each([&](int x) {
            const int d = g_.adj(x).intersect_count(pool);
            if (d < bestdeg) {
                bestdeg = d;
                v = x;
            }
        });
        if (v < 0) return false;
        const bool must_cover = in_a ? sa == 0 : sb == 0;
        VertexSet ap2 = ap, bp2 = bp;
        (in_a ? ap2 : bp2).reset(v);
        const VertexSet na = g_.adj(v) & ap2, nb = g_.adj(v) & bp2;
        auto place = [&](int x, int y, bool a_kind) {
            VertexSet ra = ap2, rb = bp2;
            ra.reset(x);
            rb.reset(x);
            ra.reset(y);
            rb.reset(y);
            cur_.push_back(make_triangle(v, x, y));
            if (dfs(ra, rb, a - (a_kind ? 1 : 0), b - (a_kind ? 0 : 1))) return true;
            cur_.pop_back();
            return false;
        };
        // Pairs (x, y) completing v to an A-triangle (two in A) or a B-triangle (two in B).
        const int same_kind = in_a ? a : b, cross_kind = in_a ? b : a;
        const VertexSet& own = in_a ? na : nb;
        const VertexSet& other = in_a ? nb : na;
        if (same_kind > 0)
            for (int x = own.first(); x >= 0; x = own.next(x)) {
                const VertexSet ys = other & g_.adj(x);
                for (int y = ys.first(); y >= 0; y = ys.next(y))
                    if (place(x, y, in_a)) return true;
                if (nodes_ > limit_) return false;
            }
        if (cross_kind > 0)
            for (int x = other.first(); x >= 0; x = other.next(x)) {
                const VertexSet ys = other & g_.adj(x);
                for (int y = ys.next(x); y >= 0; y = ys.next(y))
                    if (place(x, y, !in_a)) return true;
                if (nodes_ > limit_) return false;
            }
        if (must_cover) return false;
        return dfs(in_a ? ap2 : ap, in_a ? bp : bp2, a, b);
    }

    const Graph& g_;
    long limit_;
    long nodes_ = 0;
    std::vector<Triangle> cur_;
};

class ExactTiler {
public:
    ExactTiler(const Graph& g, const Budget& budget, long node_limit)
        : g_(g), budget_(budget), node_limit_(node_limit) {}

    ExactTilingResult run() {
        VertexSet u = g_.all();
        strip_dead(u);
        target_ = 3 * (u.count() / 3);
        dfs(u, 0);
        ExactTilingResult r;
        r.tiling = TriangleTiling(g_.n());
        for (const auto& t : best_) r.tiling.add(t);
        r.optimal = !aborted_;
        r.nodes = nodes_;
        return r;
    }

private:
    // Live triangle degree of v inside u: number of edges within N(v) & u.
    long live_degree(int v, const VertexSet& u) const {
        const VertexSet nv = g_.adj(v) & u;
        long twice = 0;
        nv.for_each([&](int x) { twice += nv.intersect_count(g_.adj(x)); });
        return twice / 2;
    }

    // Removes vertices lying in no triangle of g[u]; returns the minimum-degree live vertex.
    int strip_dead(VertexSet& u) const {
        int best = -1;
        long bestdeg = std::numeric_limits<long>::max();
        VertexSet dead(g_.n());
        u.for_each([&](int v) {
            const long d = live_degree(v, u);
            if (d == 0)
                dead.set(v);
            else if (d < bestdeg) {
                bestdeg = d;
                best = v;
            }
        });
        u -= dead;
        return best;
    }

    bool done() const { return aborted_ || best_cov_ == target_; }

    // Disjoint triangles of g[u] are at most the size of any vertex set meeting all of them.
    // Greedily removes the vertex of largest triangle degree; stops early once the set is too
    // large to prune. Returns true if cov + 3 |T| <= best_cov_.
    bool hitting_prunes(VertexSet w, int cov) const {
        int t = 0;
        while (cov + 3 * t <= best_cov_) {
            int best = -1;
            long bestdeg = 0;
            w.for_each([&](int v) {
                const long d = live_degree(v, w);
                if (d > bestdeg) {
                    bestdeg = d;
                    best = v;
                }
            });
            if (best < 0) return true;
            w.reset(best);
            ++t;
        }
        return false;
    }

    void dfs(VertexSet u, int cov) {
        if ((++nodes_ & 255) == 0 && budget_.expired()) aborted_ = true;
        if (node_limit_ >= 0 && nodes_ > node_limit_) aborted_ = true;
        if (aborted_) return;
        if (cov > best_cov_) {
            best_cov_ = cov;
            best_ = cur_;
        }
        if (done()) return;
        const int v = strip_dead(u);
        if (v < 0) return;
        const int ucount = u.count();
        if (cov + 3 * (ucount / 3) <= best_cov_) return;
        if (hitting_prunes(u, cov)) return;

        const VertexSet nv = g_.adj(v) & u;
        for (int x = nv.first(); x >= 0; x = nv.next(x)) {
            const VertexSet nx = nv & g_.adj(x);
            for (int y = nx.next(x); y >= 0; y = nx.next(y)) {
                VertexSet rest = u;
                rest.reset(v);
                rest.reset(x);
                rest.reset(y);
                cur_.push_back(make_triangle(v, x, y));
                dfs(rest, cov + 3);
                cur_.pop_back();
                if (done()) return;
            }
        }
        // leave v uncovered
        if (cov + 3 * ((ucount - 1) / 3) > best_cov_) {
            u.reset(v);
            dfs(u, cov);
        }
    }

    const Graph& g_;
    const Budget& budget_;
    long node_limit_;
    std::vector<Triangle> cur_, best_;
    int best_cov_ = -1;
    int target_ = 0;
    long nodes_ = 0;
    bool aborted_ = false;
};

std::vector<int> vec(const VertexSet& s) { return s.to_vector(); }

void require_disjoint_cover(const Graph& g, const VertexSet& A, const VertexSet& B) {
    if (A.universe() != g.n() || B.universe() != g.n())
        throw PreconditionViolated("vertex set universe differs from graph order");
    if (A.intersects(B)) throw PreconditionViolated("A and B intersect");
    if ((A | B).count() != g.n()) throw PreconditionViolated("A and B do not cover V(G)");
}

}  // namespace

ExactTilingResult max_tiling_exact(const Graph& g, const Budget& budget, long node_limit) {
    ExactTiler t(g, budget, node_limit);
    return t.run();
}

TriangleTiling greedy_ab_within(const Graph& g, const VertexSet& A, const VertexSet& B,
                                const ABTilingSpec& spec, double d, double eps,
                                const VertexSet& used, const std::string& label) {
    if (spec.a < 0 || spec.b < 0) throw PreconditionViolated("negative triangle counts");
    TriangleTiling out(g.n());
    VertexSet covered = used;
    int ad = 0, bd = 0;
    const int total = spec.a + spec.b;
    for (int step = 0; step < total; ++step) {
        const bool take_a =
            ad < spec.a && (bd >= spec.b || static_cast<long>(ad) * spec.b <= static_cast<long>(bd) * spec.a);
        const VertexSet ap = A - covered, bp = B - covered;
        Triangle t;
        bool ok;
        if (take_a)
            ok = greedy_pick(g, bp, ap, (d - eps) * ap.count(), t);
        else
            ok = greedy_pick(g, ap, bp, (d - eps) * bp.count(), t);
        if (!ok) {
            // Release the last few greedy triangles and finish the remaining counts exactly.
            for (int back : {12, 30}) {
                const int keep = std::max(0, out.size() - back);
                TriangleTiling kept(g.n());
                int ka = 0;
                for (int i = 0; i < keep; ++i) {
                    const Triangle& k = out.triangles[static_cast<size_t>(i)];
                    kept.add(k);
                    ka += (A.test(k.a) + A.test(k.b) + A.test(k.c)) == 2;
                }
                const VertexSet taken = used | kept.covered;
                CountedFinisher fin(g, 200000);
                if (fin.solve(A - taken, B - taken, spec.a - ka, spec.b - (keep - ka))) {
                    for (const auto& f : fin.triangles()) kept.add(f);
                    return kept;
                }
                if (keep == 0) break;
            }
            throw StarvedStep(label + (take_a ? "A" : "B"), step);
        }
        out.add(t);
        covered.set(t.a);
        covered.set(t.b);
        covered.set(t.c);
        (take_a ? ad : bd)++;
    }
    return out;
}

TriangleTiling greedy_ab_tiling(const Graph& g, const VertexSet& A, const VertexSet& B,
                                const ABTilingSpec& spec, const TilerParams& p) {
    require_disjoint_cover(g, A, B);
    return greedy_ab_within(g, A, B, spec, pair_density(g, A, B), p.eps, VertexSet(g.n()), "");
}

std::pair<TriangleTiling, ProcedureTrace> tile_avoiding_core(const Graph& g, const VertexSet& A,
                                                             const VertexSet& B,
                                                             const VertexSet& S,
                                                             const TilerParams& p) {
    require_disjoint_cover(g, A, B);
    if (!S.subset_of(A)) throw PreconditionViolated("S is not a subset of A");
    const int n = g.n();
    const long z = static_cast<long>(std::floor(p.phi * p.eps_prime * n));
    const long t4 = z / 2;
    const long zp = z - 2 * t4;
    const VertexSet a_minus_s = A - S;
    if ((a_minus_s.count() + B.count() + z) % 3 != 0)
        throw DivisibilityViolation("|A \\ S| + |B| + z is not divisible by 3");

    ProcedureTrace tr;
    tr.procedure = "tile_avoiding_core";
    tr.seed = p.seed;
    const double d = pair_density(g, A, B);
    tr.set_counter("z", z);
    tr.set_counter("t4", t4);
    tr.set_counter("z_prime", zp);
    tr.set_counter("S_size", S.count());
    tr.set_counter("S_size_expected", static_cast<long>(std::floor(p.phi * n)));

    TriangleTiling out(n);
    auto add_step = [&](TraceStep step, const TriangleTiling& part) {
        step.added = part.triangles;
        out.append(part);
        tr.steps.push_back(std::move(step));
    };

    // B1: low-degree into S, padded with the lowest-index vertices for divisibility.
    VertexSet b1p(n);
    const double s_thr = (d - p.eps / p.phi) * S.count();
    B.for_each([&](int y) {
        if (static_cast<double>(g.adj(y).intersect_count(S)) < s_thr) b1p.set(y);
    });
    VertexSet b1 = b1p;
    for (int y = B.first(); y >= 0; y = B.next(y)) {
        const long rest = (B - b1).count() - t4;
        if (((rest % 3) + 3) % 3 == 0) break;
        if (!b1.test(y)) b1.set(y);
    }
    if ((((B - b1).count() - t4) % 3 + 3) % 3 != 0)
        throw StarvedStep("B1", 0, "cannot pad B1 to the required residue");
    tr.steps.push_back({"B1", {{"B1_prime", vec(b1p)}, {"B1", vec(b1)}}, {}});

    // T1: A-triangles covering B1 and avoiding S.
    {
        TriangleTiling t1(n);
        VertexSet covered(n);
        int i = 0;
        for (int y = b1.first(); y >= 0; y = b1.next(y), ++i) {
            const VertexSet pool = (g.adj(y) & a_minus_s) - covered;
            int u, w;
            if (!first_edge_in(g, pool, u, w)) throw StarvedStep("T1", i);
            Triangle t = make_triangle(y, u, w);
            t1.add(t);
            covered.set(u);
            covered.set(w);
        }
        add_step({"T1", {}, {}}, t1);
    }

    // B2: uniformly random t4-subset of B \ B1.
    const std::vector<int> b_rest = (B - b1).to_vector();
    if (static_cast<long>(b_rest.size()) < t4) throw StarvedStep("B2", 0, "B \\ B1 smaller than t4");
    Rng rng(p.seed);
    std::vector<int> b2v = rng.sample(b_rest, static_cast<size_t>(t4));
    std::sort(b2v.begin(), b2v.end());
    const VertexSet b2 = VertexSet::of(n, b2v);

    VertexSet sp(n);
    {
        int need = static_cast<int>(zp);
        for (int v = S.first(); v >= 0 && need > 0; v = S.next(v), --need) sp.set(v);
    }
    const VertexSet a1 = (a_minus_s - out.covered) | sp;
    const VertexSet bq = B - b1 - b2;
    tr.steps.push_back({"select", {{"B2", b2v}, {"S_prime", vec(sp)}, {"A_prime", vec(a1)}, {"B_prime", vec(bq)}}, {}});

    const long t3 = static_cast<long>(std::floor(p.phi * p.eps_prime * d * n / 15.0));
    tr.set_counter("t3", t3);
    const long a3 = 2L * a1.count() - bq.count();
    const long b3 = 2L * bq.count() - a1.count() - 3 * t3;
    if (a3 < 0 || b3 < 0 || a3 % 3 != 0 || b3 % 3 != 0)
        throw StarvedStep("T2", 0, "a or b negative or fractional");
    tr.set_counter("a", a3 / 3);
    tr.set_counter("b", b3 / 3);

    // T2: greedy tiling of (A', B') leaving t3 vertices of A' and 2 t3 of B'.
    {
        TriangleTiling t2 = greedy_ab_within(g, a1, bq, ABTilingSpec{static_cast<int>(a3 / 3), static_cast<int>(b3 / 3)},
                                             pair_density(g, a1, bq), p.eps / 2, out.covered, "T2:");
        add_step({"T2", {}, {}}, t2);
    }
    const VertexSet a2 = a1 - out.covered;
    const VertexSet bdd = bq - out.covered;
    tr.steps.push_back({"residual", {{"A_dd", vec(a2)}, {"B_dd", vec(bdd)}}, {}});

    // T3: B-triangles joining each vertex of A'' to an edge of B2.
    {
        TriangleTiling t3t(n);
        VertexSet covered = out.covered;
        int i = 0;
        for (int x = a2.first(); x >= 0; x = a2.next(x), ++i) {
            const VertexSet pool = (g.adj(x) & b2) - covered;
            int u, w;
            if (!first_edge_in(g, pool, u, w)) throw StarvedStep("T3", i);
            Triangle t = make_triangle(x, u, w);
            t3t.add(t);
            covered.set(x);
            covered.set(u);
            covered.set(w);
        }
        add_step({"T3", {}, {}}, t3t);
    }

    // T4: A-triangles into S \ S' for the t4 remaining B-vertices.
    {
        const VertexSet left_b = B - out.covered;
        tr.set_counter("B_left", left_b.count());
        const VertexSet s_pool = S - sp;
        TriangleTiling t4t(n);
        VertexSet covered = out.covered;
        int i = 0;
        for (int y = left_b.first(); y >= 0; y = left_b.next(y), ++i) {
            const VertexSet pool = (g.adj(y) & s_pool) - covered;
            int u, w;
            if (!first_edge_in(g, pool, u, w)) throw StarvedStep("T4", i);
            Triangle t = make_triangle(y, u, w);
            t4t.add(t);
            covered.set(y);
            covered.set(u);
            covered.set(w);
        }
        add_step({"T4", {{"B_left", vec(left_b)}}, {}}, t4t);
    }
    tr.set_counter("covered_in_S", out.covered.intersect_count(S));
    return {std::move(out), std::move(tr)};
}

int max_bipartite_matching(const std::vector<std::vector<int>>& adj, int n_right,
                           std::vector<int>* match_left) {
    const int nl = static_cast<int>(adj.size());
    const int INF = std::numeric_limits<int>::max();
    std::vector<int> ml(static_cast<size_t>(nl), -1), mr(static_cast<size_t>(n_right), -1),
        dist(static_cast<size_t>(nl));
    auto bfs = [&]() {
        std::queue<int> q;
        bool found = false;
        for (int u = 0; u < nl; ++u) {
            if (ml[u] < 0) {
                dist[u] = 0;
                q.push(u);
            } else {
                dist[u] = INF;
            }
        }
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : adj[u]) {
                int w = mr[v];
                if (w < 0)
                    found = true;
                else if (dist[w] == INF) {
                    dist[w] = dist[u] + 1;
                    q.push(w);
                }
            }
        }
        return found;
    };
    std::vector<size_t> it(static_cast<size_t>(nl));
    auto dfs = [&](auto&& self, int u) -> bool {
        for (size_t& i = it[u]; i < adj[u].size(); ++i) {
            int v = adj[u][i];
            int w = mr[v];
            if (w < 0 || (dist[w] == dist[u] + 1 && self(self, w))) {
                ml[u] = v;
                mr[v] = u;
                ++i;
                return true;
            }
        }
        dist[u] = INF;
        return false;
    };
    int size = 0;
    while (bfs()) {
        std::fill(it.begin(), it.end(), 0);
        for (int u = 0; u < nl; ++u)
            if (ml[u] < 0 && dfs(dfs, u)) ++size;
    }
    if (match_left) *match_left = ml;
    return size;
}

bool verify_robust_matchable(const Graph& F, const VertexSet& X, const VertexSet& Y) {
    const int nx = X.count(), ny = Y.count();
    if (nx < ny) throw SideMismatch("|X| < |Y|");
    const std::vector<int> xs = X.to_vector(), ys = Y.to_vector();
    // Every |Y|-subset of X matches Y iff |N(T)| >= |T| + (|X| - |Y|) for all nonempty T in Y,
    // and that holds iff Y saturates for each choice of one y copied |X| - |Y| + 1 times.
    const int surplus = nx - ny;
    for (int c = 0; c < ny; ++c) {
        const int copies = surplus + 1;
        std::vector<std::vector<int>> adj;
        for (int j = 0; j < ny; ++j)
            for (int r = 0; r < (j == c ? copies : 1); ++r) {
                std::vector<int> row;
                for (int i = 0; i < nx; ++i)
                    if (F.has_edge(xs[i], ys[j])) row.push_back(i);
                adj.push_back(std::move(row));
            }
        if (max_bipartite_matching(adj, nx) != static_cast<int>(adj.size())) return false;
    }
    return true;
}

LinkGraph build_link_graph(const Graph& g, const VertexSet& A, const std::vector<Edge>& M) {
    VertexSet seen(g.n());
    for (auto [x, y] : M) {
        if (x < 0 || y < 0 || x >= g.n() || y >= g.n() || x == y || !g.has_edge(x, y))
            throw NotAMatching("pair is not an edge of the graph");
        if (seen.test(x) || seen.test(y)) throw NotAMatching("edges of M share a vertex");
        seen.set(x);
        seen.set(y);
    }
    if (seen.intersects(A)) throw PreconditionViolated("matching meets A");
    LinkGraph lg;
    lg.a_vertices = A.to_vector();
    lg.m_edges = M;
    const int na = static_cast<int>(lg.a_vertices.size()), nm = static_cast<int>(M.size());
    GraphBuilder b(na + nm);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nm; ++j) {
            const int a = lg.a_vertices[i];
            if (g.has_edge(a, M[j].first) && g.has_edge(a, M[j].second)) b.add_edge(i, na + j);
        }
    lg.h = std::move(b).build();
    lg.a_side = VertexSet(na + nm);
    lg.m_side = VertexSet(na + nm);
    for (int i = 0; i < na; ++i) lg.a_side.set(i);
    for (int j = 0; j < nm; ++j) lg.m_side.set(na + j);
    return lg;
}

std::pair<TriangleTiling, ProcedureTrace> balance_tripartite(const Graph& g, const VertexSet& V1,
                                                             const VertexSet& V2,
                                                             const VertexSet& V3) {
    if (V1.intersects(V2) || V1.intersects(V3) || V2.intersects(V3))
        throw PreconditionViolated("sets are not disjoint");
    if ((V1.count() + V2.count() + V3.count()) % 3 != 0)
        throw DivisibilityViolation("|V1| + |V2| + |V3| is not divisible by 3");
    const int n = g.n();
    std::array<VertexSet, 3> res = {V1, V2, V3};
    std::array<int, 3> order = {0, 1, 2};
    ProcedureTrace tr;
    tr.procedure = "balance_tripartite";
    TriangleTiling out(n);
    auto resort = [&]() {
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return res[a].count() < res[b].count(); });
    };
    resort();
    for (int t = 0;; ++t) {
        TraceStep st;
        st.label = "t" + std::to_string(t);
        for (int i = 0; i < 3; ++i)
            st.sets.emplace_back("X" + std::to_string(i + 1), vec(res[order[i]]));
        const bool equal = res[order[0]].count() == res[order[2]].count();
        if (!equal) {
            const VertexSet& x2 = res[order[1]];
            const VertexSet& x3 = res[order[2]];
            Triangle tri;
            bool ok = false;
            for (int x = x2.first(); x >= 0 && !ok; x = x2.next(x)) {
                int u, w;
                if (first_edge_in(g, g.adj(x) & x3, u, w)) {
                    tri = make_triangle(x, u, w);
                    ok = true;
                }
            }
            if (!ok) {
                tr.steps.push_back(std::move(st));
                throw StarvedStep("balance", t);
            }
            st.added.push_back(tri);
            out.add(tri);
            for (auto& r : res) {
                r.reset(tri.a);
                r.reset(tri.b);
                r.reset(tri.c);
            }
        }
        tr.steps.push_back(std::move(st));
        if (equal) break;
        resort();
    }
    tr.set_counter("steps", out.size());
    return {std::move(out), std::move(tr)};
}

std::vector<std::vector<int>> balance_sizes(const ProcedureTrace& trace) {
    std::vector<std::vector<int>> out;
    for (const auto& st : trace.steps) {
        std::vector<int> s;
        for (const auto& [name, members] : st.sets) s.push_back(static_cast<int>(members.size()));
        out.push_back(s);
    }
    return out;
}

bool balance_trace_monotone(const ProcedureTrace& trace) {
    const auto s = balance_sizes(trace);
    for (size_t t = 0; t + 2 < s.size(); ++t) {
        if (s[t].size() != 3 || s[t + 2].size() != 3) return false;
        if (s[t + 2][2] - s[t + 2][0] > s[t][2] - s[t][0] - 3) return false;
        if (s[t][0] - s[t + 2][0] > 1) return false;
    }
    return true;
}

bool tiling_is_valid(const Graph& g, const TriangleTiling& t) {
    VertexSet seen(g.n());
    for (const auto& tri : t.triangles) {
        if (!is_triangle(g, tri)) return false;
        for (int v : {tri.a, tri.b, tri.c}) {
            if (seen.test(v)) return false;
            seen.set(v);
        }
    }
    return t.covered == seen && t.covered.count() == 3 * t.size();
}

TriangleTiling replay_trace(const Graph& g, const ProcedureTrace& trace) {
    TriangleTiling out(g.n());
    for (const auto& st : trace.steps)
        for (const auto& tri : st.added) {
            if (!is_triangle(g, tri)) throw TraceMismatch("recorded triangle is not in the graph");
            if (out.covered.test(tri.a) || out.covered.test(tri.b) || out.covered.test(tri.c))
                throw TraceMismatch("recorded triangles overlap");
            out.add(tri);
        }
    return out;
}

}  // namespace tritile
