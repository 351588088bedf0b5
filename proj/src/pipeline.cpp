#include "tritile/pipeline.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <climits>
#include <cmath>
#include <deque>
#include <numeric>

#include "tritile/barriers.hpp"
#include "tritile/errors.hpp"
#include "tritile/rng.hpp"
#include "tritile/spantree.hpp"

namespace tritile {

using nlohmann::json;

namespace {

constexpr long kSmallExactNodes = 3'000'000;
constexpr long kRepairNodes = 60'000;

json vset(const VertexSet& s) { return s.to_vector(); }

json tri_json(const std::vector<Triangle>& ts) {
    json a = json::array();
    for (const auto& t : ts) a.push_back({t.a, t.b, t.c});
    return a;
}

void mark(VertexSet& s, const Triangle& t) {
    s.set(t.a);
    s.set(t.b);
    s.set(t.c);
}

/// Copies the triangles of a tiling of g.induced(.., &map) into out.
void add_mapped(TriangleTiling& out, const TriangleTiling& t, const std::vector<int>& map) {
    for (const auto& x : t.triangles) out.add(make_triangle(map[x.a], map[x.b], map[x.c]));
}

/// Lowest edge inside pool, false if none.
bool edge_in(const Graph& g, const VertexSet& pool, int& u, int& w) {
    for (int x = pool.first(); x >= 0; x = pool.next(x)) {
        const int y = (g.adj(x) & pool).next(x);
        if (y >= 0) {
            u = x;
            w = y;
            return true;
        }
    }
    return false;
}

/// Greedy packing of the whole graph, scarcest vertices first.
TriangleTiling greedy_tiling(const Graph& g) {
    const int n = g.n();
    TriangleTiling t(n);
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return g.degree(a) < g.degree(b); });
    for (int v : order) {
        if (t.covered.test(v)) continue;
        int u, w;
        if (edge_in(g, g.adj(v) - t.covered, u, w)) t.add(make_triangle(v, u, w));
    }
    return t;
}

/// Tiles g[s]: exact below the cutoff, greedy plus local exact repair above it.
TriangleTiling tile_set(const Graph& g, const VertexSet& s, const PipelineConfig& cfg, const Budget& budget,
                        uint64_t seed, std::string* method, bool* optimal = nullptr) {
    std::vector<int> map;
    const Graph h = g.induced(s, &map);
    TriangleTiling loc(h.n());
    if (h.n() < cfg.exact_below) {
        auto r = max_tiling_exact(h, budget, kSmallExactNodes);
        loc = r.tiling;
        if (method) *method = "exact";
        if (optimal) *optimal = r.optimal;
    } else {
        loc = greedy_tiling(h);
        improve_tiling(h, loc, seed, budget);
        if (method) *method = "greedy+repair";
        if (optimal) *optimal = false;
    }
    TriangleTiling out(g.n());
    add_mapped(out, loc, map);
    return out;
}

/// Solves the doubled digraph of R[keep]; an empty digraph is trivially perfect.
bool matching_feasible(const Graph& R, const VertexSet& keep, const Rational& eta) {
    std::vector<int> map;
    const Graph r0 = R.induced(keep, &map);
    if (r0.n() == 0) return true;
    if (min_degree(r0) == 0) return false;
    return solve_perfect_wfm(Digraph::doubled(r0), eta, 1 - eta).feasible;
}

StageLog& log_stage(PipelineRun& run, std::string name) {
    run.logs.push_back(StageLog{std::move(name), json::object(), {}});
    return run.logs.back();
}

void warn(PipelineRun& run, StageLog& lg, const std::string& w) {
    lg.warnings.push_back(w);
    run.warnings.push_back(lg.stage + ": " + w);
}

/// k-means with k-means++ seeding on the rows of X.
std::vector<int> kmeans(const Eigen::MatrixXd& X, int k, uint64_t seed, Eigen::MatrixXd* centers_out) {
    const int n = static_cast<int>(X.rows());
    Rng rng(seed);
    Eigen::MatrixXd C(k, X.cols());
    C.row(0) = X.row(rng.below_int(n));
    std::vector<double> d2(static_cast<size_t>(n), 0);
    for (int c = 1; c < k; ++c) {
        double total = 0;
        for (int i = 0; i < n; ++i) {
            double best = INFINITY;
            for (int j = 0; j < c; ++j) best = std::min(best, (X.row(i) - C.row(j)).squaredNorm());
            d2[i] = best;
            total += best;
        }
        int pick = n - 1;
        if (total > 0) {
            double r = rng.uniform() * total;
            for (int i = 0; i < n; ++i) {
                r -= d2[i];
                if (r < 0) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = rng.below_int(n);
        }
        C.row(c) = X.row(pick);
    }
    std::vector<int> lab(static_cast<size_t>(n), 0);
    for (int it = 0; it < 100; ++it) {
        bool changed = false;
        for (int i = 0; i < n; ++i) {
            int best = 0;
            double bd = INFINITY;
            for (int j = 0; j < k; ++j) {
                const double dd = (X.row(i) - C.row(j)).squaredNorm();
                if (dd < bd) {
                    bd = dd;
                    best = j;
                }
            }
            if (lab[i] != best) changed = true;
            lab[i] = best;
        }
        Eigen::MatrixXd S = Eigen::MatrixXd::Zero(k, X.cols());
        std::vector<int> cnt(static_cast<size_t>(k), 0);
        for (int i = 0; i < n; ++i) {
            S.row(lab[i]) += X.row(i);
            ++cnt[lab[i]];
        }
        for (int j = 0; j < k; ++j)
            if (cnt[j]) C.row(j) = S.row(j) / cnt[j];
        if (!changed && it > 0) break;
    }
    if (centers_out) *centers_out = C;
    return lab;
}

/// Equal-size clusters of m vertices by increasing distance to the centres; the rest is left out.
std::vector<VertexSet> capacitated(const Eigen::MatrixXd& X, const Eigen::MatrixXd& C, int m) {
    const int n = static_cast<int>(X.rows()), k = static_cast<int>(C.rows());
    struct Cand {
        double d;
        int v, c;
    };
    std::vector<Cand> all;
    all.reserve(static_cast<size_t>(n) * k);
    for (int v = 0; v < n; ++v)
        for (int c = 0; c < k; ++c) all.push_back({(X.row(v) - C.row(c)).squaredNorm(), v, c});
    std::stable_sort(all.begin(), all.end(), [](const Cand& a, const Cand& b) {
        if (a.d != b.d) return a.d < b.d;
        if (a.v != b.v) return a.v < b.v;
        return a.c < b.c;
    });
    std::vector<VertexSet> out(static_cast<size_t>(k), VertexSet(n));
    std::vector<int> size(static_cast<size_t>(k), 0);
    std::vector<char> done(static_cast<size_t>(n), 0);
    for (const auto& x : all) {
        if (done[x.v] || size[x.c] >= m) continue;
        done[x.v] = 1;
        ++size[x.c];
        out[x.c].set(x.v);
    }
    return out;
}

}  // namespace

Rational PipelineConfig::eta_value() const {
    if (eta) return *eta;
    Rational w(static_cast<long>(std::llround(omega * 1e6)), 1000000);
    w.canonicalize();
    return Rational(1, 3) + w / 10;
}

void PipelineConfig::validate() const {
    if (!(0 < eps && eps < d && d < omega && omega < 1))
        throw PreconditionViolated("pipeline config needs 0 < eps < d < omega < 1");
    if (!(0 < cert_eps && cert_eps < 1)) throw PreconditionViolated("cert_eps must lie in (0, 1)");
    if (t < 1 || t > T) throw PreconditionViolated("pipeline config needs 1 <= t <= T");
    const Rational e = eta_value();
    if (e <= 0 || e >= 1) throw PreconditionViolated("eta must lie in (0, 1)");
}

// ---------------------------------------------------------------------------------------------

std::optional<SparseCut> sparse_cut_split(const Graph& g, double psi, double omega) {
    (void)omega;
    const int n = g.n();
    const int lo = (n + 2) / 3, hi = n - lo;
    if (n < 2 || lo > hi || lo == 0) return std::nullopt;
    const double threshold = psi * n * static_cast<double>(n);

    std::vector<char> inA(static_cast<size_t>(n), 0);
    long cross = LONG_MAX;

    const auto comps = components(g);
    if (comps.size() > 1) {
        // Subset sum over component sizes, aiming at n/2.
        std::vector<int> from(static_cast<size_t>(n) + 1, -2);
        from[0] = -1;
        std::vector<int> reach_item(static_cast<size_t>(n) + 1, -1);
        for (size_t c = 0; c < comps.size(); ++c) {
            const int sz = comps[c].count();
            for (int s = n; s >= sz; --s)
                if (from[s] == -2 && from[s - sz] != -2) {
                    from[s] = s - sz;
                    reach_item[s] = static_cast<int>(c);
                }
        }
        int best = -1;
        for (int s = lo; s <= hi; ++s)
            if (from[s] != -2 && (best < 0 || std::abs(2 * s - n) < std::abs(2 * best - n))) best = s;
        if (best >= 0) {
            for (int s = best; s > 0; s = from[s]) comps[reach_item[s]].for_each([&](int v) { inA[v] = 1; });
            cross = 0;
        }
    }
    if (cross != 0) {
        Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
        for (int v = 0; v < n; ++v) {
            L(v, v) = g.degree(v);
            g.adj(v).for_each([&](int u) { L(v, u) = -1; });
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L);
        const Eigen::VectorXd f = es.eigenvectors().col(n > 1 ? 1 : 0);
        std::vector<int> order(static_cast<size_t>(n));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return f(a) < f(b); });
        VertexSet cur(n);
        long c = 0, bestc = LONG_MAX;
        int bests = lo;
        for (int s = 0; s < hi; ++s) {
            const int v = order[s];
            c += g.degree(v) - 2L * g.adj(v).intersect_count(cur);
            cur.set(v);
            if (s + 1 >= lo && c < bestc) {
                bestc = c;
                bests = s + 1;
            }
        }
        std::fill(inA.begin(), inA.end(), 0);
        for (int s = 0; s < bests; ++s) inA[order[s]] = 1;
        cross = bestc;
    }
    // Local moves: a vertex with more than half its edges crossing switches sides.
    VertexSet A(n);
    for (int v = 0; v < n; ++v)
        if (inA[v]) A.set(v);
    int asz = A.count();
    for (bool changed = true; changed;) {
        changed = false;
        for (int v = 0; v < n; ++v) {
            const bool a = A.test(v);
            const int same = a ? g.adj(v).intersect_count(A) : g.degree(v) - g.adj(v).intersect_count(A);
            const int other = g.degree(v) - same;
            if (other <= same) continue;
            if (a ? asz - 1 < lo : asz + 1 > hi) continue;
            if (a) {
                A.reset(v);
                --asz;
            } else {
                A.set(v);
                ++asz;
            }
            cross -= other - same;
            changed = true;
        }
    }
    if (!(static_cast<double>(cross) < threshold)) return std::nullopt;

    SparseCut cut;
    cut.A = A;
    cut.B = g.all() - A;
    cut.crossing = cross;
    cut.threshold = threshold;
    cut.delta_G = min_degree(g);
    cut.delta_A = min_degree(g.induced(cut.A));
    cut.delta_B = min_degree(g.induced(cut.B));
    cut.consequence_holds = 2L * cut.delta_A >= cut.delta_G && 2L * cut.delta_B >= cut.delta_G;
    if (n % 3 != 0) {
        cut.mod3_case = "none";
    } else {
        const int ra = cut.A.count() % 3;
        if (ra == 0) {
            cut.mod3_case = "a";
        } else {
            cut.mod3_case = ra == 1 ? "b" : "c";
            // Case (b) looks at (A, B), case (c) at (B, A).
            const auto rep = ra == 1 ? check_divisibility_barrier(g, cut.A, cut.B)
                                     : check_divisibility_barrier(g, cut.B, cut.A);
            if (rep.b_witness)
                cut.s_triangles = {*rep.b_witness};
            else if (rep.disjoint_a_triangles >= 2)
                cut.s_triangles = rep.a_witness;
            else
                cut.divisibility_barrier = true;
        }
    }
    return cut;
}

// ---------------------------------------------------------------------------------------------

ReducedDecomposition heuristic_partition(const Graph& g, const PipelineConfig& cfg) {
    cfg.validate();
    const int n = g.n();
    if (n < 10 * cfg.t) throw PartitionDegenerate("heuristic_partition needs n >= 10 t");
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
    for (int v = 0; v < n; ++v) g.adj(v).for_each([&](int u) { M(v, u) = 1; });
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
    std::vector<int> ev(static_cast<size_t>(n));
    std::iota(ev.begin(), ev.end(), 0);
    std::stable_sort(ev.begin(), ev.end(), [&](int a, int b) {
        return std::abs(es.eigenvalues()(a)) > std::abs(es.eigenvalues()(b));
    });
    const Rational eta = cfg.eta_value();

    std::optional<ReducedDecomposition> fallback;
    double fallback_score = -1;
    for (int k = cfg.t; k <= cfg.T && k <= n; ++k) {
        const int m = n / k;
        const double ceps = std::max(cfg.cert_eps, 2.0 / m);
        if (m < 3 || ceps >= 1) break;
        Eigen::MatrixXd X(n, k);
        for (int c = 0; c < k; ++c) X.col(c) = es.eigenvectors().col(ev[c]) * es.eigenvalues()(ev[c]);
        Eigen::MatrixXd C;
        kmeans(X, k, derive_seed(cfg.seed, static_cast<uint64_t>(k)), &C);
        ReducedDecomposition dec;
        dec.k = k;
        dec.clusters = capacitated(X, C, m);
        dec.exceptional = g.all();
        for (const auto& c : dec.clusters) dec.exceptional -= c;
        GraphBuilder rb(k);
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) {
                PairCertificate pc;
                pc.i = i;
                pc.j = j;
                BipartitePair p(g, dec.clusters[i], dec.clusters[j]);
                pc.density = density(p);
                try {
                    pc.cert = kr_sufficient(p, ceps);
                } catch (const PreconditionViolated&) {
                }
                if (pc.cert && pc.density >= ratio(static_cast<long>(std::llround(cfg.d * 1e6)), 1000000))
                    rb.add_edge(i, j);
                dec.pairs.push_back(std::move(pc));
            }
        dec.R = std::move(rb).build();
        dec.delta_R = min_degree(dec.R);
        dec.delta_target = (1.0 / 3 + cfg.omega / 2) * k;
        const bool connected = is_connected(dec.R);
        dec.gate_ok = connected && dec.delta_R + kThresholdTol >= dec.delta_target;

        // Core: a dense pair, else a triangle of R, else one cluster; the first whose removal
        // leaves a matchable R0.
        std::vector<std::vector<int>> cands;
        std::vector<std::string> kinds;
        {
            std::vector<std::pair<Rational, std::pair<int, int>>> dense;
            for (const auto& pc : dec.pairs)
                if (dec.R.has_edge(pc.i, pc.j) && pc.density >= Rational(2, 3))
                    dense.push_back({pc.density, {pc.i, pc.j}});
            std::stable_sort(dense.begin(), dense.end(),
                             [](const auto& a, const auto& b) { return a.first > b.first; });
            for (const auto& d : dense) {
                cands.push_back({d.second.first, d.second.second});
                kinds.push_back("dense_pair");
            }
            for (const auto& t : enumerate_triangles(dec.R)) {
                cands.push_back({t.a, t.b, t.c});
                kinds.push_back("triangle");
            }
            for (int i = 0; i < k; ++i) {
                cands.push_back({i});
                kinds.push_back("single");
            }
        }
        int chosen = -1, tried = 0;
        for (size_t c = 0; c < cands.size() && tried < 40; ++c) {
            VertexSet keep = dec.R.all();
            for (int x : cands[c]) keep.reset(x);
            ++tried;
            if (matching_feasible(dec.R, keep, eta)) {
                chosen = static_cast<int>(c);
                break;
            }
        }
        if (chosen < 0) chosen = 0;
        dec.core = cands[chosen];
        dec.core_kind = kinds[chosen];

        if (dec.gate_ok) return dec;
        const double score = connected ? static_cast<double>(dec.delta_R) / k : -1;
        if (connected && score > fallback_score) {
            fallback_score = score;
            fallback = std::move(dec);
        }
    }
    if (fallback) return *fallback;
    throw PartitionDegenerate("no cluster count in [t, T] gives a connected reduced graph");
}

// ---------------------------------------------------------------------------------------------

SlicedDecomposition slice_by_matching(const Graph& g, const ReducedDecomposition& dec, const Rational& eta,
                                      const PipelineConfig& cfg) {
    SlicedDecomposition sd;
    sd.base = dec;
    sd.leftover = VertexSet(g.n());
    VertexSet keep = dec.R.all();
    for (int x : dec.core) keep.reset(x);
    std::vector<int> map;
    const Graph r0 = dec.R.induced(keep, &map);
    sd.denominator = 1;
    sd.matching.eta = eta;
    sd.matching.xi = 1 - eta;
    if (r0.n() == 0) {
        sd.size_identity_holds = true;
        return sd;
    }
    const Digraph dg = Digraph::doubled(r0);
    const auto res = solve_perfect_wfm(dg, eta, 1 - eta);
    if (!res.feasible) {
        std::vector<std::string> y;
        for (const auto& q : res.certificate.y) y.push_back(to_string(q));
        throw MatchingInfeasible("no perfect (eta, 1 - eta)-weighted fractional matching on R0", std::move(y));
    }
    sd.matching = res.matching;
    const WfmReport rep = verify_wfm(dg, res.matching);
    sd.denominator = rep.denominator;
    if (sd.denominator > cfg.denominator_cap)
        throw DenominatorOverflow("common denominator " + sd.denominator.get_str() + " exceeds the cap");

    const Rational xi = 1 - eta;
    // Exact size identity per cluster: eta * sum_out(Lw) + (1 - eta) * sum_in(Lw) = L.
    sd.size_identity_holds = true;
    std::vector<std::vector<std::pair<int, Rational>>> pieces(static_cast<size_t>(r0.n()));  // (arc, target)
    const auto& w = res.matching.weights;
    for (int i = 0; i < r0.n(); ++i) {
        Rational out = 0, in = 0;
        for (size_t a = 0; a < w.size(); ++a) {
            if (w[a].first.first == i) out += w[a].second * sd.denominator;
            if (w[a].first.second == i) in += w[a].second * sd.denominator;
        }
        if (eta * out + xi * in != Rational(sd.denominator)) sd.size_identity_holds = false;
    }
    for (size_t a = 0; a < w.size(); ++a) {
        const auto [i, j] = w[a].first;
        const int mi = dec.clusters[map[i]].count(), mj = dec.clusters[map[j]].count();
        pieces[i].push_back({static_cast<int>(2 * a), eta * mi * w[a].second});
        pieces[j].push_back({static_cast<int>(2 * a + 1), xi * mj * w[a].second});
    }
    // Largest remainder rounding within each cluster; piece id 2a is X of arc a, 2a+1 is Y.
    std::vector<VertexSet> piece_set(2 * w.size(), VertexSet(g.n()));
    for (int i = 0; i < r0.n(); ++i) {
        const int ci = map[i];
        std::vector<int> vs = dec.clusters[ci].to_vector();
        Rng rng(derive_seed(cfg.seed, 500 + static_cast<uint64_t>(ci)));
        rng.shuffle(vs);
        auto& ps = pieces[i];
        std::vector<long> size(ps.size());
        std::vector<std::pair<Rational, size_t>> rem;
        long used = 0;
        for (size_t p = 0; p < ps.size(); ++p) {
            mpz_class fl;
            mpz_fdiv_q(fl.get_mpz_t(), ps[p].second.get_num_mpz_t(), ps[p].second.get_den_mpz_t());
            size[p] = fl.get_si();
            used += size[p];
            rem.push_back({ps[p].second - Rational(fl), p});
        }
        std::stable_sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
        for (size_t r = 0; used < static_cast<long>(vs.size()) && r < rem.size(); ++r) {
            ++size[rem[r].second];
            ++used;
        }
        size_t pos = 0;
        for (size_t p = 0; p < ps.size(); ++p)
            for (long c = 0; c < size[p] && pos < vs.size(); ++c) piece_set[ps[p].first].set(vs[pos++]);
        for (; pos < vs.size(); ++pos) sd.leftover.set(vs[pos]);
    }
    for (size_t a = 0; a < w.size(); ++a) {
        Unit u;
        u.X = piece_set[2 * a];
        u.Y = piece_set[2 * a + 1];
        u.cluster_x = map[w[a].first.first];
        u.cluster_y = map[w[a].first.second];
        u.weight = w[a].second;
        if (u.X.empty() || u.Y.empty()) {
            sd.leftover |= u.X;
            sd.leftover |= u.Y;
            continue;
        }
        const double ceps = std::max(cfg.cert_eps, 2.0 / u.X.count());
        if (ceps < 1) {
            try {
                u.cert = kr_sufficient(BipartitePair(g, u.X, u.Y), ceps);
            } catch (const PreconditionViolated&) {
            }
        }
        sd.units.push_back(std::move(u));
    }
    return sd;
}

// ---------------------------------------------------------------------------------------------

TriangleTiling tile_balanced_tripartite(const Graph& g, const VertexSet& X1, const VertexSet& X2,
                                        const VertexSet& X3, uint64_t seed, int attempts) {
    const int s = X1.count();
    if (X2.count() != s || X3.count() != s) throw PreconditionViolated("parts must have equal sizes");
    if (X1.intersects(X2) || X1.intersects(X3) || X2.intersects(X3))
        throw PreconditionViolated("parts must be disjoint");
    TriangleTiling best(g.n());
    for (int at = 0; at < std::max(1, attempts); ++at) {
        Rng rng(derive_seed(seed, static_cast<uint64_t>(at)));
        std::vector<int> x1 = X1.to_vector(), x2 = X2.to_vector(), x3 = X3.to_vector();
        rng.shuffle(x2);
        rng.shuffle(x3);
        std::vector<int> pos3(static_cast<size_t>(g.n()), -1);
        for (int j = 0; j < s; ++j) pos3[x3[j]] = j;
        std::vector<std::vector<int>> adj(static_cast<size_t>(s));
        for (int i = 0; i < s; ++i) {
            (g.adj(x2[i]) & X3).for_each([&](int y) { adj[i].push_back(pos3[y]); });
            rng.shuffle(adj[i]);
        }
        std::vector<int> ml;
        max_bipartite_matching(adj, s, &ml);
        std::vector<Edge> M;
        for (int i = 0; i < s; ++i)
            if (ml[i] >= 0) M.push_back({x2[i], x3[ml[i]]});
        std::vector<std::vector<int>> ladj(static_cast<size_t>(s));
        for (int i = 0; i < s; ++i) {
            for (int e = 0; e < static_cast<int>(M.size()); ++e)
                if (g.has_edge(x1[i], M[e].first) && g.has_edge(x1[i], M[e].second)) ladj[i].push_back(e);
            rng.shuffle(ladj[i]);
        }
        std::vector<int> ml2;
        max_bipartite_matching(ladj, static_cast<int>(M.size()), &ml2);
        TriangleTiling t(g.n());
        for (int i = 0; i < s; ++i)
            if (ml2[i] >= 0) t.add(make_triangle(x1[i], M[ml2[i]].first, M[ml2[i]].second));
        if (t.size() > best.size()) best = t;
        if (best.size() == s) break;
    }
    return best;
}

int improve_tiling(const Graph& g, TriangleTiling& t, uint64_t seed, const Budget& budget, int region_max) {
    const int n = g.n();
    Rng rng(seed);
    int gained = 0, failures = 0;
    while (!budget.expired() && failures < 50) {
        const VertexSet U = g.all() - t.covered;
        if (U.count() < 3) break;
        std::vector<int> uv = U.to_vector();
        VertexSet region(n);
        std::vector<int> picks;
        if (uv.size() <= 6) {
            picks = uv;
        } else {
            const int u = uv[rng.below(uv.size())];
            picks.push_back(u);
            // Prefer uncovered vertices close to u.
            std::vector<int> near, far;
            for (int x : uv)
                if (x != u) (g.has_edge(u, x) || g.adj(u).intersects(g.adj(x)) ? near : far).push_back(x);
            rng.shuffle(near);
            rng.shuffle(far);
            near.insert(near.end(), far.begin(), far.end());
            for (size_t i = 0; i < 2 && i < near.size(); ++i) picks.push_back(near[i]);
        }
        for (int x : picks) region.set(x);
        VertexSet nb(n);
        for (int x : picks) nb |= g.adj(x);
        std::vector<std::pair<int, int>> cand;  // (score, triangle index)
        for (int i = 0; i < t.size(); ++i) {
            const auto& tr = t.triangles[i];
            const int sc = nb.test(tr.a) + nb.test(tr.b) + nb.test(tr.c);
            if (sc > 0) cand.push_back({sc, i});
        }
        rng.shuffle(cand);
        std::stable_sort(cand.begin(), cand.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
        // Mix in a few random far triangles to let the structure move.
        std::vector<int> chosen;
        std::vector<char> inreg(static_cast<size_t>(t.size()), 0);
        const int room = (region_max - region.count()) / 3;
        for (size_t i = 0; i < cand.size() && static_cast<int>(chosen.size()) < room - 1; ++i) {
            chosen.push_back(cand[i].second);
            inreg[cand[i].second] = 1;
        }
        for (int tries = 0; tries < 4 && static_cast<int>(chosen.size()) < room && t.size() > 0; ++tries) {
            const int i = rng.below_int(t.size());
            if (!inreg[i]) {
                chosen.push_back(i);
                inreg[i] = 1;
            }
        }
        for (int i : chosen) mark(region, t.triangles[i]);
        std::vector<int> map;
        const Graph h = g.induced(region, &map);
        const auto r = max_tiling_exact(h, budget, kRepairNodes);
        if (r.tiling.size() > static_cast<int>(chosen.size())) {
            TriangleTiling nt(n);
            for (int i = 0; i < t.size(); ++i)
                if (!inreg[i]) nt.add(t.triangles[i]);
            add_mapped(nt, r.tiling, map);
            gained += r.tiling.size() - static_cast<int>(chosen.size());
            t = std::move(nt);
            failures = 0;
        } else {
            ++failures;
        }
    }
    return gained;
}

// ---------------------------------------------------------------------------------------------

PipelineRun run_tree_argument(const Graph& g, const SlicedDecomposition& sd, const PipelineConfig& cfg) {
    const int n = g.n();
    const Budget budget = cfg.budget_ms > 0 ? Budget::millis(cfg.budget_ms) : Budget();
    PipelineRun run;
    run.branch = "tree_argument";
    run.tiling = TriangleTiling(n);
    const auto& dec = sd.base;
    const int K = static_cast<int>(sd.units.size());

    // W_0 .. W_K: index 0 is the core, i >= 1 is unit i - 1.
    VertexSet core(n);
    for (int c : dec.core) core |= dec.clusters[c];
    std::vector<VertexSet> X(static_cast<size_t>(K) + 1, VertexSet(n)), Y = X;
    std::vector<int> unit_size(static_cast<size_t>(K) + 1, 0);
    VertexSet w0 = dec.exceptional | sd.leftover;
    {
        StageLog& lg = log_stage(run, "super_regular_trim");
        json per = json::array();
        for (int i = 1; i <= K; ++i) {
            const Unit& u = sd.units[i - 1];
            X[i] = u.X;
            Y[i] = u.Y;
            unit_size[i] = u.X.count() + u.Y.count();
            BipartitePair p(g, u.X, u.Y);
            auto [tx, ty] = trim_low_degree(p, density(p), cfg.cert_eps);
            const int dropped = unit_size[i] - tx.count() - ty.count();
            // Trim only when the loss stays within an eps fraction, as the slicing step promises.
            const bool applied = !tx.empty() && !ty.empty() && dropped <= cfg.eps * unit_size[i] + 1;
            if (applied) {
                w0 |= (u.X - tx) | (u.Y - ty);
                X[i] = tx;
                Y[i] = ty;
            }
            per.push_back({{"unit", i}, {"dropped", dropped}, {"applied", applied}});
        }
        lg.data["units"] = per;
        lg.data["W0"] = w0.count();
    }
    VertexSet assigned = core;
    for (int i = 1; i <= K; ++i) assigned |= X[i] | Y[i];
    w0 |= g.all() - assigned - w0;
    std::vector<int> owner(static_cast<size_t>(n), -1);
    core.for_each([&](int v) { owner[v] = 0; });
    for (int i = 1; i <= K; ++i) (X[i] | Y[i]).for_each([&](int v) { owner[v] = i; });
    std::vector<int> wsize(static_cast<size_t>(K) + 1, 0);
    wsize[0] = core.count();
    for (int i = 1; i <= K; ++i) wsize[i] = X[i].count() + Y[i].count();

    // Absorption of W_0 under the 18 eps / 20 eps load rule.
    VertexSet carried_core(n);
    {
        StageLog& lg = log_stage(run, "absorption");
        std::vector<int> load(static_cast<size_t>(K) + 1, 0);
        int relaxed = 0, stuck = 0;
        w0.for_each([&](int x) {
            if (run.tiling.covered.test(x)) return;
            VertexSet heavy(n);
            for (int i = 0; i <= K; ++i)
                if (load[i] >= 18 * cfg.eps * wsize[i]) {
                    if (i == 0)
                        heavy |= core;
                    else
                        heavy |= X[i] | Y[i];
                }
            const VertexSet free_nb = g.adj(x) - run.tiling.covered;
            int u, w;
            bool ok = edge_in(g, free_nb - heavy - w0, u, w);
            if (!ok && (ok = edge_in(g, free_nb - w0, u, w))) ++relaxed;
            if (!ok && (ok = edge_in(g, free_nb, u, w))) ++relaxed;
            if (!ok) {
                ++stuck;
                carried_core.set(x);
                return;
            }
            const Triangle t = make_triangle(x, u, w);
            run.tiling.add(t);
            for (int v : {t.a, t.b, t.c})
                if (owner[v] >= 0) ++load[owner[v]];
        });
        bool load_ok = true;
        json loads = json::array();
        for (int i = 0; i <= K; ++i) {
            const bool ok = load[i] <= 20 * cfg.eps * wsize[i] + 1e-9;
            load_ok = load_ok && ok;
            loads.push_back({{"set", i}, {"load", load[i]}, {"size", wsize[i]}, {"ok", ok}});
        }
        lg.data["absorbed_triangles"] = run.tiling.size();
        lg.data["relaxed"] = relaxed;
        lg.data["stuck"] = stuck;
        lg.data["loads"] = loads;
        lg.data["load_ok"] = load_ok;
        if (!load_ok) warn(run, lg, "load cap 20 eps |W_i| exceeded");
        if (stuck) warn(run, lg, std::to_string(stuck) + " exceptional vertices found no triangle");
    }
    auto remaining = [&](int i) {
        return (i == 0 ? (core | carried_core) : (X[i] | Y[i])) - run.tiling.covered;
    };

    // Reduced graph of units and its spanning tree.
    std::vector<int> parent(static_cast<size_t>(K) + 1, -1);
    std::vector<int> order;
    {
        StageLog& lg = log_stage(run, "tree");
        GraphBuilder rb(K + 1);
        std::vector<VertexSet> rem(static_cast<size_t>(K) + 1);
        for (int i = 0; i <= K; ++i) rem[i] = remaining(i);
        for (int i = 0; i <= K; ++i)
            for (int j = i + 1; j <= K; ++j) {
                bool any = false;
                rem[i].for_each([&](int v) { any = any || g.adj(v).intersects(rem[j]); });
                if (any) rb.add_edge(i, j);
            }
        const Graph rs = std::move(rb).build();
        lg.data["units"] = K;
        lg.data["R_star_edges"] = rs.edges();
        if (is_connected(rs)) {
            SpanTreeResult st = bounded_degree_spanning_tree(rs, 3);
            lg.data["degree_bound"] = 3;
            if (!st.success) {
                st = bounded_degree_spanning_tree(rs, 10);
                lg.data["degree_bound"] = 10;
                if (!st.success) warn(run, lg, "no spanning tree of maximum degree 10 found");
            }
            parent = st.tree.parent;
            lg.data["max_degree"] = st.tree.max_degree();
        } else {
            warn(run, lg, "reduced graph of units is disconnected; unreachable units fall back to the core");
            std::vector<char> seen(static_cast<size_t>(K) + 1, 0);
            std::deque<int> q{0};
            seen[0] = 1;
            while (!q.empty()) {
                const int x = q.front();
                q.pop_front();
                rs.adj(x).for_each([&](int y) {
                    if (!seen[y]) {
                        seen[y] = 1;
                        parent[y] = x;
                        q.push_back(y);
                    }
                });
            }
            for (int i = 1; i <= K; ++i)
                if (!seen[i]) parent[i] = 0;
        }
        // BFS order from the core; leaves are processed in reverse.
        std::vector<std::vector<int>> ch(static_cast<size_t>(K) + 1);
        for (int i = 1; i <= K; ++i) ch[parent[i]].push_back(i);
        std::deque<int> q{0};
        while (!q.empty()) {
            const int x = q.front();
            q.pop_front();
            order.push_back(x);
            for (int y : ch[x]) q.push_back(y);
        }
        lg.data["parent"] = parent;
    }

    // Leaf-by-leaf tiling.
    {
        StageLog& lg = log_stage(run, "leaves");
        json per = json::array();
        bool monotone = true;
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const int i = *it;
            if (i == 0) continue;
            const int j = parent[i];
            const VertexSet Vi = remaining(i);
            json rec = {{"unit", i}, {"parent", j}, {"size", Vi.count()}};
            if (Vi.empty()) {
                per.push_back(rec);
                continue;
            }
            VertexSet Pj = remaining(j);
            const double floor_deg = cfg.d * unit_size[i] / 6.0;
            VertexSet sp(n);
            Vi.for_each([&](int v) {
                if (g.adj(v).intersect_count(Pj) + 1e-9 >= floor_deg) sp.set(v);
            });
            VertexSet A = X[i] & Vi, B = (Vi - A);
            if (sp.intersect_count(B) > sp.intersect_count(A)) std::swap(A, B);
            std::vector<int> map;
            const Graph h = g.induced(Vi, &map);
            std::vector<int> back(static_cast<size_t>(n), -1);
            for (int k = 0; k < h.n(); ++k) back[map[k]] = k;
            TilerParams p = cfg.tiler;
            p.seed = derive_seed(cfg.seed, 1000 + static_cast<uint64_t>(i));
            const long z = static_cast<long>(std::floor(p.phi * p.eps_prime * h.n()));
            long s = std::max<long>(static_cast<long>(std::ceil(p.phi * h.n())), z);
            while ((static_cast<long>(h.n()) - s + z) % 3 != 0) ++s;
            std::vector<int> pool = (sp & A).to_vector();
            std::vector<int> rest = (A - sp).to_vector();
            auto by_parent_deg = [&](int a, int b) {
                return g.adj(a).intersect_count(Pj) > g.adj(b).intersect_count(Pj);
            };
            std::stable_sort(pool.begin(), pool.end(), by_parent_deg);
            std::stable_sort(rest.begin(), rest.end(), by_parent_deg);
            pool.insert(pool.end(), rest.begin(), rest.end());
            rec["S_prime"] = sp.count();
            rec["S"] = s;
            rec["z"] = z;
            if (static_cast<long>((sp & A).count()) < s) rec["S_padded"] = true;
            TriangleTiling local(n);
            std::string method = "tile_avoiding_core";
            if (s <= static_cast<long>(pool.size())) {
                VertexSet hA(h.n()), hB(h.n()), hS(h.n());
                A.for_each([&](int v) { hA.set(back[v]); });
                B.for_each([&](int v) { hB.set(back[v]); });
                for (long c = 0; c < s; ++c) hS.set(back[pool[c]]);
                try {
                    auto [tt, tr] = tile_avoiding_core(h, hA, hB, hS, p);
                    add_mapped(local, tt, map);
                } catch (const Error& e) {
                    rec["tiler_error"] = std::string(e.kind()) + ": " + e.what();
                    method.clear();
                }
            } else {
                method.clear();
            }
            if (method.empty()) {
                local = tile_set(g, Vi, cfg, budget, p.seed, &method);
            }
            rec["method"] = method;
            run.tiling.append(local);
            // Extend the uncovered vertices of V_i into the parent.
            int into_parent = 0, carried = 0;
            (Vi - run.tiling.covered).for_each([&](int v) {
                if (run.tiling.covered.test(v)) return;
                Pj = remaining(j);
                int u, w;
                if (edge_in(g, g.adj(v) & Pj, u, w)) {
                    run.tiling.add(make_triangle(v, u, w));
                    into_parent += 2;
                    return;
                }
                const VertexSet own = (g.adj(v) & Vi) - run.tiling.covered;
                for (int x = own.first(); x >= 0; x = own.next(x)) {
                    const int y = (g.adj(v) & g.adj(x) & Pj).first();
                    if (y >= 0) {
                        run.tiling.add(make_triangle(v, x, y));
                        ++into_parent;
                        return;
                    }
                }
                ++carried;
                if (j == 0)
                    carried_core.set(v);
                else
                    Y[j].set(v);
            });
            rec["covered_in_parent"] = into_parent;
            rec["carried"] = carried;
            if (carried) monotone = false;
            per.push_back(rec);
        }
        lg.data["leaves"] = per;
        lg.data["monotone"] = monotone;
        if (!monotone) warn(run, lg, "some unit vertices were carried into the parent");
    }

    // Core finish.
    {
        StageLog& lg = log_stage(run, "core_finish");
        lg.data["core_kind"] = dec.core_kind;
        VertexSet C = remaining(0);
        lg.data["size"] = C.count();
        TriangleTiling fin(n);
        std::string method;
        const uint64_t cseed = derive_seed(cfg.seed, 3);
        if (C.count() < cfg.exact_below) {
            fin = tile_set(g, C, cfg, budget, cseed, &method);
        } else {
            std::vector<int> deleted;
            {
                std::vector<int> cv = C.to_vector();
                std::stable_sort(cv.begin(), cv.end(), [&](int a, int b) {
                    return g.adj(a).intersect_count(C) < g.adj(b).intersect_count(C);
                });
                for (int r = 0; r < C.count() % 3; ++r) deleted.push_back(cv[r]);
            }
            lg.data["deleted"] = deleted;
            VertexSet Cd = C;
            for (int v : deleted) Cd.reset(v);
            std::vector<VertexSet> parts;
            for (int c : dec.core) parts.push_back(dec.clusters[c] & Cd);
            // Vertices from outside the core clusters join the part they see least of.
            (Cd - core).for_each([&](int v) {
                size_t best = 0;
                for (size_t q = 1; q < parts.size(); ++q)
                    if (g.adj(v).intersect_count(parts[q]) < g.adj(v).intersect_count(parts[best])) best = q;
                parts[best].set(v);
            });
            try {
                if (parts.size() == 3) {
                    method = "balance+matching";
                    auto [bt, btr] = balance_tripartite(g, parts[0], parts[1], parts[2]);
                    fin.append(bt);
                    lg.data["balance_steps"] = bt.size();
                    const VertexSet r1 = parts[0] - fin.covered, r2 = parts[1] - fin.covered,
                                    r3 = parts[2] - fin.covered;
                    fin.append(tile_balanced_tripartite(g, r1, r2, r3, cseed));
                } else if (parts.size() == 2) {
                    method = "greedy_ab";
                    const int a = parts[0].count(), b = parts[1].count();
                    const int ta = (2 * a - b) / 3, tb = (2 * b - a) / 3;
                    if (ta < 0 || tb < 0) throw StarvedStep("core", 0, "unbalanced pair core");
                    BipartitePair p(g, parts[0], parts[1]);
                    fin = greedy_ab_within(g, parts[0], parts[1], {ta, tb}, to_double(density(p)), cfg.eps,
                                           g.all() - Cd, "core:");
                } else {
                    method = "greedy+repair";
                    fin = tile_set(g, Cd, cfg, budget, cseed, nullptr);
                }
            } catch (const Error& e) {
                lg.data["finish_error"] = std::string(e.kind()) + ": " + e.what();
                method += "/fallback";
                fin = tile_set(g, Cd, cfg, budget, cseed, nullptr);
            }
            // Exact local re-solving on whatever the structured finish left.
            std::vector<int> map;
            const Graph hc = g.induced(C, &map);
            std::vector<int> back(static_cast<size_t>(n), -1);
            for (int k = 0; k < hc.n(); ++k) back[map[k]] = k;
            TriangleTiling loc(hc.n());
            for (const auto& t : fin.triangles) loc.add(make_triangle(back[t.a], back[t.b], back[t.c]));
            lg.data["uncovered_after_structured"] = hc.n() - 3 * loc.size();
            improve_tiling(hc, loc, cseed, budget);
            fin = TriangleTiling(n);
            add_mapped(fin, loc, map);
        }
        run.tiling.append(fin);
        const int left = (C - run.tiling.covered).count();
        lg.data["method"] = method;
        lg.data["uncovered"] = left;
        if (cfg.strict && left > 2) throw CoreUnsolved("core finish left " + std::to_string(left) + " vertices");
    }
    run.uncovered = g.all() - run.tiling.covered;
    return run;
}

// ---------------------------------------------------------------------------------------------

namespace {

PipelineRun end_to_end_impl(const Graph& g, const PipelineConfig& cfg, int depth, const Budget& budget);

void final_repair(const Graph& g, PipelineRun& run, const PipelineConfig& cfg, const Budget& budget) {
    run.uncovered_before_repair = g.n() - 3 * run.tiling.size();
    if (!cfg.repair) return;
    StageLog& lg = log_stage(run, "repair");
    const int gained = improve_tiling(g, run.tiling, derive_seed(cfg.seed, 77), budget);
    lg.data["gained"] = gained;
    lg.data["uncovered_before"] = run.uncovered_before_repair;
    lg.data["uncovered_after"] = g.n() - 3 * run.tiling.size();
}

/// Tiles one side of a sparse cut after the X_P cleanup; returns the triangles used.
TriangleTiling sparse_side(const Graph& g, const VertexSet& P, const VertexSet& S, const PipelineConfig& cfg,
                           int depth, const Budget& budget, uint64_t seed, json& rec,
                           std::vector<std::string>& warnings) {
    const int n = g.n();
    const VertexSet Pm = P - S;
    TriangleTiling t(n);
    const double floor_deg = n / 3.0 + cfg.omega * n / 2.0;
    VertexSet xp(n);
    P.for_each([&](int x) {
        if (g.adj(x).intersect_count(P) < floor_deg) xp.set(x);
    });
    xp -= S;
    int failed = 0;
    xp.for_each([&](int x) {
        if (t.covered.test(x)) return;
        int u, w;
        if (edge_in(g, (g.adj(x) & Pm) - t.covered, u, w))
            t.add(make_triangle(x, u, w));
        else
            ++failed;
    });
    rec["X_size"] = xp.count();
    rec["X_triangles"] = t.size();
    if (failed) warnings.push_back(std::to_string(failed) + " low-degree vertices found no triangle");
    const VertexSet rest = Pm - t.covered;
    rec["rest"] = rest.count();
    std::vector<int> map;
    const Graph h = g.induced(rest, &map);
    TriangleTiling sub(h.n());
    if (h.n() < cfg.exact_below) {
        const auto r = max_tiling_exact(h, budget, kSmallExactNodes);
        sub = r.tiling;
        rec["method"] = "exact";
        rec["optimal"] = r.optimal;
    } else {
        PipelineConfig c2 = cfg;
        c2.seed = seed;
        const PipelineRun inner = end_to_end_impl(h, c2, depth + 1, budget);
        sub = inner.tiling;
        rec["method"] = "recursive";
        rec["inner_branch"] = inner.branch;
        for (const auto& w : inner.warnings) warnings.push_back("inner: " + w);
    }
    add_mapped(t, sub, map);
    return t;
}

PipelineRun end_to_end_impl(const Graph& g, const PipelineConfig& cfg, int depth, const Budget& budget) {
    cfg.validate();
    const int n = g.n();
    PipelineRun run;
    run.tiling = TriangleTiling(n);
    if (n == 0) {
        run.branch = "exact";
        run.uncovered = VertexSet(0);
        run.uncovered_before_repair = 0;
        return run;
    }
    {
        StageLog& lg = log_stage(run, "gates");
        const int delta = min_degree(g);
        const auto alpha = independence_number(g, Budget::millis(500));
        const bool dok = delta >= (1.0 / 3 + cfg.omega) * n - kThresholdTol;
        const bool aok = alpha.upper <= cfg.gamma * n + kThresholdTol;
        lg.data = {{"n", n},      {"min_degree", delta},        {"degree_gate", dok},
                   {"alpha_lower", alpha.lower}, {"alpha_upper", alpha.upper}, {"alpha_gate", aok},
                   {"depth", depth}};
        if (!dok) warn(run, lg, "minimum degree below (1/3 + omega) n");
        if (!aok) warn(run, lg, "independence number upper bound above gamma n");
    }

    if (auto cut = sparse_cut_split(g, cfg.psi_value(), cfg.omega)) {
        run.branch = "sparse_cut";
        StageLog& lg = log_stage(run, "sparse_cut");
        lg.data = {{"A", vset(cut->A)},
                   {"B", vset(cut->B)},
                   {"crossing", cut->crossing},
                   {"threshold", cut->threshold},
                   {"delta_A", cut->delta_A},
                   {"delta_B", cut->delta_B},
                   {"delta_G", cut->delta_G},
                   {"consequence_holds", cut->consequence_holds},
                   {"case", cut->mod3_case},
                   {"divisibility_barrier", cut->divisibility_barrier},
                   {"S_triangles", tri_json(cut->s_triangles)}};
        if (cut->divisibility_barrier) warn(run, lg, "cut is a divisibility barrier; S chosen arbitrarily");
        VertexSet S(n);
        for (const auto& t : cut->s_triangles) mark(S, t);
        if (cut->s_triangles.empty() && cut->mod3_case != "a") {
            // Arbitrary S of at most four vertices making both sides divisible by three.
            for (const VertexSet* P : {&cut->A, &cut->B}) {
                std::vector<int> pv = P->to_vector();
                std::stable_sort(pv.begin(), pv.end(), [&](int a, int b) {
                    return g.adj(a).intersect_count(*P) < g.adj(b).intersect_count(*P);
                });
                for (int r = 0; r < P->count() % 3; ++r) S.set(pv[r]);
            }
        }
        lg.data["S"] = vset(S);
        json sides = json::array();
        int idx = 0;
        for (const VertexSet* P : {&cut->A, &cut->B}) {
            json rec;
            std::vector<std::string> ws;
            const TriangleTiling part =
                sparse_side(g, *P, S, cfg, depth, budget, derive_seed(cfg.seed, 10 + idx++), rec, ws);
            for (const auto& w : ws) warn(run, lg, w);
            run.tiling.append(part);
            sides.push_back(rec);
        }
        lg.data["sides"] = sides;
        for (const auto& t : cut->s_triangles) run.tiling.add(t);
    } else if (n < cfg.exact_below) {
        run.branch = "exact";
        StageLog& lg = log_stage(run, "exact");
        const auto r = max_tiling_exact(g, budget, kSmallExactNodes);
        run.tiling = r.tiling;
        lg.data["optimal"] = r.optimal;
        lg.data["nodes"] = r.nodes;
        lg.data["deficit"] = n - 3 * r.tiling.size();
        if (!r.optimal) warn(run, lg, "exact search truncated");
        if (auto sb = search_space_barrier(g, Budget::millis(1000), {20, cfg.seed})) {
            lg.data["space_barrier"] = {{"A", vset(sb->A)}, {"slack", sb->slack()},
                                        {"predicted_min_uncovered", std::ceil(3 * sb->slack() - 1e-9)}};
        }
    } else {
        run.branch = "tree_argument";
        try {
            StageLog* lg = &log_stage(run, "partition");
            const ReducedDecomposition dec = heuristic_partition(g, cfg);
            json certs = json::array();
            for (const auto& pc : dec.pairs) {
                json c = {{"i", pc.i}, {"j", pc.j}, {"density", to_string(pc.density)}, {"certified", bool(pc.cert)}};
                if (pc.cert) c["eps"] = pc.cert->eps;
                certs.push_back(c);
            }
            std::vector<int> sizes;
            for (const auto& c : dec.clusters) sizes.push_back(c.count());
            lg->data = {{"k", dec.k},
                        {"cluster_sizes", sizes},
                        {"exceptional", dec.exceptional.count()},
                        {"R_edges", dec.R.edge_list()},
                        {"delta_R", dec.delta_R},
                        {"delta_target", dec.delta_target},
                        {"gate_ok", dec.gate_ok},
                        {"core", dec.core},
                        {"core_kind", dec.core_kind},
                        {"pairs", certs}};
            if (!dec.gate_ok) warn(run, *lg, "reduced graph misses the minimum degree target");
            if (dec.exceptional.count() > cfg.eps * n) warn(run, *lg, "exceptional set larger than eps n");

            lg = &log_stage(run, "matching");
            const Rational eta = cfg.eta_value();
            const SlicedDecomposition sd = slice_by_matching(g, dec, eta, cfg);
            json w = json::array();
            for (const auto& [arc, q] : sd.matching.weights) w.push_back({arc.first, arc.second, to_string(q)});
            lg->data = {{"eta", to_string(eta)},
                        {"weights", w},
                        {"denominator", sd.denominator.get_str()},
                        {"size_identity_holds", sd.size_identity_holds},
                        {"units", sd.units.size()},
                        {"leftover", sd.leftover.count()}};
            json us = json::array();
            for (const auto& u : sd.units)
                us.push_back({{"cluster_x", u.cluster_x},
                              {"cluster_y", u.cluster_y},
                              {"X", u.X.count()},
                              {"Y", u.Y.count()},
                              {"weight", to_string(u.weight)},
                              {"certified", bool(u.cert)}});
            log_stage(run, "slicing").data["units"] = us;

            PipelineRun tr = run_tree_argument(g, sd, cfg);
            for (auto& l : tr.logs) run.logs.push_back(std::move(l));
            for (auto& w2 : tr.warnings) run.warnings.push_back(std::move(w2));
            run.tiling = tr.tiling;
        } catch (const Error& e) {
            StageLog& lg = log_stage(run, "fallback");
            lg.data = {{"error_kind", e.kind()}, {"error", e.what()}};
            if (const auto* mi = dynamic_cast<const MatchingInfeasible*>(&e)) lg.data["farkas"] = mi->certificate();
            if (cfg.strict && dynamic_cast<const CoreUnsolved*>(&e)) throw;
            warn(run, lg, std::string("stage failed with ") + e.kind() + "; greedy tiling used");
            run.branch = "fallback";
            run.tiling = greedy_tiling(g);
        }
    }
    final_repair(g, run, cfg, budget);
    run.uncovered = g.all() - run.tiling.covered;
    {
        StageLog& lg = log_stage(run, "result");
        lg.data = {{"triangles", run.tiling.size()},
                   {"uncovered", run.uncovered.count()},
                   {"valid", tiling_is_valid(g, run.tiling)}};
    }
    return run;
}

}  // namespace

PipelineRun end_to_end(const Graph& g, const PipelineConfig& cfg) {
    const Budget budget = cfg.budget_ms > 0 ? Budget::millis(cfg.budget_ms) : Budget();
    return end_to_end_impl(g, cfg, 0, budget);
}

}  // namespace tritile
