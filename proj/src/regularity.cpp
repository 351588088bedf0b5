#include "tritile/regularity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "tritile/errors.hpp"
#include "tritile/rng.hpp"

namespace tritile {

namespace {

int ceil_tol(double x) { return static_cast<int>(std::ceil(x - kThresholdTol)); }
bool gt(double x, double thr) { return x > thr + kThresholdTol; }
bool lt(double x, double thr) { return x < thr - kThresholdTol; }

}  // namespace

BipartitePair::BipartitePair(const Graph& host, VertexSet A, VertexSet B)
    : host_(&host), A_(std::move(A)), B_(std::move(B)) {
    if (A_.universe() != host.n() || B_.universe() != host.n())
        throw PreconditionViolated("pair sets must live in the host vertex set");
    if (A_.empty() || B_.empty()) throw PreconditionViolated("pair sides must be non-empty");
    if (A_.intersects(B_)) throw PreconditionViolated("pair sides must be disjoint");
}

long BipartitePair::edges_within_pair(const VertexSet& X, const VertexSet& Y) const {
    long e = 0;
    X.for_each([&](int x) { e += host_->adj(x).intersect_count(Y); });
    return e;
}

std::string to_string(RegKind k) {
    switch (k) {
        case RegKind::Regular: return "regular";
        case RegKind::GeqRegular: return "geq_regular";
        case RegKind::SuperRegular: return "super_regular";
    }
    return "?";
}

std::string to_string(RegMethod m) {
    switch (m) {
        case RegMethod::Exhaustive: return "exhaustive";
        case RegMethod::CodegreeSufficient: return "codegree_sufficient";
        case RegMethod::CodegreeNecessaryFailed: return "codegree_necessary_failed";
        case RegMethod::Sampled: return "sampled";
    }
    return "?";
}

Rational density(const BipartitePair& p) { return density(p, p.A(), p.B()); }

Rational density(const BipartitePair& p, const VertexSet& X, const VertexSet& Y) {
    const long xs = X.count(), ys = Y.count();
    if (xs == 0 || ys == 0) return Rational(0);
    Rational r(p.edges_within_pair(X, Y), xs * ys);
    r.canonicalize();
    return r;
}

Rational density_by_degrees(const BipartitePair& p) {
    Rational avg;
    p.A().for_each([&](int x) {
        Rational frac(p.host().adj(x).intersect_count(p.B()), p.B().count());
        frac.canonicalize();
        avg += frac;
    });
    return avg / p.A().count();
}

RegularityCertificate check_regular_exhaustive(const BipartitePair& p, const Rational& d, double eps,
                                               RegKind kind) {
    const std::vector<int> av = p.A().to_vector(), bv = p.B().to_vector();
    const int a = static_cast<int>(av.size()), b = static_cast<int>(bv.size());
    if (a > kExhaustiveCap || b > kExhaustiveCap)
        throw TooLarge("exhaustive regularity check is capped at " + std::to_string(kExhaustiveCap) +
                       " vertices per side");
    if (kind == RegKind::SuperRegular) throw PreconditionViolated("use check_super_regular");
    const int kx = std::max(1, ceil_tol(eps * a)), ky = std::max(1, ceil_tol(eps * b));

    // nb[j] = mask over A-indices of the neighbours of B-vertex j.
    std::vector<uint32_t> nb(static_cast<size_t>(b), 0);
    for (int j = 0; j < b; ++j)
        for (int i = 0; i < a; ++i)
            if (p.host().has_edge(av[i], bv[j])) nb[j] |= uint32_t{1} << i;

    Rational lo(2), hi(-1);
    uint32_t lo_x = 0, hi_x = 0;
    std::vector<int> lo_y, hi_y;
    std::vector<std::pair<int, int>> deg(static_cast<size_t>(b));
    std::vector<long> prefix(static_cast<size_t>(b) + 1);
    for (uint32_t mask = 1; mask < (uint32_t{1} << a); ++mask) {
        const int xs = std::popcount(mask);
        if (xs < kx) continue;
        for (int j = 0; j < b; ++j) deg[j] = {std::popcount(nb[j] & mask), j};
        std::sort(deg.begin(), deg.end());
        for (int j = 0; j < b; ++j) prefix[j + 1] = prefix[j] + deg[j].first;
        for (int s = ky; s <= b; ++s) {
            const long emin = prefix[s], emax = prefix[b] - prefix[b - s];
            Rational dmin(emin, static_cast<long>(xs) * s), dmax(emax, static_cast<long>(xs) * s);
            dmin.canonicalize();
            dmax.canonicalize();
            if (dmin < lo) {
                lo = dmin;
                lo_x = mask;
                lo_y.clear();
                for (int j = 0; j < s; ++j) lo_y.push_back(deg[j].second);
            }
            if (dmax > hi) {
                hi = dmax;
                hi_x = mask;
                hi_y.clear();
                for (int j = b - s; j < b; ++j) hi_y.push_back(deg[j].second);
            }
        }
    }

    RegularityCertificate c;
    c.d = d;
    c.eps = c.eps_input = eps;
    c.kind = kind;
    c.method = RegMethod::Exhaustive;
    c.min_density = lo;
    c.max_density = hi;
    const double dd = to_double(d), dl = to_double(lo), dh = to_double(hi);
    auto witness = [&](uint32_t xm, const std::vector<int>& ys) {
        VertexSet X(p.host().n()), Y(p.host().n());
        for (int i = 0; i < a; ++i)
            if (xm >> i & 1u) X.set(av[i]);
        for (int j : ys) Y.set(bv[j]);
        c.witness = std::make_pair(X, Y);
    };
    if (kind == RegKind::Regular) {
        if (lt(dl, dd - eps)) {
            witness(lo_x, lo_y);
            c.note = "sub-density below d - eps";
        } else if (gt(dh, dd + eps)) {
            witness(hi_x, hi_y);
            c.note = "sub-density above d + eps";
        } else {
            c.holds = true;
        }
    } else {
        // Some d' >= d with every qualifying density in [d' - eps, d' + eps].
        if (gt(dh - dl, 2 * eps)) {
            witness(lo_x, lo_y);
            c.note = "sub-density spread exceeds 2 eps";
        } else if (lt(dl + eps, dd)) {
            witness(lo_x, lo_y);
            c.note = "no admissible d' >= d";
        } else {
            c.holds = true;
        }
    }
    return c;
}

CodegreeGraph codegree_graph(const BipartitePair& p, double eps) {
    CodegreeGraph D;
    D.a_vertices = p.A().to_vector();
    D.d = density(p);
    D.eps = eps;
    const int a = static_cast<int>(D.a_vertices.size());
    const double b = p.B().count();
    const double dd = to_double(D.d);
    const double deg_thr = (dd - eps) * b, co_thr = (dd + eps) * (dd + eps) * b;
    std::vector<VertexSet> nb;
    std::vector<char> good(static_cast<size_t>(a));
    nb.reserve(static_cast<size_t>(a));
    for (int i = 0; i < a; ++i) {
        nb.push_back(p.host().adj(D.a_vertices[i]) & p.B());
        good[i] = gt(nb[i].count(), deg_thr);
    }
    D.adj.assign(static_cast<size_t>(a), VertexSet(a));
    for (int i = 0; i < a; ++i) {
        if (!good[i]) continue;
        if (lt(nb[i].count(), co_thr)) ++D.loops;
        for (int j = i + 1; j < a; ++j) {
            if (!good[j] || !lt(nb[i].intersect_count(nb[j]), co_thr)) continue;
            D.adj[i].set(j);
            D.adj[j].set(i);
            ++D.edges;
        }
    }
    return D;
}

std::optional<RegularityCertificate> kr_sufficient(const BipartitePair& p, double eps) {
    if (!(eps > 0 && eps < 1)) throw PreconditionViolated("kr_sufficient needs 0 < eps < 1");
    const double a = p.A().count();
    if (lt(a, 2.0 / eps)) throw PreconditionViolated("kr_sufficient needs |A| >= 2/eps");
    const CodegreeGraph D = codegree_graph(p, eps);
    if (!gt(static_cast<double>(D.edges), (1 - 5 * eps) * a * a / 2)) return std::nullopt;
    RegularityCertificate c;
    c.d = D.d;
    c.eps_input = eps;
    c.eps = std::pow(16 * eps, 0.2);
    c.kind = RegKind::Regular;
    c.method = RegMethod::CodegreeSufficient;
    c.holds = true;
    c.codegree_edges = D.edges;
    if (c.eps >= 1) c.note = "inflated epsilon is at least 1, so the certificate is vacuous";
    return c;
}

bool kr_necessary_check(const BipartitePair& p, const Rational& d, double eps) {
    (void)d;
    if (!(eps > 0 && eps < 1)) throw PreconditionViolated("kr_necessary_check needs 0 < eps < 1");
    if (p.edges() < p.A().count())
        throw PreconditionViolated("kr_necessary_check needs |B| >= 1/d(A,B)");
    const CodegreeGraph D = codegree_graph(p, eps);
    const double a = p.A().count();
    return !lt(static_cast<double>(D.ordered_pairs()), (1 - 8 * eps) * a * a);
}

namespace {

bool degree_floors(const BipartitePair& p, double dd, double eps, std::string* why) {
    const double fa = (dd - eps) * p.B().count(), fb = (dd - eps) * p.A().count();
    bool ok = true;
    p.A().for_each([&](int x) {
        if (ok && lt(p.host().adj(x).intersect_count(p.B()), fa)) {
            ok = false;
            *why = "vertex " + std::to_string(x) + " of A is below the degree floor";
        }
    });
    p.B().for_each([&](int y) {
        if (ok && lt(p.host().adj(y).intersect_count(p.A()), fb)) {
            ok = false;
            *why = "vertex " + std::to_string(y) + " of B is below the degree floor";
        }
    });
    return ok;
}

}  // namespace

RegularityCertificate check_super_regular(const BipartitePair& p, const Rational& d, double eps,
                                          SuperMethod method) {
    RegularityCertificate c;
    if (method == SuperMethod::Exhaustive) {
        c = check_regular_exhaustive(p, d, eps, RegKind::GeqRegular);
    } else {
        auto cert = kr_sufficient(p, eps);
        if (!cert) {
            c.d = d;
            c.eps = c.eps_input = eps;
            c.method = RegMethod::CodegreeSufficient;
            c.conclusive = false;
            c.codegree_edges = codegree_graph(p, eps).edges;
            c.note = "codegree criterion did not fire";
        } else {
            c = *cert;
            // (d*, eps')-regular with d* >= d is (>= d, eps')-regular.
            c.holds = c.d >= d;
            if (!c.holds) c.note = "pair density below d";
            c.d = d;
        }
    }
    c.kind = RegKind::SuperRegular;
    if (c.holds) {
        std::string why;
        if (!degree_floors(p, to_double(d), c.eps, &why)) {
            c.holds = false;
            c.note = why;
        }
    }
    return c;
}

std::pair<VertexSet, VertexSet> trim_low_degree(const BipartitePair& p, const Rational& d, double eps) {
    const double dd = to_double(d);
    VertexSet X = p.A(), Y = p.B();
    p.A().for_each([&](int x) {
        if (lt(p.host().adj(x).intersect_count(p.B()), (dd - eps) * p.B().count())) X.reset(x);
    });
    p.B().for_each([&](int y) {
        if (lt(p.host().adj(y).intersect_count(p.A()), (dd - eps) * p.A().count())) Y.reset(y);
    });
    return {X, Y};
}

SlicingStats random_slicing_experiment(const BipartitePair& p, const std::vector<int>& xs,
                                       const std::vector<int>& ys, uint64_t seed, int trials,
                                       const SlicingOptions& opt) {
    const int na = p.A().count(), nb = p.B().count();
    const long sx = std::accumulate(xs.begin(), xs.end(), 0L);
    const long sy = std::accumulate(ys.begin(), ys.end(), 0L);
    if (xs.empty() || ys.empty() || sx > na || sy > nb)
        throw SizeBudget("slice sizes do not fit in the pair");
    const double floor_size = opt.beta * std::max(na, nb);
    const double crit_eps = 2 * opt.eps;
    for (int x : xs)
        if (lt(x, floor_size) || lt(x, 2.0 / crit_eps))
            throw SizeBudget("slice of size " + std::to_string(x) + " is too small");
    for (int y : ys)
        if (lt(y, floor_size)) throw SizeBudget("slice of size " + std::to_string(y) + " is too small");

    SlicingStats st;
    st.trials = trials;
    st.parent_density = density(p);
    st.eps_prime = std::pow(33 * opt.eps, 0.2);
    const double pd = to_double(st.parent_density);
    const Graph& g = p.host();
    const std::vector<int> av = p.A().to_vector(), bv = p.B().to_vector();

    std::vector<VertexSet> nbA, nbB, coA, coB;  // neighbourhoods and pairwise common neighbourhoods
    for (int x : av) nbA.push_back(g.adj(x) & p.B());
    for (int y : bv) nbB.push_back(g.adj(y) & p.A());
    if (opt.codegree_stats) {
        for (size_t i = 0; i < av.size(); ++i)
            for (size_t j = i + 1; j < av.size(); ++j) coA.push_back(nbA[i] & nbA[j]);
        for (size_t i = 0; i < bv.size(); ++i)
            for (size_t j = i + 1; j < bv.size(); ++j) coB.push_back(nbB[i] & nbB[j]);
    }
    double sum_dev = 0;

    auto slices = [&](std::vector<int> pool, const std::vector<int>& sizes, Rng& rng) {
        rng.shuffle(pool);
        std::vector<VertexSet> out;
        size_t k = 0;
        for (int s : sizes) {
            VertexSet X(g.n());
            for (int i = 0; i < s; ++i) X.set(pool[k++]);
            out.push_back(std::move(X));
        }
        return out;
    };
    auto max_dev = [](const std::vector<VertexSet>& base, const std::vector<VertexSet>& parts,
                      double total, double& acc) {
        for (const auto& w : base) {
            const double full = w.count() / total;
            for (const auto& Y : parts)
                acc = std::max(acc, std::abs(static_cast<double>(w.intersect_count(Y)) / Y.count() - full));
        }
    };

    for (int t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, static_cast<uint64_t>(t)));
        const auto X = slices(av, xs, rng);
        const auto Y = slices(bv, ys, rng);
        max_dev(nbA, Y, nb, st.max_dev_deg_a);
        max_dev(nbB, X, na, st.max_dev_deg_b);
        if (opt.codegree_stats) {
            max_dev(coA, Y, nb, st.max_dev_codeg_a);
            max_dev(coB, X, na, st.max_dev_codeg_b);
        }
        for (const auto& Xi : X)
            for (const auto& Yj : Y) {
                BipartitePair sub(g, Xi, Yj);
                const double dev = std::abs(to_double(density(sub)) - pd);
                ++st.slice_pairs;
                sum_dev += dev;
                st.max_dev_density = std::max(st.max_dev_density, dev);
                if (!gt(dev, opt.density_tol)) ++st.density_within;
                if (kr_sufficient(sub, crit_eps)) ++st.certified;
            }
    }
    if (st.slice_pairs > 0) {
        st.density_rate = static_cast<double>(st.density_within) / st.slice_pairs;
        st.pass_rate = static_cast<double>(st.certified) / st.slice_pairs;
        st.mean_dev_density = sum_dev / st.slice_pairs;
    }
    return st;
}

double chernoff_bound(const Rational& mean, const Rational& a) {
    if (sgn(a) <= 0 || a >= Rational(3, 2)) throw RangeError("chernoff_bound needs 0 < a < 3/2");
    if (sgn(mean) < 0) throw RangeError("chernoff_bound needs a non-negative mean");
    const double x = to_double(a);
    return 2.0 * std::exp(-(x * x / 3.0) * to_double(mean));
}

}  // namespace tritile
