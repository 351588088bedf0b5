#include "tritile/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tritile/barriers.hpp"
#include "tritile/errors.hpp"
#include "tritile/rng.hpp"
#include "tritile/tiling.hpp"

namespace tritile {

Rational f_rt(int r) {
    if (r < 3) throw RangeError("f_rt needs r >= 3");
    Rational f = r % 2 ? Rational(r - 3, r - 1) : Rational(3 * r - 10, 3 * r - 4);
    f.canonicalize();
    return f;
}

void ConstructionReport::claim(std::string name, std::string expected, std::string measured,
                               bool holds, bool empirical) {
    claims.push_back({std::move(name), std::move(expected), std::move(measured), holds, empirical});
}

bool ConstructionReport::ok() const {
    return std::all_of(claims.begin(), claims.end(), [](const Claim& c) { return c.empirical || c.holds; });
}

bool ConstructionReport::gates_ok() const {
    return std::all_of(claims.begin(), claims.end(), [](const Claim& c) { return c.holds; });
}

namespace {

std::string str(long x) { return std::to_string(x); }
std::string str(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

VertexSet range_set(int n, int lo, int hi) {
    VertexSet s(n);
    for (int v = lo; v < hi; ++v) s.set(v);
    return s;
}

/// Consecutive blocks of the given sizes.
std::vector<VertexSet> blocks(int n, const std::vector<int>& sizes) {
    std::vector<VertexSet> out;
    int at = 0;
    for (int s : sizes) {
        out.push_back(range_set(n, at, at + s));
        at += s;
    }
    return out;
}

std::vector<int> equitable(int n, int parts) {
    std::vector<int> s(static_cast<size_t>(parts), n / parts);
    for (int i = 0; i < n % parts; ++i) ++s[i];
    return s;
}

/// Complete multipartite graph on the blocks with h[i] placed inside block i.
Graph assemble(int n, const std::vector<VertexSet>& parts, const std::vector<Graph>& inside) {
    GraphBuilder b(n);
    for (size_t i = 0; i < parts.size(); ++i) {
        b.add_graph(inside[i], parts[i].to_vector());
        for (size_t j = i + 1; j < parts.size(); ++j) b.add_complete_bipartite(parts[i], parts[j]);
    }
    return std::move(b).build();
}

int clique_number(const Graph& g) {
    int w = g.n() > 0 ? 1 : 0;
    while (w < g.n() && has_clique(g, w + 1)) ++w;
    return w;
}

void measure_basics(ConstructionReport& r, const MeasureOptions& opt) {
    const Graph& g = r.graph;
    r.min_degree = g.n() > 0 ? min_degree(g) : 0;
    r.alpha = independence_number(g, Budget::millis(opt.alpha_budget_ms));
    if (g.n() <= opt.deficit_max_n) {
        const auto res = max_tiling_exact(g, Budget::millis(opt.deficit_budget_ms));
        if (res.optimal) r.deficit = g.n() - 3 * res.tiling.size();
    }
}

/// K_r-freeness: proved through the part decomposition when the clique numbers of the parts
/// sum to less than r, else by direct clique search up to the size cap.
void measure_clique_free(ConstructionReport& r, int k, const MeasureOptions& opt) {
    std::optional<bool> verdict;
    if (!r.parts.empty()) {
        int sum = 0;
        for (const auto& p : r.parts) sum += clique_number(r.graph.induced(p));
        if (sum < k) verdict = true;
    }
    if (!verdict && r.graph.n() <= opt.clique_check_max_n) verdict = !has_clique(r.graph, k);
    if (verdict) r.clique_free[k] = *verdict;
    r.claim("K" + str(static_cast<long>(k)) + "-free", "true",
            verdict ? (*verdict ? "true" : "false") : "unchecked", verdict.value_or(false),
            !verdict.has_value());
}

void claim_deficit_at_least(ConstructionReport& r, int lower) {
    if (r.deficit)
        r.claim("max tiling deficit", ">= " + str(static_cast<long>(lower)), str(static_cast<long>(*r.deficit)),
                *r.deficit >= lower);
}

std::vector<double> random_unit(Rng& rng, int dim) {
    std::vector<double> x(static_cast<size_t>(dim));
    double s = 0;
    do {
        s = 0;
        for (auto& c : x) {
            c = rng.normal();
            s += c * c;
        }
    } while (s == 0);
    for (auto& c : x) c /= std::sqrt(s);
    return x;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

Graph er_graph(int n, uint64_t seed) {
    GraphBuilder b(n);
    std::vector<Edge> pairs;
    pairs.reserve(static_cast<size_t>(n) * (n > 0 ? n - 1 : 0) / 2);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    Rng rng(seed);
    rng.shuffle(pairs);
    // One pass suffices: a pair rejected once stays rejected as edges are only added.
    for (auto [u, v] : pairs)
        if (!b.adj(u).intersects(b.adj(v))) b.add_edge(u, v);
    return std::move(b).build();
}

ConstructionReport gen_g1(int m, const MeasureOptions& opt) {
    if (m < 1) throw PreconditionViolated("G1 needs m >= 1");
    ConstructionReport r;
    r.kind = "G1";
    r.params["m"] = str(static_cast<long>(m));
    const int n = 3 * m;
    r.parts = blocks(n, {m - 1, m, m + 1});
    r.graph = assemble(n, r.parts, {Graph::empty(m - 1), Graph::empty(m), Graph::empty(m + 1)});
    measure_basics(r, opt);
    r.claim("n", str(3L * m), str(static_cast<long>(n)), n == 3 * m);
    r.claim("min degree", ">= " + str(2L * m - 1), str(static_cast<long>(r.min_degree)),
            r.min_degree >= 2 * m - 1);
    const auto sb = check_space_barrier(r.graph, r.parts[1] | r.parts[2]);
    r.claim("two largest classes form a space barrier", "true", sb.is_barrier ? "true" : "false",
            sb.is_barrier);
    claim_deficit_at_least(r, 3);
    return r;
}

ConstructionReport gen_g2(int m, const MeasureOptions& opt) {
    if (m < 1) throw PreconditionViolated("G2 needs m >= 1");
    ConstructionReport r;
    r.kind = "G2";
    r.params["m"] = str(static_cast<long>(m));
    const int c = 3 * m + 2, n = 2 * c - 1;
    GraphBuilder b(n);
    const VertexSet first = range_set(n, 0, c), second = range_set(n, c - 1, n);
    b.add_graph(Graph::complete(c), first.to_vector());
    b.add_graph(Graph::complete(c), second.to_vector());
    r.graph = std::move(b).build();
    // The barrier (A, B): B is one copy, A the rest.
    r.parts = {first - second, second};
    measure_basics(r, opt);
    r.claim("n", str(6L * m + 3), str(static_cast<long>(n)), n == 6 * m + 3);
    r.claim("min degree", str(3L * m + 1) + " = floor(n/2)", str(static_cast<long>(r.min_degree)),
            r.min_degree == 3 * m + 1 && r.min_degree == n / 2);
    r.claim("independence number", "2",
            r.alpha.exact ? str(static_cast<long>(r.alpha.lower)) : "unresolved",
            r.alpha.lower == 2 && r.alpha.upper == 2);
    const auto db = check_divisibility_barrier(r.graph, r.parts[0], r.parts[1]);
    r.claim("divisibility barrier", "true", db.is_barrier ? "true" : "false", db.is_barrier);
    claim_deficit_at_least(r, 3);
    return r;
}

ConstructionReport gen_g3(int m, const MeasureOptions& opt) {
    if (m < 1) throw PreconditionViolated("G3 needs m >= 1");
    ConstructionReport r;
    r.kind = "G3";
    r.params["m"] = str(static_cast<long>(m));
    const int c = 3 * m + 2, n = 2 * c;
    r.parts = blocks(n, {c, c});
    GraphBuilder b(n);
    for (const auto& p : r.parts) b.add_graph(Graph::complete(c), p.to_vector());
    r.graph = std::move(b).build();
    measure_basics(r, opt);
    r.claim("n", str(6L * m + 4), str(static_cast<long>(n)), n == 6 * m + 4);
    r.claim("min degree", str(3L * m + 1) + " = n/2 - 1", str(static_cast<long>(r.min_degree)),
            r.min_degree == 3 * m + 1 && r.min_degree == n / 2 - 1);
    r.claim("independence number", "2",
            r.alpha.exact ? str(static_cast<long>(r.alpha.lower)) : "unresolved",
            r.alpha.lower == 2 && r.alpha.upper == 2);
    claim_deficit_at_least(r, 4);
    return r;
}

ConstructionReport gen_er(int n, uint64_t seed, int target_min_degree, const MeasureOptions& opt) {
    if (n < 3) throw PreconditionViolated("ER needs n >= 3");
    ConstructionReport r;
    r.kind = "ER";
    r.params["n"] = str(static_cast<long>(n));
    r.params["seed"] = std::to_string(seed);
    r.graph = er_graph(n, seed);
    r.parts = {r.graph.all()};
    measure_basics(r, opt);
    const bool tf = enumerate_triangles(r.graph).empty();
    r.clique_free[3] = tf;
    r.claim("triangle-free", "true", tf ? "true" : "false", tf);
    if (target_min_degree > 0)
        r.claim("min degree", ">= " + str(static_cast<long>(target_min_degree)),
                str(static_cast<long>(r.min_degree)), r.min_degree >= target_min_degree, true);
    return r;
}

Graph be_graph(int n, uint64_t seed, const BeParams& be, VertexSet* v1, VertexSet* v2) {
    if (n < 2) throw PreconditionViolated("BE needs n >= 2");
    const int h1 = (n + 1) / 2;
    const VertexSet V1 = range_set(n, 0, h1), V2 = range_set(n, h1, n);
    constexpr int kGroup = 4;     // points per antipodal group: two near +a, two near -a
    constexpr double kNoise = 0.02;
    for (int attempt = 0; attempt < be.retries; ++attempt) {
        Rng rng(derive_seed(seed, static_cast<uint64_t>(attempt)));
        std::vector<std::vector<double>> pts;
        auto fill_half = [&](int size) {
            std::vector<double> anchor;
            for (int i = 0; i < size; ++i) {
                if (i % kGroup == 0) anchor = random_unit(rng, be.dim);
                const double sign = (i % kGroup) < kGroup / 2 ? 1.0 : -1.0;
                std::vector<double> x(anchor.size());
                double s = 0;
                for (size_t c = 0; c < x.size(); ++c) {
                    x[c] = sign * anchor[c] + kNoise * rng.normal();
                    s += x[c] * x[c];
                }
                for (auto& c : x) c /= std::sqrt(s);
                pts.push_back(std::move(x));
            }
        };
        fill_half(h1);
        fill_half(n - h1);
        GraphBuilder b(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) {
                const bool same = (u < h1) == (v < h1);
                const double ip = dot(pts[u], pts[v]);
                if (same ? ip <= -be.within : ip >= be.cross) b.add_edge(u, v);
            }
        Graph g = std::move(b).build();
        bool ok = triangle_free(g, V1) && triangle_free(g, V2);
        if (ok && n <= 400) ok = !has_clique(g, 4);
        const double floor_deg = (0.25 - be.degree_tol) * n;
        for (int v = 0; ok && v < n; ++v)
            ok = g.adj(v).intersect_count(v < h1 ? V2 : V1) >= floor_deg;
        if (ok) {
            if (v1) *v1 = V1;
            if (v2) *v2 = V2;
            return g;
        }
    }
    throw ThresholdInfeasible("BE verification failed after " + std::to_string(be.retries) +
                              " attempts");
}

ConstructionReport gen_be(int n, uint64_t seed, const BeParams& be, const MeasureOptions& opt) {
    if (n < 8 || n % 2) throw PreconditionViolated("BE needs even n >= 8");
    ConstructionReport r;
    r.kind = "BE";
    r.params["n"] = str(static_cast<long>(n));
    r.params["dim"] = str(static_cast<long>(be.dim));
    r.params["within"] = str(be.within);
    r.params["cross"] = str(be.cross);
    r.params["seed"] = std::to_string(seed);
    VertexSet V1, V2;
    r.graph = be_graph(n, seed, be, &V1, &V2);
    r.parts = {V1, V2};
    measure_basics(r, opt);
    const bool tf = triangle_free(r.graph, V1) && triangle_free(r.graph, V2);
    r.claim("halves triangle-free", "true", tf ? "true" : "false", tf);
    measure_clique_free(r, 4, opt);
    int cross = n;
    for (int v = 0; v < n; ++v) cross = std::min(cross, r.graph.adj(v).intersect_count(V1.test(v) ? V2 : V1));
    r.claim("cross min degree", ">= (1/4 - " + str(be.degree_tol) + ") n", str(static_cast<long>(cross)),
            cross >= (0.25 - be.degree_tol) * n, true);
    return r;
}

namespace {

/// Builds G_RT(n, r) and its vertex classes.
Graph rt_graph(int n, int r, uint64_t seed, std::vector<VertexSet>* classes) {
    if (r < 3) throw RangeError("G_RT needs r >= 3");
    std::vector<int> sizes;
    std::vector<Graph> inside;
    if (r % 2) {
        const int l = (r - 1) / 2;
        sizes = equitable(n, l);
        for (int s : sizes)
            if (s < 3) throw PartTooSmall("G_RT part of size " + std::to_string(s) + " is below 3");
        for (size_t i = 0; i < sizes.size(); ++i) inside.push_back(er_graph(sizes[i], derive_seed(seed, i)));
    } else {
        const int l = r / 2;
        const auto u = equitable(n, 3 * l - 2);
        sizes.push_back(u[0] + u[1] + u[2] + u[3]);
        for (int i = 2; i <= l - 1; ++i) sizes.push_back(u[3 * i - 2] + u[3 * i - 1] + u[3 * i]);
        if (sizes[0] < 8) throw PartTooSmall("G_RT BE part is below 8 vertices");
        for (size_t i = 1; i < sizes.size(); ++i)
            if (sizes[i] < 3) throw PartTooSmall("G_RT ER part is below 3 vertices");
        inside.push_back(be_graph(sizes[0], derive_seed(seed, 0), BeParams{}));
        for (size_t i = 1; i < sizes.size(); ++i) inside.push_back(er_graph(sizes[i], derive_seed(seed, i)));
    }
    *classes = blocks(n, sizes);
    return assemble(n, *classes, inside);
}

void claim_rt(ConstructionReport& r, int rr, double omega, double gamma, const Rational& fr,
              const MeasureOptions& opt) {
    const int n = r.graph.n();
    measure_clique_free(r, rr, opt);
    const double want = (to_double(fr) - omega) * n;
    r.claim("min degree", ">= " + str(want), str(static_cast<long>(r.min_degree)), r.min_degree >= want, true);
    r.claim("independence number", "<= " + str(gamma * n),
            "[" + str(static_cast<long>(r.alpha.lower)) + ", " + str(static_cast<long>(r.alpha.upper)) + "]",
            r.alpha.upper <= gamma * n, true);
}

}  // namespace

ConstructionReport gen_rt(int n, int r_, double omega, double gamma, uint64_t seed,
                          const MeasureOptions& opt) {
    ConstructionReport r;
    r.kind = r_ % 2 ? "RT_odd" : "RT_even";
    r.params["n"] = str(static_cast<long>(n));
    r.params["r"] = str(static_cast<long>(r_));
    r.params["omega"] = str(omega);
    r.params["gamma"] = str(gamma);
    r.params["seed"] = std::to_string(seed);
    r.graph = rt_graph(n, r_, seed, &r.parts);
    measure_basics(r, opt);
    if (r_ % 2) {
        int lo = n, hi = 0;
        for (const auto& p : r.parts) {
            lo = std::min(lo, p.count());
            hi = std::max(hi, p.count());
        }
        r.claim("equitable partition", "max - min <= 1", str(static_cast<long>(hi - lo)), hi - lo <= 1);
    }
    claim_rt(r, r_, omega, gamma, f_rt(r_), opt);
    return r;
}

ConstructionReport gen_g4(int n, int r_, double omega, double gamma, uint64_t seed,
                          const MeasureOptions& opt) {
    if (n % 6 || n < 12) throw PreconditionViolated("G4 needs n divisible by 6 and n >= 12");
    ConstructionReport r;
    r.kind = "G4";
    r.params["n"] = str(static_cast<long>(n));
    r.params["r"] = str(static_cast<long>(r_));
    r.params["omega"] = str(omega);
    r.params["gamma"] = str(gamma);
    r.params["seed"] = std::to_string(seed);
    std::vector<VertexSet> c1, c2;
    const int n1 = n / 2 - 1, n2 = n / 2 + 1;
    const Graph g1 = rt_graph(n1, r_, derive_seed(seed, 1), &c1);
    const Graph g2 = rt_graph(n2, r_, derive_seed(seed, 2), &c2);
    GraphBuilder b(n);
    std::vector<int> m1(static_cast<size_t>(n1)), m2(static_cast<size_t>(n2));
    for (int i = 0; i < n1; ++i) m1[i] = i;
    for (int i = 0; i < n2; ++i) m2[i] = n1 + i;
    b.add_graph(g1, m1);
    b.add_graph(g2, m2);
    r.graph = std::move(b).build();
    // |B| = n/2 - 1 = 2 and |A| = n/2 + 1 = 1 (mod 3).
    const VertexSet B = range_set(n, 0, n1), A = range_set(n, n1, n);
    r.parts = {A, B};
    measure_basics(r, opt);
    const auto db = check_divisibility_barrier(r.graph, A, B);
    r.claim("divisibility barrier", "true", db.is_barrier ? "true" : "false", db.is_barrier);
    Rational half = f_rt(r_) / 2;
    claim_rt(r, r_, omega, gamma, half, opt);
    claim_deficit_at_least(r, 3);
    return r;
}

ConstructionReport gen_space_barrier_k5free(int n, uint64_t seed, const MeasureOptions& opt) {
    if (n % 3 || n < 6) throw PreconditionViolated("space barrier construction needs 3 | n and n >= 6");
    ConstructionReport r;
    r.kind = "space_barrier_K5free";
    r.params["n"] = str(static_cast<long>(n));
    r.params["seed"] = std::to_string(seed);
    const int u = 2 * n / 3 + 1, v = n / 3 - 1;
    r.parts = blocks(n, {u, v});
    r.graph = assemble(n, r.parts, {er_graph(u, derive_seed(seed, 0)), er_graph(v, derive_seed(seed, 1))});
    measure_basics(r, opt);
    measure_clique_free(r, 5, opt);
    r.claim("min degree", ">= n/3", str(static_cast<long>(r.min_degree)), 3 * r.min_degree >= n);
    const auto sb = check_space_barrier(r.graph, r.parts[0]);
    r.claim("U is a space barrier with slack 1", "slack3 = 3",
            sb.is_barrier ? str(sb.slack3) : "not a barrier", sb.is_barrier && sb.slack3 == 3);
    claim_deficit_at_least(r, 3);
    return r;
}

ConstructionReport gen_kfree_question(int n, int k, uint64_t seed, KFreeVariant variant,
                                      const MeasureOptions& opt) {
    ConstructionReport r;
    r.params["n"] = str(static_cast<long>(n));
    r.params["k"] = str(static_cast<long>(k));
    r.params["seed"] = std::to_string(seed);
    switch (variant) {
        case KFreeVariant::KkTiling: {
            r.kind = "kfree_question/Kk_tiling";
            if (k < 4 || n % k) throw PreconditionViolated("K_k-tiling construction needs k >= 4 and k | n");
            const int unit = 2 * n / k;
            std::vector<int> sizes;
            int l;
            if (k % 2) {
                l = (k + 1) / 2;
                sizes = {n / k - 1, unit + 1};
            } else {
                l = k / 2;
                sizes = {unit + 1, unit - 1};
            }
            while (static_cast<int>(sizes.size()) < l) sizes.push_back(unit);
            for (int s : sizes)
                if (s < 1) throw PartTooSmall("part of size " + std::to_string(s));
            r.parts = blocks(n, sizes);
            std::vector<Graph> inside;
            for (size_t i = 0; i < sizes.size(); ++i) inside.push_back(er_graph(sizes[i], derive_seed(seed, i)));
            r.graph = assemble(n, r.parts, inside);
            measure_basics(r, opt);
            measure_clique_free(r, k % 2 ? k + 2 : k + 1, opt);
            r.claim("min degree", ">= (1 - 2/k) n", str(static_cast<long>(r.min_degree)),
                    static_cast<long>(k) * r.min_degree >= static_cast<long>(k - 2) * n);
            break;
        }
        case KFreeVariant::K4Free: {
            r.kind = "kfree_question/K4_free";
            if (n % 3 || n < 6) throw PreconditionViolated("K4-free construction needs 3 | n and n >= 6");
            const int big = 4 * n / 3 + 2;
            VertexSet V1, V2;
            const Graph be = be_graph(big, derive_seed(seed, 0), BeParams{}, &V1, &V2);
            Rng rng(derive_seed(seed, 1));
            const auto drop = rng.sample(V2.to_vector(), static_cast<size_t>(n / 3 + 2));
            VertexSet keep = be.all();
            for (int v : drop) keep.reset(v);
            std::vector<int> map;
            r.graph = be.induced(keep, &map);
            VertexSet P1(n), P2(n);
            for (int i = 0; i < n; ++i) (V1.test(map[i]) ? P1 : P2).set(i);
            r.parts = {P1, P2};
            measure_basics(r, opt);
            measure_clique_free(r, 4, opt);
            const auto sb = check_space_barrier(r.graph, P1);
            r.claim("larger part is a space barrier", "true", sb.is_barrier ? "true" : "false",
                    sb.is_barrier && P1.count() == 2 * n / 3 + 1 && P2.count() == n / 3 - 1);
            r.claim("min degree", ">= (1/6 - 0.05) n", str(static_cast<long>(r.min_degree)),
                    r.min_degree >= (1.0 / 6 - 0.05) * n, true);
            claim_deficit_at_least(r, 3);
            break;
        }
        case KFreeVariant::KkPlus1Free: {
            r.kind = "kfree_question/Kk+1_free";
            if (k < 5 || k % 2 == 0 || n % k)
                throw PreconditionViolated("K_{k+1}-free construction needs odd k >= 5 and k | n");
            const int l = (k - 1) / 2, unit = 2 * n / k;
            std::vector<int> sizes = {3 * n / k + 1, unit - 1};
            while (static_cast<int>(sizes.size()) < l) sizes.push_back(unit);
            if (sizes[0] < 2 || sizes[1] < 1) throw PartTooSmall("parts too small for k = " + std::to_string(k));
            r.parts = blocks(n, sizes);
            std::vector<Graph> inside = {be_graph(sizes[0], derive_seed(seed, 0), BeParams{})};
            for (size_t i = 1; i < sizes.size(); ++i) inside.push_back(er_graph(sizes[i], derive_seed(seed, i)));
            r.graph = assemble(n, r.parts, inside);
            measure_basics(r, opt);
            measure_clique_free(r, k + 1, opt);
            const double want = ((4.0 * k - 9) / (4.0 * k) - 0.05) * n;
            r.claim("min degree", ">= ((4k - 9)/(4k) - 0.05) n", str(static_cast<long>(r.min_degree)),
                    r.min_degree >= want, true);
            break;
        }
    }
    return r;
}

Graph random_graph(int n, double p, uint64_t seed) {
    if (n < 0) throw PreconditionViolated("negative order");
    if (!(p >= 0 && p <= 1)) throw RangeError("edge probability must lie in [0, 1]");
    Rng rng(seed);
    GraphBuilder b(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) b.add_edge(u, v);
    return std::move(b).build();
}

ConstructionReport gen_planted_clusters(int n, double p_in, double p_cross, uint64_t seed,
                                        const MeasureOptions& opt) {
    if (n < 3) throw PreconditionViolated("planted clusters need n >= 3");
    ConstructionReport r;
    r.kind = "planted_clusters";
    r.params["n"] = str(static_cast<long>(n));
    r.params["p_in"] = str(p_in);
    r.params["p_cross"] = str(p_cross);
    r.params["seed"] = std::to_string(seed);
    r.parts = blocks(n, equitable(n, 3));
    std::vector<int> part(static_cast<size_t>(n));
    for (int i = 0; i < 3; ++i) r.parts[i].for_each([&](int v) { part[v] = i; });
    Rng rng(seed);
    GraphBuilder b(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.bernoulli(part[u] == part[v] ? p_in : p_cross)) b.add_edge(u, v);
    r.graph = std::move(b).build();
    measure_basics(r, opt);
    return r;
}

}  // namespace tritile
