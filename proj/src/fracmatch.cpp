#include "tritile/fracmatch.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "tritile/errors.hpp"

namespace tritile {

Digraph::Digraph(int n, const std::vector<Edge>& arcs) : n_(n) {
    if (n < 0) throw InvalidGraph("negative vertex count");
    out_.assign(static_cast<size_t>(n), VertexSet(n));
    in_.assign(static_cast<size_t>(n), VertexSet(n));
    for (auto [u, v] : arcs) {
        if (u < 0 || v < 0 || u >= n || v >= n) throw InvalidGraph("arc endpoint out of range");
        if (u == v) throw InvalidGraph("self-loop at " + std::to_string(u));
        if (out_[u].test(v))
            throw InvalidGraph("parallel arc " + std::to_string(u) + "->" + std::to_string(v));
        out_[u].set(v);
        in_[v].set(u);
    }
    arcs_ = arcs;
    std::sort(arcs_.begin(), arcs_.end());
}

Digraph Digraph::doubled(const Graph& g) {
    std::vector<Edge> arcs;
    for (auto [u, v] : g.edge_list()) {
        arcs.emplace_back(u, v);
        arcs.emplace_back(v, u);
    }
    return Digraph(g.n(), arcs);
}

int Digraph::min_in_degree() const {
    if (n_ == 0) throw EmptyGraph("min in-degree of the empty digraph");
    int best = n_;
    for (const auto& s : in_) best = std::min(best, s.count());
    return best;
}

Digraph Digraph::reversed() const {
    std::vector<Edge> arcs;
    arcs.reserve(arcs_.size());
    for (auto [u, v] : arcs_) arcs.emplace_back(v, u);
    return Digraph(n_, arcs);
}

Graph Digraph::underlying() const {
    GraphBuilder b(n_);
    for (auto [u, v] : arcs_) b.add_edge(u, v);
    return std::move(b).build();
}

namespace {

std::vector<Rational> loads_of(const Digraph& g, const Rational& eta, const Rational& xi,
                               const std::vector<std::pair<Edge, Rational>>& w) {
    std::vector<Rational> load(static_cast<size_t>(g.n()));
    for (const auto& [e, x] : w) {
        load[e.first] += eta * x;
        load[e.second] += xi * x;
    }
    return load;
}

}  // namespace

WfmSolveResult solve_perfect_wfm(const Digraph& gamma, const Rational& eta, const Rational& xi) {
    if (sgn(eta) <= 0 || sgn(xi) <= 0) throw PreconditionViolated("eta and xi must be positive");
    const int n = gamma.n();
    const auto& arcs = gamma.arc_list();
    const int m = static_cast<int>(arcs.size());
    const int cols = m + n;  // arc columns, then one artificial per vertex

    // Dense tableau rows T[i], right-hand side b[i], reduced costs rc, basis[i].
    std::vector<std::vector<Rational>> T(static_cast<size_t>(n),
                                         std::vector<Rational>(static_cast<size_t>(cols)));
    std::vector<Rational> b(static_cast<size_t>(n), Rational(1));
    std::vector<Rational> rc(static_cast<size_t>(cols));
    std::vector<int> basis(static_cast<size_t>(n));
    for (int j = 0; j < m; ++j) {
        T[arcs[j].first][j] = eta;
        T[arcs[j].second][j] = xi;
        rc[j] = -(eta + xi);
    }
    for (int i = 0; i < n; ++i) {
        T[i][m + i] = 1;
        basis[i] = m + i;
    }
    Rational negobj = -n;

    WfmSolveResult res;
    for (;;) {
        int e = -1;
        for (int j = 0; j < cols; ++j)
            if (sgn(rc[j]) < 0) {
                e = j;
                break;
            }
        if (e < 0) break;
        int r = -1;
        Rational best;
        for (int i = 0; i < n; ++i) {
            if (sgn(T[i][e]) <= 0) continue;
            Rational ratio = b[i] / T[i][e];
            if (r < 0 || ratio < best || (ratio == best && basis[i] < basis[r])) {
                r = i;
                best = ratio;
            }
        }
        // Phase 1 is bounded below by 0, so an improving column always has a positive entry.
        if (r < 0) throw std::logic_error("phase-1 simplex unbounded");
        ++res.pivots;
        const Rational piv = T[r][e];
        for (auto& x : T[r])
            if (sgn(x) != 0) x /= piv;
        b[r] /= piv;
        for (int i = 0; i < n; ++i) {
            if (i == r || sgn(T[i][e]) == 0) continue;
            const Rational f = T[i][e];
            for (int j = 0; j < cols; ++j)
                if (sgn(T[r][j]) != 0) T[i][j] -= f * T[r][j];
            b[i] -= f * b[r];
        }
        if (sgn(rc[e]) != 0) {
            const Rational f = rc[e];
            for (int j = 0; j < cols; ++j)
                if (sgn(T[r][j]) != 0) rc[j] -= f * T[r][j];
            negobj -= f * b[r];
        }
        basis[r] = e;
    }

    res.phase1_value = -negobj;
    res.matching.eta = eta;
    res.matching.xi = xi;
    if (sgn(res.phase1_value) == 0) {
        res.feasible = true;
        for (int i = 0; i < n; ++i)
            if (basis[i] < m && sgn(b[i]) != 0) res.matching.weights.emplace_back(arcs[basis[i]], b[i]);
        std::sort(res.matching.weights.begin(), res.matching.weights.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        res.matching.load = loads_of(gamma, eta, xi, res.matching.weights);
    } else {
        // Dual of the final basis: pi_i = c_i - rc_i for the artificial column of vertex i.
        res.certificate.y.resize(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) res.certificate.y[i] = -(1 - rc[m + i]);
        if (!farkas_check(res.certificate, gamma, eta, xi))
            throw std::logic_error("extracted Farkas certificate does not verify");
    }
    return res;
}

WfmReport verify_wfm(const Digraph& gamma, const WeightedFractionalMatching& w) {
    WfmReport r;
    r.feasible = true;
    r.denominator = 1;
    for (const auto& [e, x] : w.weights) {
        if (e.first < 0 || e.second < 0 || e.first >= gamma.n() || e.second >= gamma.n() ||
            !gamma.has_arc(e.first, e.second))
            throw UnknownEdge("weight on non-arc " + std::to_string(e.first) + "->" +
                              std::to_string(e.second));
        if (sgn(x) < 0) r.feasible = false;
        if (sgn(x) != 0) ++r.nonzero;
        r.total += (w.eta + w.xi) * x;
        mpz_lcm(r.denominator.get_mpz_t(), r.denominator.get_mpz_t(), x.get_den_mpz_t());
    }
    r.load = loads_of(gamma, w.eta, w.xi, w.weights);
    r.perfect = true;
    for (const auto& l : r.load) {
        if (l > 1) r.feasible = false;
        if (l != 1) r.perfect = false;
    }
    r.perfect = r.perfect && r.feasible;
    return r;
}

Integer hadamard_denominator_bound(int n, const Rational& eta, const Rational& xi) {
    Integer L;
    mpz_lcm(L.get_mpz_t(), eta.get_den_mpz_t(), xi.get_den_mpz_t());
    const Rational a = eta * L, c = xi * L;
    Integer col2 = a.get_num() * a.get_num() + c.get_num() * c.get_num();
    const Integer l2 = L * L;
    if (l2 > col2) col2 = l2;
    Integer p, out;
    mpz_pow_ui(p.get_mpz_t(), col2.get_mpz_t(), static_cast<unsigned long>(n));
    mpz_sqrt(out.get_mpz_t(), p.get_mpz_t());
    return out;
}

bool independence_consequence_check(const Digraph& gamma, const WeightedFractionalMatching& w,
                                    const VertexSet& S) {
    if (w.eta > w.xi || w.eta + w.xi != 1)
        throw PreconditionViolated("requires eta <= xi and eta + xi = 1");
    if (!verify_wfm(gamma, w).perfect) throw PreconditionViolated("matching is not perfect");
    const Graph u = gamma.underlying();
    if (!is_independent(u, S)) return true;
    // Each arc puts at most max(eta, xi) w_e = xi w_e of load on S, and sum w_e = n.
    return Rational(S.count()) <= w.xi * gamma.n();
}

bool farkas_check(const FarkasCertificate& cert, const Digraph& gamma, const Rational& eta,
                  const Rational& xi) {
    if (static_cast<int>(cert.y.size()) != gamma.n()) return false;
    Rational sum;
    for (const auto& y : cert.y) sum += y;
    if (sgn(sum) >= 0) return false;
    for (auto [u, v] : gamma.arc_list())
        if (sgn(eta * cert.y[u] + xi * cert.y[v]) < 0) return false;
    return true;
}

Digraph read_digraph(std::istream& in) {
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
    std::vector<Edge> arcs;
    std::vector<VertexSet> seen(static_cast<size_t>(n), VertexSet(static_cast<int>(n)));
    for (long i = 0; i < m; ++i) {
        if (!next_line(line))
            throw ParseError(lineno, "expected " + std::to_string(m) + " arcs, found " +
                                         std::to_string(i));
        std::istringstream ls(line);
        long u, v;
        std::string extra;
        if (!(ls >> u >> v) || (ls >> extra)) throw ParseError(lineno, "malformed arc line");
        if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError(lineno, "vertex out of range");
        if (u == v) throw ParseError(lineno, "loop " + std::to_string(u));
        if (seen[u].test(static_cast<int>(v)))
            throw ParseError(lineno, "duplicate arc " + std::to_string(u) + " " + std::to_string(v));
        seen[u].set(static_cast<int>(v));
        arcs.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    if (next_line(line)) throw ParseError(lineno, "trailing content after the arc list");
    return Digraph(static_cast<int>(n), arcs);
}

Digraph read_digraph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open " + path);
    return read_digraph(in);
}

void write_digraph(std::ostream& out, const Digraph& d) {
    out << d.n() << ' ' << d.arcs() << '\n';
    for (auto [u, v] : d.arc_list()) out << u << ' ' << v << '\n';
}

}  // namespace tritile
