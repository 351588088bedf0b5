#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "tritile/graph.hpp"
#include "tritile/rational.hpp"

namespace tritile {

/// Directed graph without loops; parallel arcs rejected, antiparallel pairs allowed.
class Digraph {
public:
    Digraph() = default;
    Digraph(int n, const std::vector<Edge>& arcs);
    /// Both orientations of every edge of g.
    static Digraph doubled(const Graph& g);

    int n() const { return n_; }
    long arcs() const { return static_cast<long>(arcs_.size()); }
    const std::vector<Edge>& arc_list() const { return arcs_; }  ///< sorted lexicographically
    const VertexSet& out(int v) const { return out_[static_cast<size_t>(v)]; }
    const VertexSet& in(int v) const { return in_[static_cast<size_t>(v)]; }
    bool has_arc(int u, int v) const { return out_[static_cast<size_t>(u)].test(v); }
    int min_in_degree() const;
    Digraph reversed() const;
    Graph underlying() const;

private:
    int n_ = 0;
    std::vector<Edge> arcs_;
    std::vector<VertexSet> out_, in_;
};

struct WeightedFractionalMatching {
    Rational eta, xi;
    std::vector<std::pair<Edge, Rational>> weights;  ///< sorted by arc; zero weights omitted
    std::vector<Rational> load;                      ///< per-vertex load
};

struct FarkasCertificate {
    std::vector<Rational> y;
};

struct WfmSolveResult {
    bool feasible = false;
    WeightedFractionalMatching matching;  ///< valid when feasible
    FarkasCertificate certificate;        ///< valid when infeasible
    Rational phase1_value;                ///< optimal sum of artificials (0 iff feasible)
    long pivots = 0;
};

/// Exact phase-1 simplex with Bland's rule on sum_e w_e chi(e) = 1, w >= 0.
/// Throws PreconditionViolated unless eta, xi > 0.
WfmSolveResult solve_perfect_wfm(const Digraph& gamma, const Rational& eta, const Rational& xi);

struct WfmReport {
    bool feasible = false;  ///< all weights >= 0 and every load <= 1
    bool perfect = false;   ///< every load == 1
    Rational total;         ///< W = sum (eta + xi) w_e
    Integer denominator;    ///< least common denominator of the weights
    int nonzero = 0;
    std::vector<Rational> load;
};

/// Exact recomputation; throws UnknownEdge if w keys a non-arc.
WfmReport verify_wfm(const Digraph& gamma, const WeightedFractionalMatching& w);

/// Hadamard bound on the determinant of an integer-scaled basis, which bounds the common
/// denominator of every basic solution.
Integer hadamard_denominator_bound(int n, const Rational& eta, const Rational& xi);

/// True iff |S| <= xi n or S is not independent in the underlying graph. Throws
/// PreconditionViolated unless w is perfect, eta <= xi and eta + xi = 1.
bool independence_consequence_check(const Digraph& gamma, const WeightedFractionalMatching& w,
                                    const VertexSet& S);

/// eta y_u + xi y_v >= 0 on every arc u->v and sum y < 0.
bool farkas_check(const FarkasCertificate& cert, const Digraph& gamma, const Rational& eta,
                  const Rational& xi);

// Directed edge list: "n m" then m lines "u v" meaning u -> v.
Digraph read_digraph(std::istream& in);
Digraph read_digraph_file(const std::string& path);
void write_digraph(std::ostream& out, const Digraph& d);

}  // namespace tritile
