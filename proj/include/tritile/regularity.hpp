#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tritile/graph.hpp"
#include "tritile/rational.hpp"

namespace tritile {

/// Tolerance used for every comparison against a floating threshold.
inline constexpr double kThresholdTol = 1e-12;

/// Bipartite view G[A, B] of a host graph. Holds a pointer; the host must outlive it.
class BipartitePair {
public:
    /// Throws PreconditionViolated if A and B intersect or either is empty.
    BipartitePair(const Graph& host, VertexSet A, VertexSet B);
    const Graph& host() const { return *host_; }
    const VertexSet& A() const { return A_; }
    const VertexSet& B() const { return B_; }
    long edges() const { return edges_within_pair(A_, B_); }
    long edges_within_pair(const VertexSet& X, const VertexSet& Y) const;

private:
    const Graph* host_;
    VertexSet A_, B_;
};

enum class RegKind { Regular, GeqRegular, SuperRegular };
enum class RegMethod { Exhaustive, CodegreeSufficient, CodegreeNecessaryFailed, Sampled };
std::string to_string(RegKind k);
std::string to_string(RegMethod m);

struct RegularityCertificate {
    Rational d;           ///< the density the claim is about
    double eps = 0;       ///< the epsilon the verdict holds at (inflated for codegree methods)
    double eps_input = 0; ///< the epsilon supplied by the caller
    RegKind kind = RegKind::Regular;
    RegMethod method = RegMethod::Exhaustive;
    bool holds = false;
    bool conclusive = true;  ///< false when a one-sided criterion simply did not fire
    std::optional<std::pair<VertexSet, VertexSet>> witness;
    std::optional<long> codegree_edges;
    std::optional<Rational> min_density, max_density;  ///< exhaustive only
    std::string note;
};

/// e(A, B) / (|A||B|).
Rational density(const BipartitePair& p);
/// Same value through the average degree of A into B.
Rational density_by_degrees(const BipartitePair& p);
Rational density(const BipartitePair& p, const VertexSet& X, const VertexSet& Y);

inline constexpr int kExhaustiveCap = 16;

/// Enumerates every X subset of A with |X| >= eps|A|; for each size of Y the extreme edge
/// counts are attained by the Y-vertices of smallest or largest degree into X, so every
/// qualifying (X, Y) is covered. kind is Regular or GeqRegular. Throws TooLarge above the cap.
RegularityCertificate check_regular_exhaustive(const BipartitePair& p, const Rational& d, double eps,
                                               RegKind kind = RegKind::Regular);

struct CodegreeGraph {
    std::vector<int> a_vertices;  ///< index i of D is host vertex a_vertices[i]
    std::vector<VertexSet> adj;   ///< over indices 0..|A|-1, no loops
    long edges = 0;               ///< unordered pairs of distinct vertices
    int loops = 0;                ///< vertices that satisfy the condition with themselves
    Rational d;
    double eps = 0;
    /// Ordered pairs (x, x') in A x A, including x = x', satisfying the condition.
    long ordered_pairs() const { return 2 * edges + loops; }
};

CodegreeGraph codegree_graph(const BipartitePair& p, double eps);

/// Throws PreconditionViolated unless 0 < eps < 1 and |A| >= 2/eps. Uses the count of unordered
/// distinct pairs, which is the smaller of the two readings of e(D).
std::optional<RegularityCertificate> kr_sufficient(const BipartitePair& p, double eps);

/// Codegree consequence of (d(A,B), eps)-regularity, counting ordered pairs of A x A. Throws
/// PreconditionViolated unless 0 < eps < 1 and |B| d(A,B) >= 1. d is recorded for the caller.
bool kr_necessary_check(const BipartitePair& p, const Rational& d, double eps);

enum class SuperMethod { Exhaustive, Codegree };

/// (>= d, eps)-regularity by the chosen method plus exact minimum-degree floors both ways.
/// The codegree method works at the inflated epsilon of its certificate.
RegularityCertificate check_super_regular(const BipartitePair& p, const Rational& d, double eps,
                                          SuperMethod method = SuperMethod::Exhaustive);

/// Drops vertices of A below (d - eps)|B| and vertices of B below (d - eps)|A| neighbours.
std::pair<VertexSet, VertexSet> trim_low_degree(const BipartitePair& p, const Rational& d, double eps);

struct SlicingOptions {
    double eps = 0.05;         ///< regularity parameter of the parent pair
    double beta = 0.1;         ///< minimum slice size as a fraction of max(|A|, |B|)
    double density_tol = 0.05;
    bool codegree_stats = true;
};

struct SlicingStats {
    int trials = 0;
    long slice_pairs = 0;
    long density_within = 0;
    long certified = 0;
    double density_rate = 0, pass_rate = 0;
    double eps_prime = 0;  ///< (33 eps)^(1/5)
    Rational parent_density;
    // Largest observed deviations: slice degree in A and B, slice codegree in A and B, density.
    double max_dev_deg_a = 0, max_dev_deg_b = 0, max_dev_codeg_a = 0, max_dev_codeg_b = 0;
    double max_dev_density = 0, mean_dev_density = 0;
};

/// Disjoint uniform random slices per trial (seed of trial t is derive_seed(seed, t)); every
/// cross pair is certified by kr_sufficient at 2 eps. Throws SizeBudget when the sizes do not
/// fit, are below beta max(|A|, |B|), or are too small for the criterion.
SlicingStats random_slicing_experiment(const BipartitePair& p, const std::vector<int>& xs,
                                       const std::vector<int>& ys, uint64_t seed, int trials,
                                       const SlicingOptions& opt = {});

/// 2 exp(-(a^2/3) mean). Throws RangeError unless 0 < a < 3/2 and mean >= 0.
double chernoff_bound(const Rational& mean, const Rational& a);

}  // namespace tritile
