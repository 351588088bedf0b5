#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tritile/fracmatch.hpp"
#include "tritile/graph.hpp"
#include "tritile/regularity.hpp"
#include "tritile/tiling.hpp"

namespace tritile {

struct PipelineConfig {
    double eps = 0.01;
    double d = 0.03;
    double omega = 0.05;
    double cert_eps = 0.1;  ///< epsilon handed to the codegree criterion when certifying pairs
    double psi = -1;      ///< sparse-cut threshold factor; negative means omega^2/40
    double gamma = 0.1;
    int t = 3, T = 12;    ///< cluster-count bounds
    std::optional<Rational> eta;  ///< defaults to 1/3 + omega/10
    TilerParams tiler;
    uint64_t seed = 0;
    long budget_ms = 120000;         ///< whole run
    long exact_budget_ms = 20000;    ///< per exact-solver call on small instances
    long denominator_cap = 1000000;  ///< D
    int exact_below = 60;            ///< recursion and core finish use the exact solver below this
    bool repair = true;              ///< final local exact re-optimisation
    bool strict = false;             ///< throw CoreUnsolved instead of leaving it to repair

    double psi_value() const { return psi >= 0 ? psi : omega * omega / 40; }
    Rational eta_value() const;
    /// Throws PreconditionViolated unless 0 < eps < d < omega < 1, 0 < cert_eps < 1 and
    /// 1 <= t <= T.
    void validate() const;
};

struct PairCertificate {
    int i = 0, j = 0;
    Rational density;
    std::optional<RegularityCertificate> cert;
};

struct ReducedDecomposition {
    VertexSet exceptional;
    std::vector<VertexSet> clusters;
    Graph R;
    std::vector<PairCertificate> pairs;  ///< every cluster pair, certified or not
    int k = 0;
    int delta_R = 0;
    double delta_target = 0;             ///< (1/3 + omega/2) k
    bool gate_ok = false;                ///< R connected and delta_R >= delta_target
    std::vector<int> core;               ///< cluster indices forming the core (1, 2 or 3)
    std::string core_kind;               ///< "dense_pair", "triangle" or "single"
};

/// A unit of the proof: a set split into two labelled sides that form a certified pair.
struct Unit {
    VertexSet X, Y;
    int cluster_x = -1, cluster_y = -1;
    Rational weight;
    std::optional<RegularityCertificate> cert;
};

struct SlicedDecomposition {
    ReducedDecomposition base;
    WeightedFractionalMatching matching;
    Integer denominator;
    std::vector<Unit> units;   ///< the core is not a unit
    VertexSet leftover;        ///< rounding leftovers, treated as exceptional
    bool size_identity_holds = false;
};

struct SparseCut {
    VertexSet A, B;
    long crossing = 0;
    double threshold = 0;
    int delta_A = 0, delta_B = 0, delta_G = 0;
    bool consequence_holds = false;  ///< delta(G[A]), delta(G[B]) >= delta(G)/2
    std::string mod3_case;           ///< "a", "b", "c", or "none" when 3 does not divide n
    std::vector<Triangle> s_triangles;
    bool divisibility_barrier = false;
};

struct StageLog {
    std::string stage;
    nlohmann::json data = nlohmann::json::object();
    std::vector<std::string> warnings;
};

struct PipelineRun {
    std::string branch;  ///< "sparse_cut", "exact", "tree_argument"
    std::vector<StageLog> logs;
    TriangleTiling tiling;
    VertexSet uncovered;
    int uncovered_before_repair = -1;
    std::vector<std::string> warnings;

    int uncovered_count() const { return uncovered.count(); }
};

/// Best balanced cut found (components, then a Fiedler sweep, then local moves). Returns it only
/// if it has fewer than psi n^2 crossing edges; the mod-3 case split is filled in.
std::optional<SparseCut> sparse_cut_split(const Graph& g, double psi, double omega);

/// Spectral clustering into k in [t, T] equal clusters plus an exceptional set; throws
/// PartitionDegenerate if n < 10 t or no k yields a usable reduced graph.
ReducedDecomposition heuristic_partition(const Graph& g, const PipelineConfig& cfg);

/// Perfect (eta, 1 - eta)-matching on the doubled reduced graph minus the core, and the slices it
/// induces. Throws MatchingInfeasible or DenominatorOverflow.
SlicedDecomposition slice_by_matching(const Graph& g, const ReducedDecomposition& dec,
                                      const Rational& eta, const PipelineConfig& cfg);

/// Leaf-by-leaf tiling towards the core, absorption of exceptional vertices, core finish.
PipelineRun run_tree_argument(const Graph& g, const SlicedDecomposition& sd, const PipelineConfig& cfg);

PipelineRun end_to_end(const Graph& g, const PipelineConfig& cfg = {});

/// Local exact re-optimisation: repeatedly frees a few triangles around uncovered vertices and
/// re-solves the freed region exactly. Returns the number of triangles gained.
int improve_tiling(const Graph& g, TriangleTiling& t, uint64_t seed, const Budget& budget,
                   int region_max = 36);

/// Tiles three equal disjoint sets: a perfect matching between the second and third, then a
/// matching of the first into it through the link graph. Best of a few seeded attempts.
TriangleTiling tile_balanced_tripartite(const Graph& g, const VertexSet& X1, const VertexSet& X2,
                                        const VertexSet& X3, uint64_t seed, int attempts = 8);

}  // namespace tritile
