#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tritile/graph.hpp"
#include "tritile/rational.hpp"

namespace tritile {

/// Ramsey-Turan threshold: (r-3)/(r-1) for odd r, (3r-10)/(3r-4) for even r. RangeError if r < 3.
Rational f_rt(int r);

/// One checked property. Empirical claims are calibrated gates for asymptotic statements.
struct Claim {
    std::string name;
    std::string expected;
    std::string measured;
    bool holds = false;
    bool empirical = false;
};

struct MeasureOptions {
    int clique_check_max_n = 400;  ///< exact K_r-freeness checks up to this order
    int deficit_max_n = 30;        ///< exact max-tiling deficit up to this order
    long deficit_budget_ms = 60000;
    long alpha_budget_ms = 2000;
};

struct ConstructionReport {
    std::string kind;
    std::map<std::string, std::string> params;
    Graph graph;
    std::vector<VertexSet> parts;
    // Measured from the emitted edge set.
    int min_degree = 0;
    IndependenceBound alpha;
    std::map<int, bool> clique_free;  ///< r -> G is K_r-free, only for exactly checked r
    std::optional<int> deficit;       ///< n - 3 * (max tiling size), when computed exactly
    std::vector<Claim> claims;

    void claim(std::string name, std::string expected, std::string measured, bool holds,
               bool empirical = false);
    /// All exact claims hold.
    bool ok() const;
    /// All claims, including empirical gates, hold.
    bool gates_ok() const;
};

/// Complete tripartite graph with classes m-1, m, m+1.
ConstructionReport gen_g1(int m, const MeasureOptions& opt = {});
/// Two copies of K_{3m+2} sharing one vertex.
ConstructionReport gen_g2(int m, const MeasureOptions& opt = {});
/// Two disjoint copies of K_{3m+2}.
ConstructionReport gen_g3(int m, const MeasureOptions& opt = {});

/// Triangle-free process run to saturation. target_min_degree is an empirical gate (0 = none).
ConstructionReport gen_er(int n, uint64_t seed, int target_min_degree = 0,
                          const MeasureOptions& opt = {});
/// Just the triangle-free process graph.
Graph er_graph(int n, uint64_t seed);

struct BeParams {
    int dim = 8;
    double within = 0.99;  ///< within-part edge when <x, y> <= -within
    double cross = 0.01;   ///< cross edge when <x, y> >= cross
    double degree_tol = 0.05;
    int retries = 5;
};

/// Sphere construction. Each half consists of antipodal point pairs. parts = {V1, V2}.
ConstructionReport gen_be(int n, uint64_t seed, const BeParams& be = {}, const MeasureOptions& opt = {});
/// Verified BE graph on n >= 2 vertices (odd n allowed); halves written to *v1 and *v2.
Graph be_graph(int n, uint64_t seed, const BeParams& be, VertexSet* v1 = nullptr,
               VertexSet* v2 = nullptr);

ConstructionReport gen_rt(int n, int r, double omega, double gamma, uint64_t seed,
                          const MeasureOptions& opt = {});
/// Disjoint union of G_RT(n/2 - 1) and G_RT(n/2 + 1); parts = {A, B} of the divisibility barrier.
ConstructionReport gen_g4(int n, int r, double omega, double gamma, uint64_t seed,
                          const MeasureOptions& opt = {});

/// Complete bipartite U, V of sizes 2n/3 + 1 and n/3 - 1 with ER on each side. parts = {U, V}.
ConstructionReport gen_space_barrier_k5free(int n, uint64_t seed, const MeasureOptions& opt = {});

enum class KFreeVariant { KkTiling, K4Free, KkPlus1Free };

/// Lower-bound constructions for the K_k-tiling questions.
ConstructionReport gen_kfree_question(int n, int k, uint64_t seed,
                                      KFreeVariant variant = KFreeVariant::KkTiling,
                                      const MeasureOptions& opt = {});

/// Erdos-Renyi G(n, p): each pair independently with probability p, pairs in lexicographic order.
Graph random_graph(int n, double p, uint64_t seed);

/// Three equal clusters with edge probability p_in inside and p_cross between. parts = clusters.
ConstructionReport gen_planted_clusters(int n, double p_in, double p_cross, uint64_t seed,
                                        const MeasureOptions& opt = {});

}  // namespace tritile
