#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tritile/graph.hpp"

namespace tritile {

/// Verdict of check_divisibility_barrier; is_barrier summarises the three conditions.
struct DivisibilityReport {
    bool is_barrier = false;
    VertexSet A, B;
    bool residues_ok = false;             ///< |A| = 1 and |B| = 2 (mod 3)
    long b_triangles = 0;                 ///< triangles with two vertices in B
    std::optional<Triangle> b_witness;
    long a_triangles = 0;                 ///< triangles with two vertices in A
    int disjoint_a_triangles = 0;         ///< 0, 1, or 2 (meaning at least two)
    std::vector<Triangle> a_witness;      ///< a disjoint pair when disjoint_a_triangles == 2
};

/// Verdict of check_space_barrier. slack r = |A| - 2n/3 = slack3 / 3.
struct SpaceReport {
    bool is_barrier = false;
    VertexSet A;
    long slack3 = 0;
    bool triangle_free = false;
    std::optional<Triangle> witness;  ///< a triangle inside A when not triangle-free
    double slack() const { return static_cast<double>(slack3) / 3.0; }
};

/// Throws NotAPartition unless {A, B} partitions V(g). Order matters.
DivisibilityReport check_divisibility_barrier(const Graph& g, const VertexSet& A,
                                              const VertexSet& B);

/// Exact: |A| > 2n/3 and G[A] triangle-free.
SpaceReport check_space_barrier(const Graph& g, const VertexSet& A);

struct SpaceSearchOptions {
    int restarts = 20;
    uint64_t seed = 0;
};

/// Local search for a triangle-free set larger than 2n/3. Absence of a result proves nothing.
std::optional<SpaceReport> search_space_barrier(const Graph& g, const Budget& budget = Budget(),
                                                const SpaceSearchOptions& opt = {});

using Barrier = std::variant<DivisibilityReport, SpaceReport>;

struct BarrierVerification {
    std::string kind;           ///< "divisibility" or "space"
    bool barrier_valid = false;
    int max_triangles = 0;
    int uncovered = 0;
    long predicted_min_uncovered = 0;
    bool prediction_holds = false;
};

/// Runs the exact solver and checks the predicted deficit. Throws SolverBudget if the solver
/// does not finish, PreconditionViolated if the barrier does not validate.
BarrierVerification barrier_implies_no_perfect_tiling(const Graph& g, const Barrier& barrier,
                                                      const Budget& budget = Budget());

}  // namespace tritile
