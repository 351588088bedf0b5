#include "tritile/barriers.hpp"

#include <algorithm>

#include "tritile/rng.hpp"
#include "tritile/tiling.hpp"

namespace tritile {

DivisibilityReport check_divisibility_barrier(const Graph& g, const VertexSet& A,
                                              const VertexSet& B) {
    if (A.universe() != g.n() || B.universe() != g.n() || A.intersects(B) ||
        (A | B).count() != g.n())
        throw NotAPartition("A and B do not partition the vertex set");
    DivisibilityReport r;
    r.A = A;
    r.B = B;
    r.residues_ok = A.count() % 3 == 1 && B.count() % 3 == 2;

    std::vector<Triangle> a_tris;
    for (const auto& t : enumerate_triangles(g)) {
        const int in_a = A.test(t.a) + A.test(t.b) + A.test(t.c);
        if (in_a == 1) {
            if (!r.b_witness) r.b_witness = t;
            ++r.b_triangles;
        } else if (in_a == 2) {
            a_tris.push_back(t);
        }
    }
    r.a_triangles = static_cast<long>(a_tris.size());
    r.disjoint_a_triangles = a_tris.empty() ? 0 : 1;
    for (size_t i = 0; i < a_tris.size() && r.disjoint_a_triangles < 2; ++i) {
        VertexSet vi = VertexSet::of(g.n(), {a_tris[i].a, a_tris[i].b, a_tris[i].c});
        for (size_t j = i + 1; j < a_tris.size(); ++j) {
            const Triangle& t = a_tris[j];
            if (!vi.test(t.a) && !vi.test(t.b) && !vi.test(t.c)) {
                r.disjoint_a_triangles = 2;
                r.a_witness = {a_tris[i], t};
                break;
            }
        }
    }
    r.is_barrier = r.residues_ok && r.b_triangles == 0 && r.disjoint_a_triangles < 2;
    return r;
}

SpaceReport check_space_barrier(const Graph& g, const VertexSet& A) {
    SpaceReport r;
    r.A = A;
    r.slack3 = 3L * A.count() - 2L * g.n();
    const auto tris = enumerate_triangles(g, A);
    r.triangle_free = tris.empty();
    if (!tris.empty()) r.witness = tris.front();
    r.is_barrier = r.slack3 > 0 && r.triangle_free;
    return r;
}

namespace {

bool can_add(const Graph& g, const VertexSet& s, int v) {
    const VertexSet nb = g.adj(v) & s;
    for (int u = nb.first(); u >= 0; u = nb.next(u))
        if (g.adj(u).intersects(nb)) return false;
    return true;
}

VertexSet grow(const Graph& g, const std::vector<int>& order) {
    VertexSet s(g.n());
    for (int v : order)
        if (can_add(g, s, v)) s.set(v);
    // (1,2)-exchanges: drop u, then try to add two outsiders; quadratic, so small graphs only
    bool improved = g.n() <= 120;
    while (improved) {
        improved = false;
        const std::vector<int> members = s.to_vector();
        for (int u : members) {
            VertexSet t = s;
            t.reset(u);
            int added = 0;
            for (int v : order)
                if (!t.test(v) && v != u && can_add(g, t, v)) {
                    t.set(v);
                    ++added;
                }
            if (added >= 2) {
                s = t;
                improved = true;
                break;
            }
        }
    }
    return s;
}

}  // namespace

std::optional<SpaceReport> search_space_barrier(const Graph& g, const Budget& budget,
                                                const SpaceSearchOptions& opt) {
    const int n = g.n();
    std::vector<int> order(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return g.degree(a) < g.degree(b); });
    VertexSet best(n);
    Rng rng(opt.seed);
    for (int round = 0; round <= opt.restarts; ++round) {
        if (round > 0) {
            if (budget.expired()) break;
            rng.shuffle(order);
        }
        VertexSet s = grow(g, order);
        if (s.count() > best.count()) best = s;
    }
    SpaceReport r = check_space_barrier(g, best);
    if (!r.is_barrier) return std::nullopt;
    return r;
}

BarrierVerification barrier_implies_no_perfect_tiling(const Graph& g, const Barrier& barrier,
                                                      const Budget& budget) {
    BarrierVerification v;
    if (const auto* d = std::get_if<DivisibilityReport>(&barrier)) {
        v.kind = "divisibility";
        v.barrier_valid = check_divisibility_barrier(g, d->A, d->B).is_barrier;
        v.predicted_min_uncovered = 3;
    } else {
        const auto& s = std::get<SpaceReport>(barrier);
        v.kind = "space";
        v.barrier_valid = check_space_barrier(g, s.A).is_barrier;
        v.predicted_min_uncovered = check_space_barrier(g, s.A).slack3;
    }
    if (!v.barrier_valid) throw PreconditionViolated("barrier does not validate");
    const auto res = max_tiling_exact(g, budget);
    if (!res.optimal) throw SolverBudget("exact solver did not finish within budget");
    v.max_triangles = res.tiling.size();
    v.uncovered = g.n() - 3 * v.max_triangles;
    v.prediction_holds = v.uncovered >= v.predicted_min_uncovered;
    return v;
}

}  // namespace tritile
