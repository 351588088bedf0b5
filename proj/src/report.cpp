#include "tritile/report.hpp"

#include "tritile/errors.hpp"

namespace tritile {

using nlohmann::json;

namespace {

json tri(const Triangle& t) { return json::array({t.a, t.b, t.c}); }

json tris(const std::vector<Triangle>& ts) {
    json a = json::array();
    for (const auto& t : ts) a.push_back(tri(t));
    return a;
}

json opt_rational(const std::optional<Rational>& q) { return q ? json(to_string(*q)) : json(nullptr); }

}  // namespace

json to_json(const Graph& g) {
    json edges = json::array();
    for (auto [u, v] : g.edge_list()) edges.push_back({u, v});
    return {{"schema", "tritile.graph/1"}, {"n", g.n()}, {"m", g.edges()}, {"edges", edges}};
}

json to_json(const TriangleTiling& t, int n) {
    return {{"schema", "tritile.tiling/1"},
            {"n", n},
            {"triangles", tris(t.triangles)},
            {"covered", 3 * t.size()},
            {"uncovered", n - 3 * t.size()}};
}

json to_json(const ExactTilingResult& r, int n) {
    json j = to_json(r.tiling, n);
    j["optimal"] = r.optimal;
    j["nodes"] = r.nodes;
    return j;
}

json to_json(const ProcedureTrace& tr) {
    json counters = json::array();
    for (const auto& [k, v] : tr.counters) counters.push_back({k, v});
    json steps = json::array();
    for (const auto& s : tr.steps) {
        json sets = json::array();
        for (const auto& [name, vs] : s.sets) sets.push_back({{"name", name}, {"vertices", vs}});
        steps.push_back({{"label", s.label}, {"sets", sets}, {"added", tris(s.added)}});
    }
    return {{"schema", "tritile.procedure_trace/1"},
            {"procedure", tr.procedure},
            {"seed", tr.seed},
            {"counters", counters},
            {"steps", steps}};
}

ProcedureTrace trace_from_json(const json& j) {
    try {
        ProcedureTrace tr;
        tr.procedure = j.at("procedure").get<std::string>();
        tr.seed = j.at("seed").get<uint64_t>();
        for (const auto& c : j.at("counters")) tr.counters.emplace_back(c.at(0).get<std::string>(), c.at(1).get<long>());
        for (const auto& s : j.at("steps")) {
            TraceStep st;
            st.label = s.at("label").get<std::string>();
            for (const auto& x : s.at("sets"))
                st.sets.emplace_back(x.at("name").get<std::string>(), x.at("vertices").get<std::vector<int>>());
            for (const auto& t : s.at("added"))
                st.added.push_back(make_triangle(t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<int>()));
            tr.steps.push_back(std::move(st));
        }
        return tr;
    } catch (const json::exception& e) {
        throw ParseError(0, std::string("malformed procedure trace: ") + e.what());
    } catch (const InvalidGraph& e) {
        throw TraceMismatch(std::string("trace triangle is not three distinct vertices: ") + e.what());
    }
}

json to_json(const IndependenceBound& a) {
    return {{"lower", a.lower}, {"upper", a.upper}, {"exact", a.exact}, {"witness", a.witness.to_vector()}};
}

json to_json(const WeightedFractionalMatching& w, const WfmReport& rep) {
    json weights = json::array();
    for (const auto& [arc, q] : w.weights) weights.push_back({{"tail", arc.first}, {"head", arc.second}, {"weight", to_string(q)}});
    json load = json::array();
    for (const auto& q : rep.load) load.push_back(to_string(q));
    return {{"schema", "tritile.wfm/1"},
            {"eta", to_string(w.eta)},
            {"xi", to_string(w.xi)},
            {"weights", weights},
            {"load", load},
            {"feasible", rep.feasible},
            {"perfect", rep.perfect},
            {"total", to_string(rep.total)},
            {"denominator", rep.denominator.get_str()},
            {"nonzero", rep.nonzero}};
}

json to_json(const FarkasCertificate& c) {
    json y = json::array();
    for (const auto& q : c.y) y.push_back(to_string(q));
    return {{"schema", "tritile.farkas/1"}, {"y", y}};
}

json to_json(const RegularityCertificate& c) {
    json j = {{"schema", "tritile.regularity/1"},
              {"d", to_string(c.d)},
              {"eps", c.eps},
              {"eps_input", c.eps_input},
              {"kind", to_string(c.kind)},
              {"method", to_string(c.method)},
              {"holds", c.holds},
              {"conclusive", c.conclusive},
              {"min_density", opt_rational(c.min_density)},
              {"max_density", opt_rational(c.max_density)},
              {"note", c.note}};
    j["codegree_edges"] = c.codegree_edges ? json(*c.codegree_edges) : json(nullptr);
    if (c.witness)
        j["witness"] = {{"X", c.witness->first.to_vector()}, {"Y", c.witness->second.to_vector()}};
    else
        j["witness"] = nullptr;
    return j;
}

json to_json(const SlicingStats& s) {
    return {{"schema", "tritile.slicing/1"},
            {"trials", s.trials},
            {"slice_pairs", s.slice_pairs},
            {"density_within", s.density_within},
            {"certified", s.certified},
            {"density_rate", s.density_rate},
            {"pass_rate", s.pass_rate},
            {"eps_prime", s.eps_prime},
            {"parent_density", to_string(s.parent_density)},
            {"max_dev_deg_a", s.max_dev_deg_a},
            {"max_dev_deg_b", s.max_dev_deg_b},
            {"max_dev_codeg_a", s.max_dev_codeg_a},
            {"max_dev_codeg_b", s.max_dev_codeg_b},
            {"max_dev_density", s.max_dev_density},
            {"mean_dev_density", s.mean_dev_density}};
}

json to_json(const DivisibilityReport& r) {
    return {{"schema", "tritile.barrier/1"},
            {"kind", "divisibility"},
            {"is_barrier", r.is_barrier},
            {"A", r.A.to_vector()},
            {"B", r.B.to_vector()},
            {"residues_ok", r.residues_ok},
            {"b_triangles", r.b_triangles},
            {"b_witness", r.b_witness ? tri(*r.b_witness) : json(nullptr)},
            {"a_triangles", r.a_triangles},
            {"disjoint_a_triangles", r.disjoint_a_triangles},
            {"a_witness", tris(r.a_witness)}};
}

json to_json(const SpaceReport& r) {
    return {{"schema", "tritile.barrier/1"},
            {"kind", "space"},
            {"is_barrier", r.is_barrier},
            {"A", r.A.to_vector()},
            {"slack3", r.slack3},
            {"slack", r.slack()},
            {"triangle_free", r.triangle_free},
            {"witness", r.witness ? tri(*r.witness) : json(nullptr)}};
}

json to_json(const BarrierVerification& v) {
    return {{"schema", "tritile.barrier_verification/1"},
            {"kind", v.kind},
            {"barrier_valid", v.barrier_valid},
            {"max_triangles", v.max_triangles},
            {"uncovered", v.uncovered},
            {"predicted_min_uncovered", v.predicted_min_uncovered},
            {"prediction_holds", v.prediction_holds}};
}

json to_json(const ConstructionReport& r) {
    json claims = json::array();
    for (const auto& c : r.claims)
        claims.push_back({{"name", c.name},
                          {"expected", c.expected},
                          {"measured", c.measured},
                          {"holds", c.holds},
                          {"empirical", c.empirical}});
    json parts = json::array();
    for (const auto& p : r.parts) parts.push_back(p.to_vector());
    json cf = json::object();
    for (const auto& [k, v] : r.clique_free) cf[std::to_string(k)] = v;
    return {{"schema", "tritile.construction/1"},
            {"kind", r.kind},
            {"params", r.params},
            {"n", r.graph.n()},
            {"m", r.graph.edges()},
            {"min_degree", r.min_degree},
            {"alpha", to_json(r.alpha)},
            {"clique_free", cf},
            {"deficit", r.deficit ? json(*r.deficit) : json(nullptr)},
            {"parts", parts},
            {"claims", claims},
            {"ok", r.ok()},
            {"gates_ok", r.gates_ok()}};
}

json to_json(const SpanTreeResult& r) {
    json edges = json::array();
    for (auto [u, v] : r.tree.edges()) edges.push_back({u, v});
    return {{"schema", "tritile.spantree/1"},
            {"success", r.success},
            {"k", r.tree.k},
            {"max_degree", r.tree.max_degree()},
            {"rounds", r.rounds},
            {"used_exact_fallback", r.used_exact_fallback},
            {"parent", r.tree.parent},
            {"edges", edges}};
}

json to_json(const PipelineRun& run) {
    json logs = json::array();
    for (const auto& l : run.logs) logs.push_back({{"stage", l.stage}, {"data", l.data}, {"warnings", l.warnings}});
    const int n = run.uncovered.universe();
    return {{"schema", "tritile.pipeline/1"},
            {"branch", run.branch},
            {"stages", logs},
            {"tiling", to_json(run.tiling, n)},
            {"uncovered", run.uncovered.to_vector()},
            {"uncovered_count", run.uncovered_count()},
            {"uncovered_before_repair", run.uncovered_before_repair},
            {"warnings", run.warnings}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace tritile
