// Command-line front end. Every subcommand writes its JSON result to stdout (or --report).
// Exit status: 0 success, 2 verified negative result, 1 error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "tritile/barriers.hpp"
#include "tritile/constructions.hpp"
#include "tritile/errors.hpp"
#include "tritile/fracmatch.hpp"
#include "tritile/pipeline.hpp"
#include "tritile/regularity.hpp"
#include "tritile/report.hpp"
#include "tritile/spantree.hpp"
#include "tritile/tiling.hpp"

using namespace tritile;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kError = 1, kNegative = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(0, "cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

/// "0,1,5-9" -> vertex list.
std::vector<int> parse_vertices(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        try {
            const auto dash = tok.find('-');
            if (dash == std::string::npos) {
                out.push_back(std::stoi(tok));
            } else {
                const int a = std::stoi(tok.substr(0, dash)), b = std::stoi(tok.substr(dash + 1));
                for (int v = a; v <= b; ++v) out.push_back(v);
            }
        } catch (const std::logic_error&) {
            throw ParseError(0, "bad vertex list entry '" + tok + "'");
        }
    }
    return out;
}

VertexSet vertex_set(int n, const std::string& s) {
    VertexSet out(n);
    for (int v : parse_vertices(s)) {
        if (v < 0 || v >= n) throw ParseError(0, "vertex " + std::to_string(v) + " out of range");
        out.set(v);
    }
    return out;
}

struct Outcome {
    int code = kOk;
    std::string input_path;
};

/// Runs one command; everything it prints goes to out so replays can compare bytes.
Outcome dispatch(std::vector<std::string> args, std::ostream& out, std::string* trace_path) {
    CLI::App app{"Triangle-tiling toolkit"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");
    Outcome oc;
    std::string input, report, svg;
    uint64_t seed = 0;
    long budget_ms = 0;
    std::string trace;

    auto common = [&](CLI::App* c, bool needs_input) {
        if (needs_input) c->add_option("--input,-i", input, "input file")->required()->check(CLI::ExistingFile);
        c->add_option("--report", report, "write the JSON report here instead of stdout");
        c->add_option("--seed", seed, "random seed");
        c->add_option("--budget-ms", budget_ms, "time budget; TRITILE_BUDGET_MS is the default");
        c->add_option("--trace", trace, "record a replayable trace of this invocation");
    };

    // gen
    auto* gen = app.add_subcommand("gen", "generate a construction");
    std::string kind, output, variant = "tiling";
    int m = 1, n = 0, r = 4, k = 3, target = 0;
    double omega = 0.05, gamma = 0.1, p_in = 0.3, p_cross = 0.5;
    gen->add_option("kind", kind, "g1 g2 g3 g4 er be rt space kfree planted gnp")
        ->required()
        ->check(CLI::IsMember({"g1", "g2", "g3", "g4", "er", "be", "rt", "space", "kfree", "planted", "gnp"}));
    gen->add_option("--m", m, "construction parameter m")->check(CLI::PositiveNumber);
    gen->add_option("--n", n, "number of vertices");
    gen->add_option("--r", r, "clique order for rt and g4");
    gen->add_option("--k", k, "clique order for kfree");
    gen->add_option("--omega", omega);
    gen->add_option("--gamma", gamma);
    gen->add_option("--target-min-degree", target);
    gen->add_option("--variant", variant)->check(CLI::IsMember({"tiling", "k4free", "kplus1free"}));
    gen->add_option("--p-in", p_in);
    gen->add_option("--p-cross", p_cross);
    double p_edge = 0.5;
    gen->add_option("--p", p_edge, "edge probability for gnp");
    gen->add_option("--output,-o", output, "edge-list output path");
    common(gen, false);

    // analyze
    auto* analyze = app.add_subcommand("analyze", "degrees, independence number, triangles, barriers");
    common(analyze, true);

    // tile
    auto* tile = app.add_subcommand("tile", "maximum triangle tiling");
    bool exact = false;
    std::string balance_parts;
    tile->add_flag("--exact", exact, "exact branch and bound (default)");
    tile->add_option("--balance", balance_parts, "three vertex lists separated by ';' for balance_tripartite");
    tile->add_option("--svg", svg, "bar plot of covered and uncovered vertices");
    common(tile, true);

    // barrier
    auto* barrier = app.add_subcommand("barrier", "check or search barriers");
    std::string setA, setB, bkind = "search";
    barrier->add_option("--kind", bkind)->check(CLI::IsMember({"divisibility", "space", "search"}));
    barrier->add_option("--A", setA, "vertex list");
    barrier->add_option("--B", setB, "vertex list");
    bool verify = false;
    barrier->add_flag("--verify", verify, "confirm the deficit with the exact solver");
    common(barrier, true);

    // wfm
    auto* wfm = app.add_subcommand("wfm", "perfect weighted fractional matching");
    std::string eta_s = "1/3", xi_s;
    wfm->add_option("--eta", eta_s);
    wfm->add_option("--xi", xi_s, "defaults to 1 - eta");
    common(wfm, true);

    // certify
    auto* certify = app.add_subcommand("certify", "regularity certificate for a pair");
    std::string d_s, method = "exhaustive";
    double eps = 0.1;
    certify->add_option("--A", setA)->required();
    certify->add_option("--B", setB)->required();
    certify->add_option("--d", d_s, "density (defaults to the pair density)");
    certify->add_option("--eps", eps)->check(CLI::Range(0.0, 1.0));
    certify->add_option("--method", method)
        ->check(CLI::IsMember({"exhaustive", "geq", "codegree", "necessary", "super", "super-codegree"}));
    certify->add_option("--svg", svg, "heat map of the codegree graph");
    common(certify, true);

    // spantree
    auto* spantree = app.add_subcommand("spantree", "bounded-degree spanning tree");
    int kdeg = 3;
    spantree->add_option("--k", kdeg)->check(CLI::PositiveNumber);
    common(spantree, true);

    // pipeline
    auto* pipe = app.add_subcommand("pipeline", "end-to-end tiling pipeline");
    PipelineConfig cfg;
    bool no_repair = false, strict = false;
    std::string p_eta;
    pipe->add_option("--omega", cfg.omega);
    pipe->add_option("--eps", cfg.eps);
    pipe->add_option("--d", cfg.d);
    pipe->add_option("--gamma", cfg.gamma);
    pipe->add_option("--psi", cfg.psi);
    pipe->add_option("--cert-eps", cfg.cert_eps);
    pipe->add_option("--t", cfg.t);
    pipe->add_option("--T", cfg.T);
    pipe->add_option("--eta", p_eta);
    pipe->add_option("--exact-below", cfg.exact_below);
    pipe->add_flag("--no-repair", no_repair);
    pipe->add_flag("--strict", strict);
    pipe->add_option("--svg", svg, "bar plot of uncovered vertices before and after repair");
    common(pipe, true);

    // replay
    auto* replay = app.add_subcommand("replay", "re-run a recorded trace and compare outputs");
    std::string trace_in;
    replay->add_option("trace", trace_in)->required()->check(CLI::ExistingFile);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        // Help goes to out with status 0; usage errors are reported on stderr.
        oc.code = app.exit(e, out, std::cerr) == 0 ? kOk : kError;
        return oc;
    }

    const Budget budget = Budget::from_env(budget_ms);
    if (trace_path) *trace_path = trace;
    oc.input_path = input;
    json result;
    std::string extra_stdout;

    if (gen->parsed()) {
        MeasureOptions mo;
        ConstructionReport rep;
        if (kind == "g1") rep = gen_g1(m, mo);
        else if (kind == "g2") rep = gen_g2(m, mo);
        else if (kind == "g3") rep = gen_g3(m, mo);
        else if (kind == "g4") rep = gen_g4(n, r, omega, gamma, seed, mo);
        else if (kind == "er") rep = gen_er(n, seed, target, mo);
        else if (kind == "be") rep = gen_be(n, seed, BeParams{}, mo);
        else if (kind == "rt") rep = gen_rt(n, r, omega, gamma, seed, mo);
        else if (kind == "space") rep = gen_space_barrier_k5free(n, seed, mo);
        else if (kind == "kfree")
            rep = gen_kfree_question(n, k, seed,
                                     variant == "k4free"       ? KFreeVariant::K4Free
                                     : variant == "kplus1free" ? KFreeVariant::KkPlus1Free
                                                               : KFreeVariant::KkTiling,
                                     mo);
        else if (kind == "planted") rep = gen_planted_clusters(n, p_in, p_cross, seed, mo);
        else {
            rep.kind = "gnp";
            rep.params = {{"n", std::to_string(n)}, {"p", std::to_string(p_edge)}, {"seed", std::to_string(seed)}};
            rep.graph = random_graph(n, p_edge, seed);
            rep.min_degree = n ? min_degree(rep.graph) : 0;
            rep.alpha = independence_number(rep.graph, Budget::millis(mo.alpha_budget_ms));
        }
        result = to_json(rep);
        if (!output.empty())
            write_file(output, to_edge_list(rep.graph));
        else
            extra_stdout = to_edge_list(rep.graph);
        oc.code = rep.ok() ? kOk : kError;
    } else if (analyze->parsed()) {
        const Graph g = read_edge_list_file(input);
        const auto alpha = independence_number(g, budget.limited() ? budget : Budget::millis(5000));
        result = {{"schema", "tritile.analysis/1"},
                  {"n", g.n()},
                  {"m", g.edges()},
                  {"min_degree", g.n() ? min_degree(g) : 0},
                  {"max_degree", g.n() ? max_degree(g) : 0},
                  {"triangles", enumerate_triangles(g).size()},
                  {"alpha", to_json(alpha)},
                  {"connected", is_connected(g)}};
        auto sb = search_space_barrier(g, Budget::millis(2000), {20, seed});
        result["space_barrier"] = sb ? to_json(*sb) : json(nullptr);
    } else if (tile->parsed()) {
        const Graph g = read_edge_list_file(input);
        if (!balance_parts.empty()) {
            std::vector<VertexSet> parts;
            std::stringstream ss(balance_parts);
            std::string tok;
            while (std::getline(ss, tok, ';')) parts.push_back(vertex_set(g.n(), tok));
            if (parts.size() != 3) throw ParseError(0, "--balance needs three vertex lists");
            auto [t, tr] = balance_tripartite(g, parts[0], parts[1], parts[2]);
            result = to_json(t, g.n());
            result["procedure_trace"] = to_json(tr);
            result["monotone"] = balance_trace_monotone(tr);
        } else {
            const auto res = max_tiling_exact(g, budget);
            result = to_json(res, g.n());
            if (!res.optimal) {
                out << dump(result);
                throw BudgetExceeded("exact tiling did not finish within the budget");
            }
        }
        if (!svg.empty())
            write_file(svg, svg_bar_chart("coverage", {"covered", "uncovered"},
                                          {static_cast<double>(result["covered"].get<int>()),
                                           static_cast<double>(result["uncovered"].get<int>())}));
    } else if (barrier->parsed()) {
        const Graph g = read_edge_list_file(input);
        bool found = false;
        std::optional<Barrier> b;
        if (bkind == "divisibility") {
            if (setA.empty() || setB.empty()) throw ParseError(0, "--A and --B are required");
            const auto rep = check_divisibility_barrier(g, vertex_set(g.n(), setA), vertex_set(g.n(), setB));
            result = to_json(rep);
            found = rep.is_barrier;
            if (found) b = rep;
        } else {
            std::optional<SpaceReport> rep;
            if (bkind == "space") {
                if (setA.empty()) throw ParseError(0, "--A is required");
                rep = check_space_barrier(g, vertex_set(g.n(), setA));
            } else {
                SpaceSearchOptions so;
                so.seed = seed;
                rep = search_space_barrier(g, budget, so);
            }
            result = rep ? to_json(*rep) : json{{"schema", "tritile.barrier/1"}, {"kind", "space"}, {"is_barrier", false}};
            found = rep && rep->is_barrier;
            if (found) b = *rep;
        }
        if (verify && b) result["verification"] = to_json(barrier_implies_no_perfect_tiling(g, *b, budget));
        oc.code = found ? kNegative : kOk;
    } else if (wfm->parsed()) {
        const Digraph dg = read_digraph_file(input);
        const Rational eta = parse_rational(eta_s);
        const Rational xi = xi_s.empty() ? Rational(1 - eta) : parse_rational(xi_s);
        const auto res = solve_perfect_wfm(dg, eta, xi);
        if (res.feasible) {
            result = to_json(res.matching, verify_wfm(dg, res.matching));
        } else {
            result = to_json(res.certificate);
            result["verified"] = farkas_check(res.certificate, dg, eta, xi);
            oc.code = kNegative;
        }
        result["pivots"] = res.pivots;
    } else if (certify->parsed()) {
        const Graph g = read_edge_list_file(input);
        BipartitePair p(g, vertex_set(g.n(), setA), vertex_set(g.n(), setB));
        const Rational d = d_s.empty() ? density(p) : parse_rational(d_s);
        RegularityCertificate c;
        if (method == "exhaustive")
            c = check_regular_exhaustive(p, d, eps, RegKind::Regular);
        else if (method == "geq")
            c = check_regular_exhaustive(p, d, eps, RegKind::GeqRegular);
        else if (method == "super")
            c = check_super_regular(p, d, eps, SuperMethod::Exhaustive);
        else if (method == "super-codegree")
            c = check_super_regular(p, d, eps, SuperMethod::Codegree);
        else if (method == "codegree") {
            auto k = kr_sufficient(p, eps);
            if (k) {
                c = *k;
            } else {
                c.d = density(p);
                c.eps = c.eps_input = eps;
                c.method = RegMethod::CodegreeSufficient;
                c.conclusive = false;
                c.note = "codegree criterion did not fire";
            }
        } else {
            const bool ok = kr_necessary_check(p, d, eps);
            c.d = d;
            c.eps = c.eps_input = eps;
            c.method = RegMethod::CodegreeNecessaryFailed;
            c.holds = ok;
            c.conclusive = !ok;
            c.note = ok ? "necessary condition satisfied; not a proof of regularity"
                        : "necessary codegree condition fails, so the pair is not regular";
        }
        result = to_json(c);
        if (!svg.empty()) {
            const CodegreeGraph D = codegree_graph(p, eps);
            std::vector<std::vector<double>> cells;
            for (const auto& row : D.adj) {
                std::vector<double> r2;
                for (int j = 0; j < row.universe(); ++j) r2.push_back(row.test(j) ? 1.0 : 0.0);
                cells.push_back(r2);
            }
            write_file(svg, svg_heatmap("codegree graph", cells));
        }
        if (c.conclusive && !c.holds) oc.code = kNegative;
    } else if (spantree->parsed()) {
        const Graph g = read_edge_list_file(input);
        const auto res = bounded_degree_spanning_tree(g, kdeg);
        result = to_json(res);
        result["valid"] = res.tree.valid_for(g);
        if (kdeg >= 2 && g.n() <= 40) result["win_condition"] = win_condition(g, kdeg, WinMode::Exact);
        if (!res.success) oc.code = kNegative;
    } else if (pipe->parsed()) {
        const Graph g = read_edge_list_file(input);
        cfg.seed = seed;
        cfg.repair = !no_repair;
        cfg.strict = strict;
        if (!p_eta.empty()) cfg.eta = parse_rational(p_eta);
        cfg.budget_ms = budget.limited() ? budget.millis_total() : cfg.budget_ms;
        const PipelineRun run = end_to_end(g, cfg);
        result = to_json(run);
        result["valid"] = tiling_is_valid(g, run.tiling);
        if (!svg.empty())
            write_file(svg, svg_bar_chart("uncovered vertices", {"before repair", "after repair"},
                                          {static_cast<double>(run.uncovered_before_repair),
                                           static_cast<double>(run.uncovered_count())}));
    } else if (replay->parsed()) {
        json tr;
        try {
            tr = json::parse(read_file(trace_in));
        } catch (const json::exception& e) {
            throw ParseError(0, std::string("trace is not JSON: ") + e.what());
        }
        if (tr.value("schema", "") != "tritile.run_trace/1") throw ParseError(0, "not a run trace");
        const auto rargs = tr.at("args").get<std::vector<std::string>>();
        if (!rargs.empty() && rargs[0] == "replay") throw ParseError(0, "a replay cannot be traced");
        const std::string path = tr.value("input", "");
        if (!path.empty() && fnv1a(read_file(path)) != std::stoull(tr.at("input_fnv1a").get<std::string>()))
            throw TraceMismatch("input file changed since the trace was recorded");
        // Recorded triangles must still form a tiling of the input.
        if (tr.contains("procedure_trace") && !path.empty()) {
            const Graph g = read_edge_list_file(path);
            replay_trace(g, trace_from_json(tr.at("procedure_trace")));
        }
        std::ostringstream again;
        const Outcome o2 = dispatch(rargs, again, nullptr);
        if (again.str() != tr.at("output").get<std::string>())
            throw TraceMismatch("replayed output differs from the recorded output");
        if (o2.code != tr.at("exit_code").get<int>()) throw TraceMismatch("exit code differs");
        out << dump({{"schema", "tritile.replay/1"}, {"verdict", "OK"}, {"bytes", again.str().size()}});
        return oc;
    }

    const std::string text = dump(result);
    if (!report.empty())
        write_file(report, text);
    else
        out << text;
    out << extra_stdout;
    return oc;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::ostringstream buf;
    std::string trace_path;
    try {
        const Outcome oc = dispatch(args, buf, &trace_path);
        std::cout << buf.str();
        if (!trace_path.empty()) {
            json tr = {{"schema", "tritile.run_trace/1"},
                       {"args", args},
                       {"input", oc.input_path},
                       {"input_fnv1a", oc.input_path.empty() ? "0" : std::to_string(fnv1a(read_file(oc.input_path)))},
                       {"output", buf.str()},
                       {"exit_code", oc.code}};
            // Keep the procedure trace alongside so the recorded triangles can be re-validated.
            try {
                const json out = json::parse(buf.str());
                if (out.contains("procedure_trace")) tr["procedure_trace"] = out["procedure_trace"];
            } catch (const json::exception&) {
            }
            write_file(trace_path, dump(tr));
        }
        return oc.code;
    } catch (const ParseError& e) {
        std::cout << buf.str();
        std::cerr << "ParseError: " << e.what() << "\n";
        return kError;
    } catch (const Error& e) {
        std::cout << buf.str();
        std::cerr << e.kind() << ": " << e.what() << "\n";
        return kError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
}
