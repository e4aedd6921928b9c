#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "msox/cnf.hpp"
#include "msox/decomposition_io.hpp"
#include "msox/error.hpp"
#include "msox/fixtures.hpp"
#include "msox/formula_parse.hpp"
#include "msox/graph_io.hpp"
#include "msox/model_check.hpp"
#include "msox/mso_type.hpp"
#include "msox/pumping.hpp"
#include "msox/reductions.hpp"
#include "msox/succinct.hpp"
#include "msox/verify.hpp"

namespace {

using namespace msox;

// exit codes: 0 done, 1 verification failed, 2 bad input
constexpr int kFail = 1;
constexpr int kInputError = 2;

ModelCheckOptions wide_mc() {
    ModelCheckOptions mc;
    mc.max_n_first_order = 4096;
    return mc;
}

PumpQuad builtin_quad(const ModelCheckOptions& mc) {
    const StableFixture fx = arc_under_true_fixture();
    return stable_pump(fx.psi, fx.chi, fx.universe, fx.m, fx.k, 3, fx.verify_absorption, {}, mc);
}

PumpPair builtin_pair(const ModelCheckOptions& mc) {
    const PairFixture fx = clique_edgeless_pair_fixture();
    return unstable_pump(fx.psi, fx.chi, fx.pairs, fx.m, {}, mc);
}

int cmd_mc(const std::string& graph_file, const std::string& succinct_file,
           const std::string& formula_file, int guard) {
    Graph g;
    if (!graph_file.empty()) {
        g = read_graph_file(graph_file);
    } else if (!succinct_file.empty()) {
        g = decode(read_succinct_file(succinct_file), guard);
    } else {
        throw ParseError("mc: provide --graph or --succinct");
    }
    const FormulaPtr f = read_formula_file(formula_file, g.sig);
    std::cout << (models(g, f, wide_mc()) ? "true" : "false") << "\n";
    return 0;
}

int cmd_type(const std::string& graph_file, const std::string& other_file, int m) {
    TypeOptions topts;
    const Graph g = read_graph_file(graph_file);
    const MsoType t = type_of(g, m, topts);
    if (other_file.empty()) {
        std::cout << "rank=" << m << " digest=" << type_digest(t)
                  << " witness_n=" << t.witness.g.n << "\n";
        return 0;
    }
    const MsoType u = type_of(read_graph_file(other_file), m, topts);
    std::cout << "rank=" << m << " equal=" << (t == u ? "true" : "false") << "\n";
    return 0;
}

int cmd_pump(const std::string& psi_file, const std::string& chi_file,
             const std::string& universe_file, int m, int k, int l_test, bool no_absorption,
             const std::string& prefix) {
    const std::vector<Decomposition> universe = read_universe_file(universe_file);
    if (universe.empty()) throw ParseError("pump: empty universe");
    const Signature sig = universe.front().sig;
    const FormulaPtr psi = read_formula_file(psi_file, sig);
    const FormulaPtr chi = read_formula_file(chi_file, sig);
    const ModelCheckOptions mc = wide_mc();
    const PumpQuad q = stable_pump(psi, chi, universe, m, k, l_test, !no_absorption, {}, mc);
    write_decomposition_file(q.s, prefix + ".start.json");
    write_decomposition_file(q.g, prefix + ".good.json");
    write_decomposition_file(q.b, prefix + ".bad.json");
    write_decomposition_file(q.e, prefix + ".end.json");
    const bool ok = verify_quad(q, l_test, mc);
    std::cout << "check=quad_words status=" << (ok ? "pass" : "fail")
              << " detail=letters=" << num_leaves(q.g) << ",l_test=" << l_test
              << ",negated=" << (q.negated ? 1 : 0) << "\n";
    return ok ? 0 : kFail;
}

int cmd_synth_pump(const std::string& tree_file, const std::string& formula_file, int m,
                   long long ell, const std::string& out) {
    const Decomposition c = read_decomposition_file(tree_file);
    const FormulaPtr f = read_formula_file(formula_file, c.sig);
    const PumpTriple t = make_idempotent(extract_pump(c, f, m, {}, wide_mc()));
    const SuccinctGraph sg = pump_circuit(t, ell);
    write_succinct_file(out, sg);
    std::cout << "n=" << sg.n << " gates=" << sg.arc_circuit.size() << "\n";
    return 0;
}

int cmd_reduce_sat(const std::string& cnf_file, const std::string& out) {
    const CnfInstance cnf = read_dimacs_file(cnf_file);
    const PumpQuad q = builtin_quad(wide_mc());
    const SuccinctGraph sg = sat_reduction(q, cnf);
    write_succinct_file(out, sg);
    std::cout << "n=" << sg.n << " gates=" << sg.arc_circuit.size()
              << " negated=" << (q.negated ? 1 : 0) << "\n";
    return 0;
}

int cmd_reduce_cvp(const std::string& circuit_file, const std::string& out) {
    CvpInstance cvp{read_netlist_file(circuit_file)};
    const PumpPair pair = builtin_pair(wide_mc());
    const SuccinctGraph sg = cvp_reduction(pair, cvp);
    write_succinct_file(out, sg);
    std::cout << "n=" << sg.n << " gates=" << sg.arc_circuit.size() << "\n";
    return 0;
}

int cmd_reduce_minorder(const std::string& cnf_file, const std::string& out) {
    const SuccinctGraph sg = min_order_reduction(read_dimacs_file(cnf_file));
    write_succinct_file(out, sg);
    std::cout << "n=" << sg.n << " gates=" << sg.arc_circuit.size() << "\n";
    return 0;
}

int cmd_decode(const std::string& succinct_file, const std::string& out, int guard) {
    const Graph g = decode(read_succinct_file(succinct_file), guard);
    if (out.empty()) {
        std::cout << print_graph_text(g);
    } else {
        write_graph_file(g, out);
        std::cout << "n=" << g.n << " arcs=" << g.arcs.size() << "\n";
    }
    return 0;
}

int cmd_encode(const std::string& graph_file, const std::string& out) {
    const SuccinctGraph sg = encode_explicit(read_graph_file(graph_file));
    write_succinct_file(out, sg);
    std::cout << "n=" << sg.n << " gates=" << sg.arc_circuit.size() << "\n";
    return 0;
}

int cmd_decide_xi(const std::string& succinct_file, int threshold, int guard) {
    const SuccinctGraph sg = read_succinct_file(succinct_file);
    const XiFixture fx = make_xi_fixture(psi1_formula(), threshold, wide_mc());
    std::cout << (xi_decider(sg, fx, guard) ? "true" : "false") << "\n";
    return 0;
}

int run_checks(const std::vector<std::string>& names, bool quick, uint64_t seed) {
    VerifyOptions opts{quick, seed};
    std::vector<CheckResult> results;
    if (names.empty()) {
        results = run_all_checks(opts);
    } else {
        for (const std::string& n : names) results.push_back(run_check(n, opts));
    }
    int passed = 0;
    for (const CheckResult& r : results) {
        std::cout << format_report_line(r) << "\n";
        if (r.pass) ++passed;
    }
    std::cerr << "passed " << passed << "/" << results.size() << "\n";
    return passed == (int)results.size() ? 0 : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"clique-width decomposition algebra, rank-m summaries, pumping, "
                 "and circuit-synthesis reductions"};
    app.require_subcommand(1);

    std::string graph_file, succinct_file, formula_file, other_file, tree_file;
    std::string psi_file, chi_file, universe_file;
    std::string cnf_file, circuit_file, decode_out, out = "out.sg", prefix = "pump";
    int m = 2, k = 1, l_test = 3, guard = 4096, threshold = 4;
    long long ell = 1;
    bool quick = false, no_absorption = false;
    uint64_t seed = 1;
    std::vector<std::string> names;

    auto* mc = app.add_subcommand("mc", "model-check a formula on a graph");
    mc->add_option("--graph", graph_file, "graph file");
    mc->add_option("--succinct", succinct_file, "succinct graph file");
    mc->add_option("--formula", formula_file, "formula file")->required();
    mc->add_option("--guard", guard, "decode size guard");

    auto* ty = app.add_subcommand("type", "rank-m summary digest of a graph");
    ty->add_option("--graph", graph_file, "graph file")->required();
    ty->add_option("--graph2", other_file, "second graph: compare instead of print");
    ty->add_option("-m,--rank", m, "summary rank");

    auto* pu = app.add_subcommand("pump", "stable pump letters for psi under chi");
    pu->add_option("--psi", psi_file, "target formula file")->required();
    pu->add_option("--chi", chi_file, "side-condition formula file")->required();
    pu->add_option("--universe", universe_file, "universe JSON file")->required();
    pu->add_option("-m,--rank", m, "summary rank");
    pu->add_option("-k,--colors", k, "color bound on the universe");
    pu->add_option("--l-test", l_test, "brute-force verification length");
    pu->add_flag("--no-absorption", no_absorption, "skip the absorption check");
    pu->add_option("--out-prefix", prefix, "output file prefix");

    auto* sy = app.add_subcommand("synth-pump", "compile a pump power into a circuit");
    sy->add_option("--tree", tree_file, "decomposition file")->required();
    sy->add_option("--formula", formula_file, "preserved formula")->required();
    sy->add_option("-m,--rank", m, "summary rank");
    sy->add_option("--ell", ell, "number of repeat copies")->required();
    sy->add_option("--out", out, "output succinct graph file");

    auto* rs = app.add_subcommand("reduce-sat", "satisfiability to model checking");
    rs->add_option("--cnf", cnf_file, "DIMACS file")->required();
    rs->add_option("--out", out, "output succinct graph file");

    auto* rc = app.add_subcommand("reduce-cvp", "circuit value to model checking");
    rc->add_option("--circuit", circuit_file, "netlist file")->required();
    rc->add_option("--out", out, "output succinct graph file");

    auto* rm = app.add_subcommand("reduce-minorder", "satisfiability to minimum-has-loop");
    rm->add_option("--cnf", cnf_file, "DIMACS file")->required();
    rm->add_option("--out", out, "output succinct graph file");

    auto* de = app.add_subcommand("decode", "expand a succinct graph");
    de->add_option("--succinct", succinct_file, "succinct graph file")->required();
    de->add_option("--out", decode_out, "graph file (stdout when absent)");
    de->add_option("--guard", guard, "decode size guard");

    auto* en = app.add_subcommand("encode", "lookup-table circuit for an explicit graph");
    en->add_option("--graph", graph_file, "graph file")->required();
    en->add_option("--out", out, "output succinct graph file");

    auto* dx = app.add_subcommand("decide-xi", "clique-or-edgeless promise decision");
    dx->add_option("--succinct", succinct_file, "succinct graph file")->required();
    dx->add_option("--threshold", threshold, "largest size decided by lookup");
    dx->add_option("--guard", guard, "decode size guard");

    auto* ve = app.add_subcommand("verify", "run named oracle comparisons");
    ve->add_option("--check", names, "check name (repeatable; all when omitted)");
    ve->add_flag("--quick", quick, "smaller sweeps");
    ve->add_option("--seed", seed, "randomized-trial seed");

    auto* va = app.add_subcommand("verify-all", "run the full acceptance suite");
    va->add_flag("--quick", quick, "smaller sweeps");
    va->add_option("--seed", seed, "randomized-trial seed");

    try {
        app.parse(argc, argv);
        if (mc->parsed()) return cmd_mc(graph_file, succinct_file, formula_file, guard);
        if (ty->parsed()) return cmd_type(graph_file, other_file, m);
        if (pu->parsed())
            return cmd_pump(psi_file, chi_file, universe_file, m, k, l_test, no_absorption,
                            prefix);
        if (sy->parsed()) return cmd_synth_pump(tree_file, formula_file, m, ell, out);
        if (rs->parsed()) return cmd_reduce_sat(cnf_file, out);
        if (rc->parsed()) return cmd_reduce_cvp(circuit_file, out);
        if (rm->parsed()) return cmd_reduce_minorder(cnf_file, out);
        if (de->parsed()) return cmd_decode(succinct_file, decode_out, guard);
        if (en->parsed()) return cmd_encode(graph_file, out);
        if (dx->parsed()) return cmd_decide_xi(succinct_file, threshold, guard);
        if (ve->parsed() || va->parsed()) return run_checks(ve->parsed() ? names : std::vector<std::string>{}, quick, seed);
        return kInputError;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kInputError;
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const IoError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
}
