#include "msox/fixtures.hpp"

#include <bit>

#include "msox/error.hpp"
#include "msox/model_check.hpp"

namespace msox {

using F = Formula;

FormulaPtr psi1_formula() {
    return F::exists_v("x", F::exists_v("y", F::arc("->", "x", "y")));
}

FormulaPtr psi2_formula() {
    return F::forall_v("x", F::forall_v("y", F::arc("->", "x", "y")));
}

FormulaPtr xi_formula() {
    return F::lor(psi2_formula(),
                  F::forall_v("x", F::forall_v("y", F::lnot(F::arc("->", "x", "y")))));
}

FormulaPtr has_loop_formula() { return F::exists_v("x", F::arc("->", "x", "x")); }

FormulaPtr deterministic_formula() {
    return F::forall_v(
        "x", F::forall_v(
                 "y", F::forall_v("z", F::implies(F::land(F::arc("->", "x", "y"),
                                                          F::arc("->", "x", "z")),
                                                  F::eq("y", "z")))));
}

FormulaPtr total_order_formula() {
    auto refl = F::forall_v("x", F::arc("<=", "x", "x"));
    auto antisym = F::forall_v(
        "x", F::forall_v("y", F::implies(F::land(F::arc("<=", "x", "y"), F::arc("<=", "y", "x")),
                                         F::eq("x", "y"))));
    auto total = F::forall_v(
        "x", F::forall_v("y", F::lor(F::arc("<=", "x", "y"), F::arc("<=", "y", "x"))));
    auto trans = F::forall_v(
        "x", F::forall_v(
                 "y", F::forall_v("z", F::implies(F::land(F::arc("<=", "x", "y"),
                                                          F::arc("<=", "y", "z")),
                                                  F::arc("<=", "x", "z")))));
    return F::land(F::land(F::land(refl, antisym), total), trans);
}

FormulaPtr cycle_formula() {
    // one piece per written conjunct; the degree clause admits some
    // degenerate small graphs, which the fixture file points out
    auto split = F::exists_s(
        "X", F::land(F::land(F::exists_v("u", F::in_set("u", "X")),
                             F::exists_v("v", F::lnot(F::in_set("v", "X")))),
                     F::forall_v("u", F::forall_v("v", F::implies(F::arc("->", "u", "v"),
                                                                  F::iff(F::in_set("u", "X"),
                                                                         F::in_set("v", "X")))))));
    auto symmetric = F::forall_v(
        "u", F::forall_v("v", F::iff(F::arc("->", "u", "v"), F::arc("->", "v", "u"))));
    auto two_regular = F::forall_v(
        "u",
        F::exists_v(
            "v",
            F::exists_v(
                "w", F::forall_v(
                         "z", F::implies(
                                  F::land(F::land(F::land(F::land(F::arc("->", "u", "v"),
                                                                  F::arc("->", "u", "w")),
                                                          F::lnot(F::eq("v", "w"))),
                                                  F::lnot(F::eq("v", "z"))),
                                          F::lnot(F::eq("w", "z"))),
                                  F::lnot(F::arc("->", "u", "z")))))));
    return F::land(F::land(F::lnot(split), symmetric), two_regular);
}

FormulaPtr bipartite_formula() {
    return F::exists_s(
        "X", F::forall_v("u", F::forall_v("v", F::implies(F::arc("->", "u", "v"),
                                                          F::iff(F::in_set("u", "X"),
                                                                 F::lnot(F::in_set("v", "X")))))));
}

FormulaPtr min_loop_formula() {
    return F::exists_v("x", F::land(F::forall_v("y", F::arc("<=", "x", "y")),
                                    F::arc("->", "x", "x")));
}

FormulaPtr zero_loop_formula() {
    return F::exists_v("x", F::land(F::pred("zero", "x"), F::arc("->", "x", "x")));
}

FormulaPtr unique_zero_formula() {
    return F::exists_v("x", F::land(F::pred("zero", "x"),
                                    F::forall_v("y", F::implies(F::pred("zero", "y"),
                                                                F::eq("x", "y")))));
}

std::vector<NamedFormula> formula_corpus() {
    return {
        {"psi1.psi", psi1_formula(), 2},
        {"psi2.psi", psi2_formula(), 2},
        {"xi.chi", xi_formula(), 2},
        {"has_loop.psi", has_loop_formula(), 1},
        {"deterministic.chi", deterministic_formula(), 3},
        {"total_order.chi", total_order_formula(), 3},
        {"cycle.chi", cycle_formula(), 4},
        {"bipartite.psi", bipartite_formula(), 3},
        {"min_loop.psi", min_loop_formula(), 2},
        {"zero_loop.psi", zero_loop_formula(), 1},
        {"unique_zero.chi", unique_zero_formula(), 2},
    };
}

namespace {

Decomposition leaf(const Signature& sig, int color, bool looped) {
    return make_constant(sig, color, looped ? std::vector<int>{0} : std::vector<int>{});
}

std::vector<JoinRule> full_rules() {
    return {{0, JoinDir::LeftToRight, 0, 0}, {0, JoinDir::RightToLeft, 0, 0}};
}

Decomposition chain(const Signature& sig, int count, bool looped,
                    const std::vector<JoinRule>& rules) {
    if (count < 1) throw Error("chain: need at least one vertex");
    Decomposition c = leaf(sig, 0, looped);
    for (int i = 1; i < count; ++i) c = make_join(rules, c, leaf(sig, 0, looped));
    return c;
}

Decomposition balanced(const Signature& sig, int count, bool looped,
                       const std::vector<JoinRule>& rules) {
    if (count < 1 || std::popcount((unsigned)count) != 1)
        throw Error("balanced tree: count must be a power of two");
    if (count == 1) return leaf(sig, 0, looped);
    Decomposition half = balanced(sig, count / 2, looped, rules);
    return make_join(rules, half, balanced(sig, count / 2, looped, rules));
}

}  // namespace

Decomposition union_chain(const Signature& sig, int count, bool looped) {
    return chain(sig, count, looped, {});
}

Decomposition full_join_chain(const Signature& sig, int count, bool looped) {
    return chain(sig, count, looped, full_rules());
}

Decomposition balanced_union_tree(const Signature& sig, int count, bool looped) {
    return balanced(sig, count, looped, {});
}

Decomposition balanced_full_join_tree(const Signature& sig, int count, bool looped) {
    return balanced(sig, count, looped, full_rules());
}

PumpFixture loop_union_fixture() {
    Signature sig = single_arc_signature();
    return {balanced_union_tree(sig, 8, true), has_loop_formula(), 2};
}

PumpFixture looped_clique_fixture() {
    Signature sig = single_arc_signature();
    return {balanced_full_join_tree(sig, 8, true), psi1_formula(), 2};
}

StableFixture arc_under_true_fixture() {
    Signature sig = single_arc_signature();
    StableFixture fx;
    fx.psi = psi1_formula();
    fx.chi = Formula::make_true();
    fx.m = 2;
    fx.k = 1;
    fx.verify_absorption = true;
    for (int n = 1; n <= 5; ++n) fx.universe.push_back(union_chain(sig, n, false));
    fx.universe.push_back(union_chain(sig, 1, true));
    return fx;
}

StableFixture fixed_point_fixture() {
    Signature sig = single_arc_signature();
    sig.num_colors = 2;
    StableFixture fx;
    fx.psi = has_loop_formula();
    fx.chi = deterministic_formula();
    fx.m = 3;
    fx.k = 2;
    fx.verify_absorption = false;  // rank-3 summaries of member+omega unions cost too much
    fx.universe.push_back(leaf(sig, 0, true));
    fx.universe.push_back(make_join({{0, JoinDir::LeftToRight, 0, 1}, {0, JoinDir::RightToLeft, 1, 0}},
                                    leaf(sig, 0, false), leaf(sig, 1, false)));
    for (int n = 1; n <= 6; ++n) fx.universe.push_back(union_chain(sig, n, false));
    return fx;
}

PairFixture clique_edgeless_pair_fixture() {
    Signature sig = single_arc_signature();
    PairFixture fx;
    fx.psi = psi1_formula();
    fx.chi = xi_formula();
    fx.m = 2;
    for (int n = 1; n <= 5; ++n)
        fx.pairs.emplace_back(full_join_chain(sig, n, true), union_chain(sig, n, false));
    return fx;
}

std::vector<Graph> functional_universe() {
    Signature sig = single_arc_signature();
    std::vector<Graph> u = all_functional_graphs(1, sig);
    for (Graph& g : all_functional_graphs(2, sig)) u.push_back(std::move(g));
    return u;
}

}  // namespace msox
