#include <vector>

#include "doctest.h"
#include "msox/error.hpp"
#include "msox/fixtures.hpp"
#include "msox/model_check.hpp"
#include "msox/pumping.hpp"

using namespace msox;

namespace {

const Signature kSig = single_arc_signature();

ModelCheckOptions wide_mc() {
    ModelCheckOptions mc;
    mc.max_n_first_order = 512;
    return mc;
}

// Hand-built triple with arcs that cross block boundaries: each repeat
// letter arcs from everything glued below it to its own vertex, the end
// carries a loop.
PumpTriple crossing_triple() {
    PumpTriple t;
    t.s = make_marked(kSig);
    t.r = make_join({{0, JoinDir::LeftToRight, 0, 0}}, make_marked(kSig),
                    make_constant(kSig, 0));
    t.e = make_constant(kSig, 0, {0});
    t.target = has_loop_formula();
    t.m = 1;
    return t;
}

}  // namespace

TEST_CASE("power zero rebuilds the cut graph") {
    for (const PumpFixture& fx : {loop_union_fixture(), looped_clique_fixture()}) {
        PumpTriple t = extract_pump(fx.tree, fx.phi, fx.m);
        ColoredGraph base = eval(fx.tree);
        CHECK(pump_graph(t, 0).g.n == base.g.n);
        CHECK(models(pump_graph(t, 0).g, fx.phi) == models(base.g, fx.phi));
    }
}

TEST_CASE("pumped powers keep the formula and grow linearly") {
    PumpFixture fx = loop_union_fixture();
    PumpTriple t = extract_pump(fx.tree, fx.phi, fx.m);
    CHECK(num_leaves(t.r) == 2);
    CHECK(num_leaves(t.s) + num_leaves(t.e) == 8);
    for (int ell = 0; ell <= 3; ++ell) {
        CAPTURE(ell);
        ColoredGraph g = pump_graph(t, ell);
        CHECK(g.g.n == 8 + 2 * ell);
        CHECK(models(g.g, fx.phi));
    }
    CHECK(verify_pump(t));
}

TEST_CASE("join fixture pumps to ever larger complete looped graphs") {
    PumpFixture fx = looped_clique_fixture();
    PumpTriple t = extract_pump(fx.tree, fx.phi, fx.m, {}, wide_mc());
    for (int ell = 0; ell <= 3; ++ell) {
        ColoredGraph g = pump_graph(t, ell);
        CHECK((int)g.g.arcs.size() == g.g.n * g.g.n);
        CHECK(models(g.g, fx.phi));
    }
}

TEST_CASE("trees and graphs of the same power agree") {
    PumpTriple t = crossing_triple();
    for (int ell = 0; ell <= 3; ++ell) {
        Decomposition tree = pump_tree(t, ell);
        CHECK(count_marked(tree) == 0);
        CHECK(eval(tree).g.n == pump_graph(t, ell).g.n);
        CHECK(eval(tree).g.arcs.size() == pump_graph(t, ell).g.arcs.size());
    }
    CHECK(verify_pump(t));
}

TEST_CASE("extraction refuses unusable inputs") {
    PumpFixture fx = loop_union_fixture();
    CHECK_THROWS_AS(extract_pump(union_chain(kSig, 2, true), has_loop_formula(), 2),
                    NoRepeatedType);
    CHECK_THROWS_AS(extract_pump(fx.tree, bipartite_formula(), 2), Error);  // rank 3 > m
    CHECK_THROWS_AS(extract_pump(union_chain(kSig, 3, false), has_loop_formula(), 1), Error);
    Decomposition holed = make_join({}, make_marked(kSig), make_constant(kSig, 0, {0}));
    CHECK_THROWS_AS(extract_pump(holed, has_loop_formula(), 1), Error);
}

TEST_CASE("idempotent closure leaves identity recolorings alone") {
    PumpFixture fx = loop_union_fixture();
    PumpTriple t = extract_pump(fx.tree, fx.phi, fx.m);
    PumpTriple t2 = make_idempotent(t);
    CHECK(num_leaves(t2.r) == num_leaves(t.r));
    CHECK(is_idempotent(recoloring(t2.r)));
}

TEST_CASE("idempotent closure replicates a swapping repeat piece") {
    Signature sig = kSig;
    sig.num_colors = 2;
    PumpTriple t;
    t.s = make_marked(sig);
    t.r = make_recolor({1, 0}, make_join({}, make_marked(sig), make_constant(sig, 0, {0})));
    t.e = make_constant(sig, 0, {0});
    t.target = has_loop_formula();
    t.m = 1;
    CHECK(verify_pump(t));
    CHECK_FALSE(is_idempotent(recoloring(t.r)));
    PumpTriple t2 = make_idempotent(t);
    CHECK(num_leaves(t2.r) == 2 * num_leaves(t.r));
    CHECK(is_idempotent(recoloring(t2.r)));
    CHECK(verify_pump(t2));
}

TEST_CASE("stable pump produces same-size letters under the side condition") {
    StableFixture fx = arc_under_true_fixture();
    PumpQuad q = stable_pump(fx.psi, fx.chi, fx.universe, fx.m, fx.k, 3, fx.verify_absorption,
                             {}, wide_mc());
    CHECK(num_leaves(q.g) == num_leaves(q.b));
    CHECK(count_marked(q.s) == 1);
    CHECK(count_marked(q.g) == 1);
    CHECK(count_marked(q.b) == 1);
    CHECK(count_marked(q.e) == 0);
    Recoloring rg = recoloring(q.g);
    CHECK(rg == recoloring(q.b));
    CHECK(is_idempotent(rg));
    CHECK(verify_quad(q, 3, wide_mc()));

    // the good letter keeps the target, one bad letter flips it for good
    ColoredGraph all_good = quad_graph(q, {false, false});
    ColoredGraph one_bad = quad_graph(q, {false, true});
    CHECK(all_good.g.n == one_bad.g.n);
    CHECK(models(all_good.g, q.target, wide_mc()));
    CHECK_FALSE(models(one_bad.g, q.target, wide_mc()));
}

TEST_CASE("stable pump rejects universe members that break the side condition") {
    StableFixture fx = arc_under_true_fixture();
    CHECK_THROWS_AS(stable_pump(fx.psi, deterministic_formula(), fx.universe, fx.m, fx.k),
                    Error);  // rank 3 > m
    std::vector<Decomposition> tiny = {union_chain(kSig, 1, false)};
    CHECK_THROWS_AS(stable_pump(fx.psi, fx.chi, tiny, fx.m, fx.k, 3, true, {}, wide_mc()),
                    Error);  // nothing big enough to pump
}

TEST_CASE("parallel pumps stay size-matched and split on the formula") {
    PairFixture fx = clique_edgeless_pair_fixture();
    PumpPair p = unstable_pump(fx.psi, fx.chi, fx.pairs, fx.m, {}, wide_mc());
    CHECK(verify_pair(p, 3, wide_mc()));
    for (int ell = 0; ell <= 3; ++ell) {
        CAPTURE(ell);
        ColoredGraph pos = pump_graph(p.pos, ell);
        ColoredGraph neg = pump_graph(p.neg, ell);
        CHECK(pos.g.n == neg.g.n);
        CHECK(models(pos.g, fx.psi, wide_mc()));
        CHECK_FALSE(models(neg.g, fx.psi, wide_mc()));
        CHECK(models(pos.g, fx.chi, wide_mc()));
        CHECK(models(neg.g, fx.chi, wide_mc()));
    }
}

TEST_CASE("parallel pump rejects pairs that do not split") {
    std::vector<std::pair<Decomposition, Decomposition>> bad = {
        {union_chain(kSig, 2, true), union_chain(kSig, 2, true)}};
    CHECK_THROWS_AS(unstable_pump(psi1_formula(), Formula::make_true(), bad, 2), Error);
}
