#include <random>

#include "doctest.h"
#include "msox/error.hpp"
#include "msox/fixtures.hpp"
#include "msox/mso_type.hpp"

using namespace msox;

namespace {
const Signature kSig = single_arc_signature();
}

TEST_CASE("summaries are interned: equal structures share an id") {
    MsoType a = type_of(edgeless_graph(2, kSig), 1);
    MsoType b = type_of(edgeless_graph(2, kSig), 1);
    CHECK(a == b);
    CHECK(a.id == b.id);
    CHECK(type_digest(a) == type_digest(b));
    CHECK(a.rank_m == 1);
}

TEST_CASE("rank-1 summaries separate loops from their absence") {
    MsoType k = type_of(clique_with_loops(3, kSig), 1);
    MsoType i = type_of(edgeless_graph(3, kSig), 1);
    CHECK(k != i);
    CHECK(type_digest(k) != type_digest(i));
    CHECK(type_models(k, has_loop_formula()));
    CHECK_FALSE(type_models(i, has_loop_formula()));
}

TEST_CASE("witnesses realize their own summary") {
    for (int m = 0; m <= 2; ++m) {
        MsoType t = type_of(cycle_graph(4, kSig), m);
        CHECK(type_of(t.witness, m) == t);
    }
}

TEST_CASE("type truth matches model checking on a small sweep") {
    std::vector<FormulaPtr> fs = {psi1_formula(), psi2_formula(), xi_formula(),
                                  has_loop_formula()};
    for (int n = 1; n <= 2; ++n) {
        for (const Graph& g : all_graphs_one_symbol(n, kSig)) {
            MsoType t = type_of(g, 2);
            for (const FormulaPtr& f : fs) CHECK(type_models(t, f) == models(g, f));
        }
    }
}

TEST_CASE("type truth requires enough rank") {
    MsoType t = type_of(edgeless_graph(2, kSig), 1);
    CHECK_THROWS_AS(type_models(t, psi1_formula()), Error);  // rank 2 formula, rank 1 summary
}

TEST_CASE("lower rank never separates more than higher rank") {
    std::vector<Graph> pool = all_graphs_one_symbol(2, kSig);
    for (size_t i = 0; i < pool.size(); ++i)
        for (size_t j = i + 1; j < pool.size(); ++j)
            if (type_of(pool[i], 2) == type_of(pool[j], 2))
                CHECK(type_of(pool[i], 1) == type_of(pool[j], 1));
}

TEST_CASE("union summaries agree with summaries of unions") {
    std::vector<Graph> pool = {edgeless_graph(1, kSig), clique_with_loops(1, kSig),
                               cycle_graph(3, kSig), functional_graph({1, 0}, kSig)};
    for (const Graph& a : pool)
        for (const Graph& b : pool) {
            MsoType direct = type_of(disjoint_union(a, b), 2);
            MsoType viaTypes = union_type(type_of(a, 2), type_of(b, 2));
            CHECK(direct == viaTypes);
        }
}

TEST_CASE("union of summaries rejects mismatched ranks") {
    MsoType a = type_of(edgeless_graph(1, kSig), 1);
    MsoType b = type_of(edgeless_graph(1, kSig), 2);
    CHECK_THROWS_AS(union_type(a, b), Error);
}

TEST_CASE("stabilization counts for the standard families") {
    ColoredGraph loop = uniform_coloring(clique_with_loops(1, kSig));
    ColoredGraph dot = uniform_coloring(edgeless_graph(1, kSig));
    ColoredGraph k3 = uniform_coloring(clique_with_loops(3, kSig));
    CHECK(stabilization_count(dot, 0) == 1);
    CHECK(stabilization_count(dot, 1) == 1);
    CHECK(stabilization_count(dot, 2) == 2);
    CHECK(stabilization_count(loop, 2) == 2);
    CHECK(stabilization_count(k3, 2) == 2);
}

TEST_CASE("saturation plan groups the universe by summary") {
    std::vector<ColoredGraph> universe = {uniform_coloring(edgeless_graph(1, kSig)),
                                          uniform_coloring(edgeless_graph(2, kSig)),
                                          uniform_coloring(edgeless_graph(3, kSig))};
    SaturationPlan plan = saturation_plan(universe, 2);
    CHECK(plan.types.size() == 2);  // the 2- and 3-vertex graphs summarize alike
    CHECK(plan.rep_index == std::vector<int>{0, 1});
    CHECK(plan.copies == std::vector<int>{2, 1});
}

TEST_CASE("saturating graph absorbs every universe member") {
    std::vector<Graph> universe = {edgeless_graph(1, kSig), clique_with_loops(1, kSig)};
    Graph omega = saturating_graph(universe, 2, Formula::make_true(), true);
    CHECK(omega.n == 4);  // two copies of each one-vertex representative
    CHECK(omega.arcs.size() == 2);
    for (const Graph& g : universe)
        CHECK(type_of(disjoint_union(g, omega), 2) == type_of(omega, 2));
}

TEST_CASE("saturating graph rejects side-condition violations") {
    std::vector<Graph> universe = {edgeless_graph(1, kSig)};
    CHECK_THROWS_AS(saturating_graph(universe, 2, has_loop_formula(), false), Error);
}

TEST_CASE("subtree annotations follow evaluation, holes get none") {
    Decomposition plain = union_chain(kSig, 3, true);
    auto ann = annotate_types(plain, 2);
    REQUIRE(ann[plain.root].has_value());
    CHECK(*ann[plain.root] == type_of(eval(plain), 2));

    Decomposition ctx = make_join({}, make_marked(kSig), make_constant(kSig, 0));
    auto ann2 = annotate_types(ctx, 1);
    CHECK_FALSE(ann2[ctx.root].has_value());
    int leaves_with_values = 0;
    for (const auto& t : ann2)
        if (t.has_value()) ++leaves_with_values;
    CHECK(leaves_with_values == 1);
}

TEST_CASE("equal summaries stay equal under a shared context") {
    Decomposition a = union_chain(kSig, 3, false);
    Decomposition b = make_join({}, make_constant(kSig, 0),
                                make_join({}, make_constant(kSig, 0), make_constant(kSig, 0)));
    REQUIRE(type_of(eval(a), 2) == type_of(eval(b), 2));
    Decomposition ctx = make_join({{0, JoinDir::LeftToRight, 0, 0}}, make_marked(kSig),
                                  make_constant(kSig, 0, {0}));
    CHECK(check_compositionality(ctx, a, b, 2));
    Decomposition unequal = union_chain(kSig, 1, true);
    CHECK_THROWS_AS(check_compositionality(ctx, a, unequal, 2), Error);
}

TEST_CASE("set sweeps above the bound fail loudly, and the bound is adjustable") {
    Graph big = edgeless_graph(9, kSig);
    CHECK_THROWS_AS(type_of(big, 2), GuardExceeded);
    CHECK(type_of(big, 1).rank_m == 1);  // trailing set moves need no sweep
    TypeOptions wide;
    wide.max_n_full_sets = 9;
    CHECK(type_of(big, 2, wide).rank_m == 2);
    TypeOptions tiny;
    tiny.max_n = 4;
    CHECK_THROWS_AS(type_of(edgeless_graph(5, kSig), 1, tiny), GuardExceeded);
}

TEST_CASE("canonical serialization is deterministic") {
    MsoType t = type_of(cycle_graph(3, kSig), 2);
    CHECK(type_canonical(t) == type_canonical(type_of(cycle_graph(3, kSig), 2)));
    CHECK(type_canonical(t) != type_canonical(type_of(cycle_graph(4, kSig), 2)));
    CHECK(type_digest(t).size() > 0);
}
