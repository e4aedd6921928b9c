#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <vector>

#include "doctest.h"
#include "msox/cnf.hpp"
#include "msox/decomposition.hpp"
#include "msox/error.hpp"
#include "msox/fixtures.hpp"
#include "msox/model_check.hpp"
#include "msox/pumping.hpp"
#include "msox/reductions.hpp"
#include "msox/succinct.hpp"

using namespace msox;

namespace {

ModelCheckOptions wide_mc() {
    ModelCheckOptions o;
    o.max_n_first_order = 4096;
    return o;
}

std::vector<bool> bits_of(uint64_t value, int w) {
    std::vector<bool> bits(w);
    for (int i = 0; i < w; ++i) bits[i] = (value >> i) & 1;
    return bits;
}

uint64_t value_of(const std::vector<bool>& bits, size_t lo, size_t hi) {
    uint64_t v = 0;
    for (size_t i = lo; i < hi; ++i)
        if (bits[i]) v |= 1ull << (i - lo);
    return v;
}

// Start block empty, each repeat adds one vertex arcing every deeper
// color-0 vertex at it, end is a single looped vertex: cross-block arcs
// run from higher copies down to lower ones.
PumpTriple crossing_triple() {
    const Signature sig = single_arc_signature();
    PumpTriple t;
    t.s = make_marked(sig);
    t.r = make_join({{0, JoinDir::LeftToRight, 0, 0}}, make_marked(sig), make_constant(sig, 0));
    t.e = make_constant(sig, 0, {0});
    t.target = has_loop_formula();
    t.m = 1;
    return t;
}

// Repeat recoloring swaps the two colors, so the start join's 0 -> 0 rule
// sees the end vertex only at even word lengths.
PumpTriple swapping_triple() {
    const Signature sig{{"->"}, {}, 2};
    PumpTriple t;
    t.s = make_join({{0, JoinDir::LeftToRight, 0, 0}}, make_constant(sig, 0), make_marked(sig));
    t.r = make_recolor({1, 0}, make_union(make_marked(sig), make_constant(sig, 0)));
    t.e = make_constant(sig, 0);
    t.target = has_loop_formula();
    t.m = 1;
    return t;
}

const PumpTriple& union_triple() {
    static const PumpTriple t = [] {
        PumpFixture fx = loop_union_fixture();
        return make_idempotent(extract_pump(fx.tree, fx.phi, fx.m, {}, wide_mc()));
    }();
    return t;
}

const PumpQuad& arc_quad() {
    static const PumpQuad q = [] {
        StableFixture fx = arc_under_true_fixture();
        return stable_pump(fx.psi, fx.chi, fx.universe, fx.m, fx.k, 3, fx.verify_absorption, {},
                           wide_mc());
    }();
    return q;
}

const PumpPair& clique_pair() {
    static const PumpPair p = [] {
        PairFixture fx = clique_edgeless_pair_fixture();
        return unstable_pump(fx.psi, fx.chi, fx.pairs, fx.m, {}, wide_mc());
    }();
    return p;
}

Graph glued_blocks(const Decomposition& s, const Decomposition& e,
                   const std::vector<const Decomposition*>& letters) {
    std::vector<Decomposition> pieces;
    pieces.push_back(s);
    for (const Decomposition* l : letters) pieces.push_back(*l);
    pieces.push_back(e);
    return underlying(eval_delta_blocks(pieces));
}

Graph pumped_blocks(const PumpTriple& t, int ell) {
    std::vector<const Decomposition*> letters(ell, &t.r);
    return glued_blocks(t.s, t.e, letters);
}

BoolCircuit random_cvp_circuit(unsigned seed) {
    std::mt19937 rng(seed);
    CircuitBuilder b;
    b.c.num_inputs = 2;
    std::vector<int> ids{b.input(0), b.input(1), b.constant(true)};
    int extra = 1 + (int)(rng() % 5);
    for (int i = 0; i < extra; ++i) {
        int a = ids[rng() % ids.size()];
        int c = ids[rng() % ids.size()];
        switch (rng() % 3) {
            case 0: ids.push_back(b.band(a, c)); break;
            case 1: ids.push_back(b.bor(a, c)); break;
            default: ids.push_back(b.bnot(a)); break;
        }
    }
    b.set_outputs({ids.back()});
    return b.c;
}

}  // namespace

TEST_CASE("block layout arithmetic") {
    BlockLayout lay{2, 3, 1, 2};
    CHECK(lay.total() == 9);
    CHECK(lay.copy_of(0) == 0);
    CHECK(lay.relative_of(0) == 0);
    CHECK(lay.copy_of(4) == 1);
    CHECK(lay.relative_of(4) == 2);
    CHECK(lay.copy_of(8) == 3);
    CHECK(lay.relative_of(8) == 0);

    for (BlockLayout l : {BlockLayout{2, 3, 1, 2}, BlockLayout{0, 2, 4, 3},
                          BlockLayout{5, 1, 0, 4}, BlockLayout{1, 2, 3, 0}}) {
        long long v = 0;
        for (long long i = 0; i < l.start; ++i, ++v) {
            CHECK(l.copy_of(v) == 0);
            CHECK(l.relative_of(v) == i);
        }
        for (long long c = 1; c <= l.ell; ++c)
            for (long long i = 0; i < l.letter; ++i, ++v) {
                CHECK(l.copy_of(v) == c);
                CHECK(l.relative_of(v) == i);
            }
        for (long long i = 0; i < l.end; ++i, ++v) {
            CHECK(l.copy_of(v) == l.ell + 1);
            CHECK(l.relative_of(v) == i);
        }
        CHECK(v == l.total());
    }
}

TEST_CASE("block position circuit agrees with the host arithmetic") {
    // the last layout is a two-vertex word whose letter needs more bits
    // than the address does
    for (BlockLayout lay : {BlockLayout{2, 3, 1, 2}, BlockLayout{0, 2, 4, 3},
                            BlockLayout{1, 1, 1, 5}, BlockLayout{5, 1, 0, 4},
                            BlockLayout{0, 2, 0, 1}}) {
        const long long N = lay.total();
        const int w = addr_bits((int)N);
        const int wr = std::max(1, (int)std::bit_width((uint64_t)lay.letter));
        CircuitBuilder b;
        b.c.num_inputs = w;
        BlockPosition p = block_position(b, b.input_range(0, w), lay);
        const size_t ww = p.copy.size();
        REQUIRE(ww == (size_t)std::max(w, wr) + 1);
        CircuitBuilder::Vec outs = p.copy;
        outs.insert(outs.end(), p.rel.begin(), p.rel.end());
        outs.push_back(p.in_s);
        outs.push_back(p.in_mid);
        outs.push_back(p.in_e);
        b.set_outputs(outs);
        for (long long v = 0; v < N; ++v) {
            std::vector<bool> out = eval_circuit(b.c, bits_of((uint64_t)v, w));
            const long long copy = lay.copy_of(v);
            CHECK((long long)value_of(out, 0, ww) == copy);
            CHECK((long long)value_of(out, ww, 2 * ww) == lay.relative_of(v));
            CHECK(out[2 * ww + 0] == (copy == 0));
            CHECK(out[2 * ww + 1] == (copy >= 1 && copy <= lay.ell));
            CHECK(out[2 * ww + 2] == (copy == lay.ell + 1));
        }
    }
}

TEST_CASE("block position size depends on widths only") {
    auto count = [](const BlockLayout& lay) {
        CircuitBuilder b;
        b.c.num_inputs = 4;
        block_position(b, b.input_range(0, 4), lay);
        return b.c.size();
    };
    // same address width, same letter bit width, different block sizes
    CHECK(count(BlockLayout{2, 3, 1, 2}) == count(BlockLayout{1, 2, 2, 3}));
    CHECK(count(BlockLayout{2, 3, 1, 2}) == count(BlockLayout{0, 2, 4, 3}));

    CircuitBuilder b;
    b.c.num_inputs = 4;
    CHECK_THROWS_AS(block_position(b, b.input_range(0, 4), BlockLayout{1, 0, 1, 2}), Error);
}

TEST_CASE("case table of a union pump holds loops on the diagonal") {
    const PumpTriple& t = union_triple();
    EdgeCaseTable table = edge_case_table(t);
    CHECK(table.nsym == 1);
    for (const auto& [key, mask] : table.bits) {
        const bool diag =
            key.kind_u == key.kind_v && key.rel_u == key.rel_v && key.gap == 0;
        CHECK(mask == (diag ? 1u : 0u));
    }
    CHECK(table_lookup(table, CaseKey{kBlockStart, kBlockStart, 0, 0, 0}) == 1);
    CHECK(table_lookup(table, CaseKey{kBlockRepeat, kBlockRepeat, 1, 1, 0}) == 1);
    CHECK(table_lookup(table, CaseKey{kBlockEnd, kBlockEnd, 3, 3, 0}) == 1);
    // keys never observed read as arcless
    CHECK(table_lookup(table, CaseKey{kBlockBad, kBlockBad, 0, 0, 0}) == 0);
    CHECK_THROWS_AS(edge_case_table(t, 0), Error);
}

TEST_CASE("a non-idempotent repeat recoloring is detected and repairable") {
    PumpTriple t = swapping_triple();
    CHECK_FALSE(is_idempotent(recoloring(t.r)));
    CHECK_THROWS_AS(edge_case_table(t), ConsistencyViolation);
    CHECK_THROWS_AS(pump_circuit(t, 4), Error);

    PumpTriple fixed = make_idempotent(t);
    CHECK(is_idempotent(recoloring(fixed.r)));
    CHECK(num_leaves(fixed.r) == 2 * num_leaves(t.r));
    EdgeCaseTable table = edge_case_table(fixed);
    CHECK(table.nsym == 1);
    for (int ell = 0; ell <= 4; ++ell) {
        Graph direct = pumped_blocks(fixed, ell);
        CHECK(graph_equal(decode(pump_circuit(fixed, ell)), direct));
    }
}

TEST_CASE("pump circuits decode to the glued word") {
    const PumpTriple& t = union_triple();
    for (int ell = 0; ell <= 5; ++ell) {
        SuccinctGraph sg = pump_circuit(t, ell);
        CHECK(sg.n == 8 + 2 * ell);
        Graph direct = pumped_blocks(t, ell);
        CHECK(graph_equal(decode(sg), direct));
        CHECK(models(decode(sg), t.target, wide_mc()));
    }

    PumpTriple cross = crossing_triple();
    REQUIRE(num_leaves(cross.s) == 0);
    for (int ell = 0; ell <= 5; ++ell) {
        SuccinctGraph sg = pump_circuit(cross, ell);
        Graph direct = pumped_blocks(cross, ell);
        CHECK(graph_equal(decode(sg), direct));
    }
    CHECK_THROWS_AS(pump_circuit(t, -1), Error);
}

TEST_CASE("pump circuit size grows with the address width only") {
    const PumpTriple& t = union_triple();
    std::vector<size_t> sizes;
    for (long long ell : {8, 16, 32, 64})
        sizes.push_back(pump_circuit(t, ell).arc_circuit.size());
    CHECK(sizes[1] - sizes[0] == sizes[2] - sizes[1]);
    CHECK(sizes[2] - sizes[1] == sizes[3] - sizes[2]);
}

TEST_CASE("satisfiability reduction") {
    const PumpQuad& q = arc_quad();
    CHECK(q.negated);

    std::vector<CnfInstance> pool = all_cnfs(1, 3);
    for (const CnfInstance& c : all_cnfs(2, 2)) pool.push_back(c);
    for (const CnfInstance& cnf : pool) {
        SuccinctGraph sg = sat_reduction(q, cnf);
        Graph got = decode(sg);

        std::vector<const Decomposition*> letters(1ull << cnf.num_vars);
        for (uint64_t a = 0; a < letters.size(); ++a)
            letters[a] = satisfies(cnf, a) ? &q.b : &q.g;
        Graph want = glued_blocks(q.s, q.e, letters);
        CHECK(graph_equal(got, want));

        // target holds on b-free words only, so a satisfiable cnf breaks it
        const bool sat = brute_force_sat(cnf);
        CHECK(models(got, q.target, wide_mc()) == !sat);
        CHECK(models(got, q.chi, wide_mc()));
    }
}

TEST_CASE("satisfiability reduction input validation") {
    const PumpQuad& q = arc_quad();
    CnfInstance cnf;
    cnf.num_vars = 0;
    CHECK_THROWS_AS(sat_reduction(q, cnf), Error);
    cnf.num_vars = 25;
    CHECK_THROWS_AS(sat_reduction(q, cnf), GuardExceeded);

    PumpQuad uneven = q;
    uneven.b = glue(q.b, q.g);  // doubles one letter
    cnf.num_vars = 1;
    CHECK_THROWS_AS(sat_reduction(uneven, cnf), Error);
    CHECK_THROWS_AS(edge_case_table(uneven), Error);
}

TEST_CASE("circuit value reduction") {
    const PumpPair& p = clique_pair();

    auto expected_of = [](const BoolCircuit& c) -> bool {
        return eval_circuit(c, std::vector<bool>(c.num_inputs, false))[0];
    };
    std::vector<BoolCircuit> probes;
    {
        CircuitBuilder b;
        b.set_outputs({b.constant(false)});
        probes.push_back(b.c);
    }
    {
        CircuitBuilder b;
        b.set_outputs({b.constant(true)});
        probes.push_back(b.c);
    }
    {
        CircuitBuilder b;
        b.c.num_inputs = 1;
        b.set_outputs({b.bnot(b.input(0))});
        probes.push_back(b.c);
    }
    for (unsigned seed = 1; seed <= 6; ++seed) probes.push_back(random_cvp_circuit(seed));

    for (const BoolCircuit& c : probes) {
        CvpInstance cvp{c};
        SuccinctGraph sg = cvp_reduction(p, cvp);
        Graph got = decode(sg);
        CHECK(models(got, p.pos.target, wide_mc()) == expected_of(c));
    }
}

TEST_CASE("circuit value instances carry exactly one output") {
    CircuitBuilder b;
    b.c.num_inputs = 1;
    int x = b.input(0);
    b.set_outputs({x, b.bnot(x)});
    CvpInstance two{b.c};
    CHECK_THROWS_AS(two.check(), Error);
    CvpInstance none{BoolCircuit{}};
    CHECK_THROWS_AS(none.check(), Error);
}

TEST_CASE("minimum order reduction, smallest instance") {
    CnfInstance cnf;
    cnf.num_vars = 1;
    cnf.clauses = {{1}};
    SuccinctGraph sg = min_order_reduction(cnf);
    CHECK(sg.n == 2);
    CHECK(sg.sig.arc_symbols == std::vector<std::string>{"->", "<="});
    Graph g = decode(sg);
    CHECK(g.arcs == std::set<Arc>{{0, 1, 1}, {1, 0, 0}, {1, 1, 0}, {1, 1, 1}});
}

TEST_CASE("minimum order reduction agrees with brute force") {
    std::vector<CnfInstance> pool = all_cnfs(1, 3);
    for (const CnfInstance& c : all_cnfs(2, 2)) pool.push_back(c);
    for (const CnfInstance& cnf : pool) {
        Graph g = decode(min_order_reduction(cnf));
        CHECK(g.n == (1 << cnf.num_vars));
        CHECK(models(g, total_order_formula(), wide_mc()));
        CHECK(models(g, min_loop_formula(), wide_mc()) == brute_force_sat(cnf));
    }

    CnfInstance bad;
    bad.num_vars = 0;
    CHECK_THROWS_AS(min_order_reduction(bad), Error);
    bad.num_vars = 25;
    CHECK_THROWS_AS(min_order_reduction(bad), GuardExceeded);
}

TEST_CASE("xi fixture freezes the family truths") {
    const Signature sig = single_arc_signature();
    XiFixture fx = make_xi_fixture(psi1_formula(), 4);
    CHECK(fx.threshold == 4);
    CHECK(fx.clique_truth);
    CHECK_FALSE(fx.independent_truth);
    REQUIRE(fx.small_models.size() == 4);
    for (int i = 0; i < 4; ++i)
        CHECK(graph_equal(fx.small_models[i], clique_with_loops(i + 1, sig)));

    // both families model the all-or-nothing formula
    XiFixture both = make_xi_fixture(xi_formula(), 4);
    CHECK(both.small_models.size() == 8);
    CHECK(both.clique_truth);
    CHECK(both.independent_truth);

    CHECK_THROWS_AS(make_xi_fixture(psi1_formula(), 0), Error);
}

TEST_CASE("xi decider answers from the table below and the probe above") {
    const Signature sig = single_arc_signature();
    XiFixture fx = make_xi_fixture(psi1_formula(), 4);
    for (int n = 1; n <= 6; ++n) {
        CHECK(xi_decider(encode_explicit(clique_with_loops(n, sig)), fx));
        CHECK_FALSE(xi_decider(encode_explicit(edgeless_graph(n, sig)), fx));
    }
    SuccinctGraph odd = encode_explicit(clique_with_loops(5, Signature{{"e"}, {}, 1}));
    CHECK_THROWS_AS(xi_decider(odd, fx), SignatureMismatch);
}
