#include <random>
#include <set>

#include "doctest.h"
#include "msox/decomposition.hpp"
#include "msox/decomposition_io.hpp"
#include "msox/error.hpp"
#include "msox/fixtures.hpp"

using namespace msox;

namespace {

const Signature kSig = single_arc_signature();

Signature two_color_sig() {
    Signature sig = single_arc_signature();
    sig.num_colors = 2;
    return sig;
}

// Four vertices built with two colors: 1 -> 1 loop, 0 -> 1, 1 -> 2, 2 -> 0,
// and a final vertex arcing at everything built before it.
Decomposition four_vertex_tree() {
    Signature sig = two_color_sig();
    Decomposition inner = make_join({{0, JoinDir::LeftToRight, 0, 1}},
                                    make_constant(sig, 0), make_constant(sig, 1, {0}));
    Decomposition mid =
        make_join({{0, JoinDir::LeftToRight, 1, 0}, {0, JoinDir::RightToLeft, 0, 0}}, inner,
                  make_constant(sig, 0));
    return make_join({{0, JoinDir::RightToLeft, 1, 0}}, make_recolor({0, 0}, mid),
                     make_constant(sig, 1));
}

const std::set<Arc> kFourVertexArcs = {{0, 0, 1}, {0, 1, 1}, {0, 1, 2}, {0, 2, 0},
                                       {0, 3, 0}, {0, 3, 1}, {0, 3, 2}};

}  // namespace

TEST_CASE("four-vertex regression: arcs, width, join depth") {
    Decomposition c = four_vertex_tree();
    c.check();
    ColoredGraph cg = eval(c);
    CHECK(cg.g.n == 4);
    CHECK(cg.g.arcs == kFourVertexArcs);
    CHECK(cg.colors == std::vector<int>{0, 0, 0, 1});
    CHECK(width(c) == 2);
    CHECK(join_depth(c) == 3);
    CHECK(num_leaves(c) == 4);
    CHECK(count_marked(c) == 0);
}

TEST_CASE("the shipped four-vertex file parses to the same tree") {
    Decomposition c = read_decomposition_file(std::string(MSOX_FIXTURES_DIR) +
                                              "/four_vertex_tree.json");
    CHECK(tree_equal(c, four_vertex_tree()));
    CHECK(eval(c).g.arcs == kFourVertexArcs);
}

TEST_CASE("leaves are numbered depth-first, left before right") {
    Decomposition c = union_chain(kSig, 3, false);
    CHECK(num_leaves(c) == 3);
    CHECK(eval(c).g.n == 3);
    CHECK(join_depth(union_chain(kSig, 4, false)) == 3);
    CHECK(join_depth(balanced_union_tree(kSig, 4, false)) == 2);
    CHECK(width(c) == 1);
}

TEST_CASE("full join chains build complete looped graphs") {
    ColoredGraph k3 = eval(full_join_chain(kSig, 3, true));
    CHECK(k3.g.n == 3);
    CHECK(k3.g.arcs.size() == 9);
}

TEST_CASE("holes: counting, gluing and evaluation refusal") {
    Decomposition hole = make_marked(kSig);
    CHECK(count_marked(hole) == 1);
    CHECK(num_leaves(hole) == 0);
    CHECK_THROWS_AS(eval(hole), Error);
    CHECK(eval_with_hole_empty(hole).g.n == 0);

    Decomposition ctx = make_join({}, hole, make_constant(kSig, 0, {0}));
    Decomposition glued = glue(ctx, make_constant(kSig, 0));
    CHECK(count_marked(glued) == 0);
    CHECK(eval(glued).g.n == 2);

    // two holes are malformed; the builder refuses them outright
    CHECK_THROWS_AS(make_join({}, make_marked(kSig), make_marked(kSig)), Error);
}

TEST_CASE("delta blocks number vertices piece-major, not tree-order") {
    // the hole sits leftmost, so tree evaluation numbers the plug first,
    // while the block evaluation keeps piece 0's constants first
    Decomposition s = make_join({{0, JoinDir::LeftToRight, 0, 0}}, make_marked(kSig),
                                make_constant(kSig, 0));
    Decomposition plug = make_constant(kSig, 0, {0});

    ColoredGraph tree_order = eval(glue(s, plug));
    CHECK(tree_order.g.arcs == std::set<Arc>{{0, 0, 0}, {0, 0, 1}});

    ColoredGraph block_order = eval_delta_blocks({s, plug});
    CHECK(block_order.g.arcs == std::set<Arc>{{0, 1, 1}, {0, 1, 0}});
}

TEST_CASE("delta fold glues left to right and keeps the last piece's leaves") {
    Decomposition r = make_join({}, make_marked(kSig), make_constant(kSig, 0, {0}));
    Decomposition e = make_constant(kSig, 0, {0});
    Decomposition whole = delta_fold({r, r, e});
    CHECK(count_marked(whole) == 0);
    CHECK(eval(whole).g.n == 3);
    CHECK_THROWS_AS(delta_fold({e, r}), Error);  // hole-free piece cannot be glued into
}

TEST_CASE("recoloring composites and idempotent powers") {
    CHECK(identity_recoloring(3) == Recoloring{0, 1, 2});
    CHECK(compose({1, 0}, {1, 0}) == Recoloring{0, 1});
    CHECK(is_idempotent({0, 0}));
    CHECK_FALSE(is_idempotent({1, 0}));
    CHECK(idempotent_power({0, 1}) == 1);
    CHECK(idempotent_power({1, 0}) == 2);
    CHECK(idempotent_power({1, 2, 0}) == 3);
    CHECK(idempotent_power({0, 0, 1}) == 2);

    Signature sig = two_color_sig();
    Decomposition inner = make_join({}, make_marked(sig), make_constant(sig, 0));
    Decomposition r = make_recolor({1, 0}, inner);
    CHECK(recoloring(r) == Recoloring{1, 0});
    Decomposition stacked = make_recolor({1, 0}, make_recolor({1, 0}, inner));
    CHECK(recoloring(stacked) == Recoloring{0, 1});
    CHECK_THROWS_AS(recoloring(union_chain(kSig, 2, false)), Error);  // needs a hole
}

TEST_CASE("json round-trip preserves trees") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 25; ++trial) {
        Decomposition c = random_decomposition(two_color_sig(), 4, rng, trial % 2 == 1);
        Decomposition back = parse_decomposition_json(print_decomposition_json(c));
        CHECK(tree_equal(back, c));
    }
}

TEST_CASE("json loader rejects malformed trees") {
    CHECK_THROWS_AS(parse_decomposition_json("{}"), ParseError);
    CHECK_THROWS_AS(parse_decomposition_json(R"({"op":"spin"})"), ParseError);
    // stated leaf id out of depth-first order
    CHECK_THROWS_AS(parse_decomposition_json(
                        R"({"op":"join","left":{"op":"const","color":0,"id":1},
                            "right":{"op":"const","color":0,"id":0}})"),
                    ParseError);
    // recolor map length must equal k
    CHECK_THROWS_AS(parse_decomposition_json(
                        R"({"base":0,"k":2,"symbols":["->"],
                            "tree":{"op":"recolor","map":[0],
                                    "child":{"op":"const","color":0}}})"),
                    ParseError);
    CHECK_THROWS_AS(parse_decomposition_json(
                        R"({"base":0,"k":1,"symbols":["->"],
                            "tree":{"op":"const","color":3}})"),
                    ParseError);
}

TEST_CASE("bare json nodes infer colors and symbols") {
    Decomposition c = parse_decomposition_json(
        R"({"op":"join","M":[["e","right",0,1]],
            "left":{"op":"const","color":0},
            "right":{"op":"const","color":1,"loops":["f"]}})");
    CHECK(c.sig.num_colors == 2);
    CHECK(c.sig.arc_symbols == std::vector<std::string>{"e", "f"});  // sorted names
    ColoredGraph cg = eval(c);
    CHECK(cg.g.has_arc(0, 0, 1));
    CHECK(cg.g.has_arc(1, 1, 1));
}

TEST_CASE("enumeration returns well-formed hole-free trees") {
    EnumOptions opts;
    opts.max_count = 50'000;
    std::vector<Decomposition> all = enumerate_decompositions(kSig, 2, opts);
    CHECK(all.size() > 4);
    for (const Decomposition& c : all) {
        c.check();
        CHECK(count_marked(c) == 0);
        CHECK(num_leaves(c) <= 2);
        eval(c);
    }
}

TEST_CASE("random decompositions are seed-deterministic") {
    std::mt19937 a(5), b(5);
    for (int i = 0; i < 10; ++i) {
        Decomposition x = random_decomposition(two_color_sig(), 5, a);
        Decomposition y = random_decomposition(two_color_sig(), 5, b);
        CHECK(tree_equal(x, y));
        CHECK(count_marked(x) == 0);
    }
    std::mt19937 c(6);
    Decomposition h = random_decomposition(two_color_sig(), 5, c, true);
    CHECK(count_marked(h) == 1);
}

TEST_CASE("builder rejects bad shapes") {
    CHECK_THROWS_AS(make_recolor({0, 1, 2}, make_constant(kSig, 0)), Error);
    CHECK_THROWS_AS(make_constant(kSig, 7), Error);
    CHECK_THROWS_AS(make_join({{0, JoinDir::LeftToRight, 0, 5}}, make_constant(kSig, 0),
                              make_constant(kSig, 0)),
                    Error);
    CHECK_THROWS_AS(balanced_union_tree(kSig, 3, false), Error);
}
