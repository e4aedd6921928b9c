#include <algorithm>
#include <random>

#include "doctest.h"
#include "msox/error.hpp"
#include "msox/graph.hpp"
#include "msox/graph_io.hpp"
#include "msox/model_check.hpp"

using namespace msox;

TEST_CASE("arc storage is a sorted set") {
    Graph g;
    g.sig = single_arc_signature();
    g.n = 3;
    g.add_arc(0, 2, 1);
    g.add_arc(0, 0, 1);
    g.add_arc(0, 0, 1);
    CHECK(g.arcs.size() == 2);
    CHECK(g.has_arc(0, 0, 1));
    CHECK(g.has_arc(0, 2, 1));
    CHECK_FALSE(g.has_arc(0, 1, 2));
    g.check();
}

TEST_CASE("check rejects out-of-range arcs and symbols") {
    Graph g;
    g.sig = single_arc_signature();
    g.n = 2;
    g.arcs.insert({0, 0, 5});
    CHECK_THROWS_AS(g.check(), Error);
    g.arcs.clear();
    g.arcs.insert({3, 0, 1});
    CHECK_THROWS_AS(g.check(), Error);
}

TEST_CASE("cycle graph has both directions of each rim arc") {
    Signature sig = single_arc_signature();
    Graph c3 = cycle_graph(3, sig);
    std::set<Arc> want = {{0, 0, 1}, {0, 1, 0}, {0, 1, 2}, {0, 2, 1}, {0, 2, 0}, {0, 0, 2}};
    CHECK(c3.arcs == want);
    CHECK(c3.n == 3);
}

TEST_CASE("clique with loops is every ordered pair") {
    Signature sig = single_arc_signature();
    Graph k2 = clique_with_loops(2, sig);
    std::set<Arc> want = {{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {0, 1, 1}};
    CHECK(k2.arcs == want);
    CHECK(edgeless_graph(3, sig).arcs.empty());
}

TEST_CASE("functional graph families") {
    Signature sig = single_arc_signature();
    Graph f = functional_graph({1, 0, 2}, sig);
    CHECK(f.has_arc(0, 0, 1));
    CHECK(f.has_arc(0, 1, 0));
    CHECK(f.has_arc(0, 2, 2));
    CHECK(f.arcs.size() == 3);
    CHECK(all_functional_graphs(2, sig).size() == 4);
    CHECK(all_graphs_one_symbol(2, sig).size() == 16);
}

TEST_CASE("disjoint union shifts the right operand") {
    Signature sig = single_arc_signature();
    Graph a = clique_with_loops(1, sig);  // one loop
    Graph b = cycle_graph(3, sig);
    Graph u = disjoint_union(a, b);
    CHECK(u.n == 4);
    CHECK(u.has_arc(0, 0, 0));
    CHECK(u.has_arc(0, 1, 2));
    CHECK(u.has_arc(0, 3, 1));
    CHECK_FALSE(u.has_arc(0, 0, 1));
    Graph three = disjoint_union_copies(a, 3);
    CHECK(three.n == 3);
    CHECK(three.arcs == std::set<Arc>{{0, 0, 0}, {0, 1, 1}, {0, 2, 2}});
}

TEST_CASE("permutation relabels arcs and unary sets") {
    Signature sig = single_arc_signature();
    sig.unary_symbols = {"zero"};
    Graph g;
    g.sig = sig;
    g.n = 3;
    g.unary.resize(1);
    g.add_arc(0, 0, 1);
    g.unary[0] = {0};
    Graph p = permute_vertices(g, {2, 0, 1});
    CHECK(p.has_arc(0, 2, 0));
    CHECK(p.unary[0] == std::set<int>{2});
    Graph back = permute_vertices(p, {1, 2, 0});
    CHECK(back == g);
}

TEST_CASE("encoding separates exactly the unequal graphs") {
    Signature sig = single_arc_signature();
    std::vector<Graph> all = all_graphs_one_symbol(2, sig);
    for (size_t i = 0; i < all.size(); ++i)
        for (size_t j = i + 1; j < all.size(); ++j)
            CHECK(encode_graph(all[i]) != encode_graph(all[j]));
    CHECK(encode_graph(all[3]) == encode_graph(all[3]));
}

TEST_CASE("isomorphism ignores numbering but not structure") {
    Signature sig = single_arc_signature();
    Graph c4 = cycle_graph(4, sig);
    Graph r = permute_vertices(c4, {2, 3, 1, 0});
    CHECK_FALSE(graph_equal(c4, r));
    CHECK(isomorphic_small(c4, r));
    CHECK_FALSE(isomorphic_small(c4, edgeless_graph(4, sig)));
    CHECK_THROWS_AS(isomorphic_small(edgeless_graph(9, sig), edgeless_graph(9, sig)),
                    GuardExceeded);
}

TEST_CASE("uniform coloring assigns color zero everywhere") {
    ColoredGraph cg = uniform_coloring(cycle_graph(4, single_arc_signature()));
    CHECK(cg.colors == std::vector<int>{0, 0, 0, 0});
    CHECK(underlying(cg).n == 4);
    cg.check();
}

TEST_CASE("graph text round-trips") {
    Signature sig{{"->", "<="}, {"zero"}, 1};
    Graph g;
    g.sig = sig;
    g.n = 3;
    g.unary.resize(1);
    g.add_arc(0, 0, 1);
    g.add_arc(1, 2, 2);
    g.unary[0] = {0, 2};
    Graph back = parse_graph_text(print_graph_text(g));
    CHECK(back == g);
}

TEST_CASE("graph text rejects malformed input") {
    CHECK_THROWS_AS(parse_graph_text("graph sig=->\n"), ParseError);
    CHECK_THROWS_AS(parse_graph_text("graph n=2 sig=->\narc ?? 0 1\n"), ParseError);
    CHECK_THROWS_AS(parse_graph_text("graph n=2 sig=->\narc -> 0 7\n"), ParseError);
}

TEST_CASE("random relabelings keep the encoding of sorted structures distinct") {
    Signature sig = single_arc_signature();
    std::mt19937 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = edgeless_graph(4, sig);
        for (int u = 0; u < 4; ++u)
            for (int v = 0; v < 4; ++v)
                if (rng() % 2) g.add_arc(0, u, v);
        std::vector<int> perm = {0, 1, 2, 3};
        std::shuffle(perm.begin(), perm.end(), rng);
        Graph p = permute_vertices(g, perm);
        CHECK(isomorphic_small(g, p));
    }
}
