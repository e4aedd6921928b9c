#include <cstdio>
#include <random>

#include "doctest.h"
#include "msox/error.hpp"
#include "msox/graph.hpp"
#include "msox/model_check.hpp"
#include "msox/succinct.hpp"

using namespace msox;

namespace {

Graph random_graph(int n, const Signature& sig, unsigned seed) {
    std::mt19937 rng(seed);
    Graph g;
    g.sig = sig;
    g.n = n;
    g.unary.resize(sig.unary_symbols.size());
    for (int s = 0; s < (int)sig.arc_symbols.size(); ++s)
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (rng() & 1) g.add_arc(s, u, v);
    for (auto& set : g.unary)
        for (int v = 0; v < n; ++v)
            if (rng() & 1) set.insert(v);
    g.check();
    return g;
}

const Signature kSig = single_arc_signature();

}  // namespace

TEST_CASE("address width") {
    CHECK(addr_bits(1) == 0);
    CHECK(addr_bits(2) == 1);
    CHECK(addr_bits(3) == 2);
    CHECK(addr_bits(4) == 2);
    CHECK(addr_bits(5) == 3);
    CHECK(addr_bits(8) == 3);
    CHECK(addr_bits(9) == 4);
    CHECK_THROWS_AS(addr_bits(0), Error);
}

TEST_CASE("decode undoes explicit encoding, exhaustively on small sizes") {
    for (int n = 1; n <= 3; ++n) {
        for (const Graph& g : all_graphs_one_symbol(n, kSig)) {
            Graph back = decode(encode_explicit(g));
            CHECK(graph_equal(back, g));
        }
    }
}

TEST_CASE("decode undoes explicit encoding on random multi-symbol graphs") {
    Signature sig{{"->", "<="}, {}, 1};
    for (int n : {4, 5})
        for (unsigned seed = 0; seed < 10; ++seed) {
            Graph g = random_graph(n, sig, seed * 100 + n);
            CHECK(graph_equal(decode(encode_explicit(g)), g));
        }
}

TEST_CASE("unary predicates survive the encoding") {
    Signature sig{{"->"}, {"zero", "mark"}, 1};
    Graph g;
    g.sig = sig;
    g.n = 5;
    g.unary = {{0}, {1, 3}};
    g.add_arc(0, 0, 1);
    g.add_arc(0, 4, 4);
    g.check();
    SuccinctGraph sg = encode_explicit(g);
    REQUIRE(sg.unary_circuit.has_value());
    CHECK(graph_equal(decode(sg), g));
    for (unsigned seed = 0; seed < 5; ++seed) {
        Graph r = random_graph(4, sig, 7000 + seed);
        CHECK(graph_equal(decode(encode_explicit(r)), r));
    }
}

TEST_CASE("one vertex needs zero address bits") {
    Graph g = edgeless_graph(1, kSig);
    g.add_arc(0, 0, 0);
    SuccinctGraph sg = encode_explicit(g);
    CHECK(sg.arc_circuit.num_inputs == 0);
    CHECK(graph_equal(decode(sg), g));
    CHECK(graph_equal(decode(parse_succinct_text(print_succinct_text(sg))), g));
}

TEST_CASE("decode refuses vertex counts past the guard") {
    SuccinctGraph sg = encode_explicit(edgeless_graph(10, kSig));
    CHECK_THROWS_AS(decode(sg, 9), GuardExceeded);
    CHECK(decode(sg, 10).n == 10);
}

TEST_CASE("text round-trip") {
    Graph g = cycle_graph(5, kSig);
    SuccinctGraph sg = encode_explicit(g);
    std::string text = print_succinct_text(sg);
    CHECK(text.rfind("succinct N=5 sig=->", 0) == 0);
    SuccinctGraph back = parse_succinct_text(text);
    CHECK(back.n == 5);
    CHECK(back.sig == sg.sig);
    CHECK(graph_equal(decode(back), g));
}

TEST_CASE("a handwritten description decodes as stated") {
    std::string text =
        "# the single arc 0 -> 1\n"
        "succinct N=2 sig=->\n"
        "\n"
        "inputs 2\n"
        "g0 = INPUT 0\n"
        "g1 = INPUT 1\n"
        "g2 = NOT g0\n"
        "g3 = AND g2 g1\n"
        "outputs g3\n";
    Graph g = decode(parse_succinct_text(text));
    CHECK(g.n == 2);
    CHECK(g.arcs == std::set<Arc>{{0, 0, 1}});
}

TEST_CASE("malformed descriptions are rejected") {
    CHECK_THROWS_AS(parse_succinct_text(""), ParseError);
    CHECK_THROWS_AS(parse_succinct_text("graph n=2 sig=->\n"), ParseError);
    CHECK_THROWS_AS(parse_succinct_text("succinct N=x sig=->\ninputs 0\noutputs\n"), ParseError);
    CHECK_THROWS_AS(parse_succinct_text("succinct N=2 sig=-> extra=1\n"), ParseError);
    CHECK_THROWS_AS(parse_succinct_text("succinct N=2\ninputs 2\ng0 = CONST 0\noutputs g0\n"),
                    ParseError);
}

TEST_CASE("unary circuits have no file form") {
    Graph g = edgeless_graph(2, Signature{{"->"}, {"zero"}, 1});
    g.unary = {{0}};
    SuccinctGraph sg = encode_explicit(g);
    CHECK_THROWS_AS(print_succinct_text(sg), Error);
}

TEST_CASE("structural validation") {
    SuccinctGraph sg = encode_explicit(cycle_graph(3, kSig));
    sg.arc_circuit.num_inputs = 3;
    CHECK_THROWS_AS(sg.check(), Error);
    sg = encode_explicit(cycle_graph(3, kSig));
    sg.arc_circuit.outputs.push_back(sg.arc_circuit.outputs[0]);
    CHECK_THROWS_AS(sg.check(), Error);
    sg = encode_explicit(cycle_graph(3, kSig));
    sg.n = 0;
    CHECK_THROWS_AS(sg.check(), Error);
}

TEST_CASE("file io") {
    std::string path = "succinct_tests_tmp.sg";
    SuccinctGraph sg = encode_explicit(clique_with_loops(3, kSig));
    write_succinct_file(path, sg);
    SuccinctGraph back = read_succinct_file(path);
    CHECK(graph_equal(decode(back), clique_with_loops(3, kSig)));
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_succinct_file("no_such_dir/nope.sg"), IoError);
}
