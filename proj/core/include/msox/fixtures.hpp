#pragma once

#include <string>
#include <utility>
#include <vector>

#include "msox/decomposition.hpp"
#include "msox/formula.hpp"
#include "msox/graph.hpp"

namespace msox {

// -- formula corpus (programmatic twins of the files under fixtures/) --

FormulaPtr psi1_formula();           // exists x. exists y. x -> y
FormulaPtr psi2_formula();           // forall x. forall y. x -> y
FormulaPtr xi_formula();             // every arc present, or none at all
FormulaPtr has_loop_formula();       // exists x. x -> x
FormulaPtr deterministic_formula();  // -> has out-degree at most one
FormulaPtr total_order_formula();    // <= is a total order
FormulaPtr cycle_formula();          // connected, symmetric, locally 2-regular
FormulaPtr bipartite_formula();      // a set splits every arc
FormulaPtr min_loop_formula();       // the <=-minimum carries a loop
FormulaPtr zero_loop_formula();      // some zero-marked vertex carries a loop
FormulaPtr unique_zero_formula();    // exactly one zero-marked vertex

struct NamedFormula {
    std::string file;  // name under fixtures/
    FormulaPtr f;
    int stated_rank = 0;
};
std::vector<NamedFormula> formula_corpus();

// -- decomposition builders shared by fixtures and tests --

// Left-leaning chain of plain unions over single-vertex constants.
Decomposition union_chain(const Signature& sig, int count, bool looped);
// Chain of joins arcing every pair in both directions (loops on the leaves
// make each power a complete looped graph).
Decomposition full_join_chain(const Signature& sig, int count, bool looped);
// Balanced variants of the two above (count must be a power of two).
Decomposition balanced_union_tree(const Signature& sig, int count, bool looped);
Decomposition balanced_full_join_tree(const Signature& sig, int count, bool looped);

// -- pumping fixtures --

struct PumpFixture {
    Decomposition tree;
    FormulaPtr phi;
    int m = 2;
};

// Eight looped vertices under plain unions; a loop survives every power.
PumpFixture loop_union_fixture();
// Eight looped vertices under full joins; every power is a complete looped
// graph, so an arc always exists.
PumpFixture looped_clique_fixture();

// -- stable-pump fixtures --

struct StableFixture {
    FormulaPtr psi, chi;
    std::vector<Decomposition> universe;
    int m = 2;
    int k = 1;
    bool verify_absorption = true;
};

// psi1 under no side condition: edgeless chains carry the pump and a
// looped member forces the negated branch.
StableFixture arc_under_true_fixture();
// Loop existence under determinism: deterministic members only, rank 3
// (absorption checking is skipped; it is priced out at this rank).
StableFixture fixed_point_fixture();

// -- parallel-pump fixture: psi1 under xi --

struct PairFixture {
    FormulaPtr psi, chi;
    std::vector<std::pair<Decomposition, Decomposition>> pairs;
    int m = 2;
};

// Size-matched looped cliques against edgeless graphs.
PairFixture clique_edgeless_pair_fixture();

// All functional graphs on one or two vertices (the saturation demo).
std::vector<Graph> functional_universe();

}  // namespace msox
