#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "msox/formula.hpp"
#include "msox/graph.hpp"

namespace msox {

struct ModelCheckOptions {
    // Bounds fail loudly instead of running forever.  Set iteration is a
    // 2^n sweep, so it gets the tight default.
    int max_n_with_sets = 8;
    int max_n_first_order = 64;
};

// Truth of a closed formula in g by exhaustive quantifier expansion.
// Set values iterate in binary counter order; evaluation short-circuits.
bool models(const Graph& g, const FormulaPtr& f, const ModelCheckOptions& opts = {});
bool models(const ColoredGraph& g, const FormulaPtr& f, const ModelCheckOptions& opts = {});

// Sizes |G| realized by models of f within the universe.
std::set<int> spectrum_sample(const FormulaPtr& f, const std::vector<Graph>& universe,
                              const ModelCheckOptions& opts = {});

struct PairClassification {
    int num_models = 0;          // G |= psi & chi
    int num_counter_models = 0;  // G |= !psi & chi
    std::set<int> shared_sizes;  // sizes realized by both kinds
};

PairClassification classify_pair(const FormulaPtr& psi, const FormulaPtr& chi,
                                 const std::vector<Graph>& universe,
                                 const ModelCheckOptions& opts = {});

// -- small graph universes used by fixtures and demos --

// All graphs over one arc symbol with exactly n vertices (2^(n*n) of them).
std::vector<Graph> all_graphs_one_symbol(int n, const Signature& sig);

// Bidirectional cycle on n >= 3 vertices: arcs i->i+1 and i+1->i (mod n).
Graph cycle_graph(int n, const Signature& sig);

// Complete graph including self loops (every ordered pair is an arc).
Graph clique_with_loops(int n, const Signature& sig);

// Edgeless graph.
Graph edgeless_graph(int n, const Signature& sig);

// Out-degree exactly one everywhere: vertex v points at succ[v].
Graph functional_graph(const std::vector<int>& succ, const Signature& sig);

// Every functional graph on exactly n vertices (n^n of them).
std::vector<Graph> all_functional_graphs(int n, const Signature& sig);

}  // namespace msox
