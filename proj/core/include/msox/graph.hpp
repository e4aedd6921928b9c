#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "msox/signature.hpp"

namespace msox {

// Arc (sym, src, dst); sym indexes Signature::arc_symbols.
using Arc = std::tuple<int, int, int>;

// Finite graph with labeled arcs and unary predicate sets.  Vertices are the
// dense range 0..n-1.  Arc and predicate sets are kept sorted, so structural
// equality is just member equality.
struct Graph {
    Signature sig;
    int n = 0;
    std::set<Arc> arcs;
    std::vector<std::set<int>> unary;  // one set per sig.unary_symbols entry

    bool has_arc(int sym, int u, int v) const { return arcs.count({sym, u, v}) > 0; }
    void add_arc(int sym, int u, int v);
    void check() const;  // bounds and symbol indexes

    bool operator==(const Graph&) const = default;
};

// Graph plus a color per vertex, the working object of decomposition
// evaluation and of type computation.  sig.num_colors bounds the colors.
struct ColoredGraph {
    Graph g;
    std::vector<int> colors;

    void check() const;
    bool operator==(const ColoredGraph&) const = default;
};

Graph disjoint_union(const Graph& a, const Graph& b);
ColoredGraph disjoint_union(const ColoredGraph& a, const ColoredGraph& b);
Graph disjoint_union_copies(const Graph& g, int copies);
ColoredGraph disjoint_union_copies(const ColoredGraph& g, int copies);

ColoredGraph uniform_coloring(const Graph& g);     // every vertex color 0
const Graph& underlying(const ColoredGraph& cg);   // forgets colors

bool graph_equal(const Graph& a, const Graph& b);  // labeled equality

// Exhaustive isomorphism test; throws GuardExceeded when n > max_n.
bool isomorphic_small(const Graph& a, const Graph& b, int max_n = 8);

// Deterministic byte encoding; equal strings iff equal structures.
std::string encode_graph(const Graph& g);
std::string encode_graph(const ColoredGraph& g);

// Renumber vertices: vertex v becomes perm[v].
Graph permute_vertices(const Graph& g, const std::vector<int>& perm);
ColoredGraph permute_vertices(const ColoredGraph& g, const std::vector<int>& perm);

}  // namespace msox
