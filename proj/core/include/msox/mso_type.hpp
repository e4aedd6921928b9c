#pragma once

#include <optional>
#include <string>
#include <vector>

#include "msox/decomposition.hpp"
#include "msox/formula.hpp"
#include "msox/graph.hpp"
#include "msox/model_check.hpp"

namespace msox {

struct TypeOptions {
    // Full set-move expansion (2^n branches per level) kicks in for rank
    // budget >= 2; above this bound it fails loudly.  A set move with no
    // quantifier after it only contributes membership patterns over the
    // pinned vertices, so rank <= 1 has no such bound.
    int max_n_full_sets = 8;
    // hard cap from the uint64_t set representation
    int max_n = 64;
};

// opts with the set-sweep bound lifted to n (capped at 26), for checks that
// grow a graph past the caller's working size.
TypeOptions raised_for(const TypeOptions& opts, int n);

// Rank-m behavior summary of a colored graph: two summaries are equal iff
// the graphs satisfy the same closed formulas of quantifier rank <= m over
// arcs, unary predicates and colors.  Values are interned process-wide, so
// equality is an id comparison.  A witness graph realizing the summary rides
// along for operations that need a concrete representative.
struct MsoType {
    int id = -1;
    int rank_m = 0;
    ColoredGraph witness;

    bool operator==(const MsoType& o) const { return id == o.id; }
    bool operator!=(const MsoType& o) const { return id != o.id; }
};

MsoType type_of(const ColoredGraph& g, int m, const TypeOptions& opts = {});
MsoType type_of(const Graph& g, int m, const TypeOptions& opts = {});

// Truth of a closed formula decided from the summary alone (no graph access).
// Requires rank(f) <= t.rank_m.
bool type_models(const MsoType& t, const FormulaPtr& f);

// Deterministic serialization of the summary structure, and a short digest
// of it (stable for a given build of this library, not an interchange format).
std::string type_canonical(const MsoType& t);
std::string type_digest(const MsoType& t);

// Summary of the disjoint union, computed through the attached witnesses;
// well defined by compositionality.
MsoType union_type(const MsoType& a, const MsoType& b, const TypeOptions& opts = {});

// Least N >= 1 with type(N copies) == type(N+1 copies).  The map
// t -> union(t, t0) acts on finitely many summaries, so this terminates;
// max_copies guards against a bound set too tight.
int stabilization_count(const ColoredGraph& g, int m, const TypeOptions& opts = {},
                        int max_copies = 16);

// Recipe for a graph absorbing every summary the universe realizes.
struct SaturationPlan {
    std::vector<int> rep_index;   // position of each summary's representative
    std::vector<int> copies;      // stabilization count of that representative
    std::vector<MsoType> types;   // in order of first appearance
};
SaturationPlan saturation_plan(const std::vector<ColoredGraph>& universe, int m,
                               const TypeOptions& opts = {});

// Disjoint union of `copies` copies of each representative.  Checks every
// universe member satisfies chi, and that the result itself does; when
// verify_absorption is set, also checks type(G + omega) == type(omega) for
// every member G (feasible only at small rank and size).
Graph saturating_graph(const std::vector<Graph>& universe, int m, const FormulaPtr& chi,
                       bool verify_absorption, const TypeOptions& opts = {},
                       const ModelCheckOptions& mc = {});

// Summary of each hole-free subtree, indexed by node pool position; nodes
// whose subtree contains the hole get nullopt.
std::vector<std::optional<MsoType>> annotate_types(const Decomposition& c, int m,
                                                   const TypeOptions& opts = {});

// Gluing the same context onto summary-equal trees yields summary-equal
// results; checks one instance.  Throws when the operands are not
// summary-equal to begin with.
bool check_compositionality(const Decomposition& context, const Decomposition& a,
                            const Decomposition& b, int m, const TypeOptions& opts = {});

}  // namespace msox
