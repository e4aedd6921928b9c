#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "msox/graph.hpp"

namespace msox {

enum class NodeOp { Constant, Marked, Recolor, Join };

// Direction of arcs a join rule introduces between the two operand blocks.
enum class JoinDir { LeftToRight, RightToLeft };

// LeftToRight (sym, from, to): arcs from every left-block vertex colored
// `from` to every right-block vertex colored `to`.  RightToLeft: from every
// right-block vertex colored `from` to every left-block vertex colored `to`.
struct JoinRule {
    int sym = 0;
    JoinDir dir = JoinDir::LeftToRight;
    int from_color = 0;
    int to_color = 0;
    auto operator<=>(const JoinRule&) const = default;
};

struct DecompNode {
    NodeOp op = NodeOp::Constant;
    int color = 0;           // Constant
    std::vector<int> loops;  // Constant: arc symbols looped at the vertex
    int stated_id = -1;      // Constant: optional id from the input file
    std::vector<int> map;    // Recolor: new_color = map[old_color]
    std::vector<JoinRule> rules;  // Join, kept sorted
    int child = -1;               // Recolor
    int left = -1, right = -1;    // Join
};

// Term over {constant, recolor, join} with at most one hole ("marked" leaf).
// Nodes live in a pool; `root` is the tree entry.  Leaves are ordered by
// depth-first traversal (join: left before right).
struct Decomposition {
    Signature sig;  // arc symbols + num_colors; unary symbols stay empty
    std::vector<DecompNode> nodes;
    int root = -1;

    void check() const;
    int k() const { return sig.num_colors; }
};

Decomposition make_constant(const Signature& sig, int color,
                            const std::vector<int>& loop_syms = {}, int stated_id = -1);
Decomposition make_marked(const Signature& sig);
Decomposition make_recolor(const std::vector<int>& map, const Decomposition& child);
Decomposition make_join(const std::vector<JoinRule>& rules, const Decomposition& left,
                        const Decomposition& right);
// join with an empty rule set: plain disjoint union
Decomposition make_union(const Decomposition& left, const Decomposition& right);

bool tree_equal(const Decomposition& a, const Decomposition& b);
int count_marked(const Decomposition& c);   // 0 or 1 after check()
int num_leaves(const Decomposition& c);     // constants only, hole excluded
int join_depth(const Decomposition& c);     // max joins on a root-to-leaf path

// Underlying colored graph; vertices numbered by leaf order.  Trees with a
// hole evaluate the hole as the empty graph (used by width); eval() proper
// refuses them.
ColoredGraph eval(const Decomposition& c);
ColoredGraph eval_with_hole_empty(const Decomposition& c);

// Number of colors that actually occur somewhere during evaluation.
int width(const Decomposition& c);

// Substitute d for the hole of c.
Decomposition glue(const Decomposition& c, const Decomposition& d);

// Left fold of glue over pieces; every piece except the last must have a
// hole, the last may be hole-free.
Decomposition delta_fold(const std::vector<Decomposition>& pieces);

// eval(delta_fold(pieces)) renumbered so piece 0's vertices come first (in
// its own leaf order), then piece 1's, and so on.
ColoredGraph eval_delta_blocks(const std::vector<Decomposition>& pieces);

// -- recolorings as functions [k] -> [k] --

using Recoloring = std::vector<int>;

Recoloring identity_recoloring(int k);
Recoloring compose(const Recoloring& f, const Recoloring& g);  // f after g
bool is_idempotent(const Recoloring& f);
// least t >= 1 with f^t idempotent (exists, and t*i <= k!+1 for some i)
int idempotent_power(const Recoloring& f);

// Composite of the recolor maps met walking from the hole up to the root.
Recoloring recoloring(const Decomposition& c);

// -- generators --

struct EnumOptions {
    bool wrap_recolor = true;  // also emit one non-identity recolor above each tree
    size_t max_count = 2'000'000;
};

// Every tree with at most max_leaves constant leaves (no holes).  Join rule
// sets range over all subsets, so keep the bounds tiny.
std::vector<Decomposition> enumerate_decompositions(const Signature& sig, int max_leaves,
                                                    const EnumOptions& opts = {});

// Seeded stream for randomized trials; at most max_leaves constants.
Decomposition random_decomposition(const Signature& sig, int max_leaves, std::mt19937& rng,
                                   bool with_hole = false);

}  // namespace msox
