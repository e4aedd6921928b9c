#pragma once

#include <utility>
#include <vector>

#include "msox/decomposition.hpp"
#include "msox/formula.hpp"
#include "msox/model_check.hpp"
#include "msox/mso_type.hpp"

namespace msox {

// Cut of a decomposition into start / repeat / end pieces such that gluing
// s r^l e satisfies `target` for every l >= 0; at l = 0 the glue rebuilds
// the graph the cut came from.
struct PumpTriple {
    Decomposition s;  // one hole
    Decomposition r;  // one hole, at least one constant leaf
    Decomposition e;  // hole-free
    FormulaPtr target;
    int m = 0;
};

// Two same-sized letters: any word over {g, b} glued between s and e keeps
// the side condition chi, and satisfies `target` exactly when the word is
// b-free.  (negated records whether target is psi or its negation.)
struct PumpQuad {
    Decomposition s, g, b;  // one hole each
    Decomposition e;        // hole-free
    FormulaPtr psi, chi;
    FormulaPtr target;
    bool negated = false;
    int m = 0;
};

// Parallel pumps whose results agree in size at every power: the positive
// side satisfies psi & chi throughout, the negative side !psi & chi.
struct PumpPair {
    PumpTriple pos;
    PumpTriple neg;
};

Decomposition pump_tree(const PumpTriple& t, int ell);
ColoredGraph pump_graph(const PumpTriple& t, int ell);

// word[i] = true selects the b letter.
Decomposition quad_tree(const PumpQuad& q, const std::vector<bool>& word);
ColoredGraph quad_graph(const PumpQuad& q, const std::vector<bool>& word);

// Finds two nested join nodes with equal rank-m summaries (closest pair by
// leaf-count gap, deepest on ties), cuts the tree there, and brute-checks
// powers 0..verify_powers.  Throws NoRepeatedType when the tree is too
// small to contain such a pair.
PumpTriple extract_pump(const Decomposition& c, const FormulaPtr& phi, int m,
                        const TypeOptions& topts = {}, const ModelCheckOptions& mc = {},
                        int verify_powers = 3);

// Replaces r by r glued to itself idempotent_power(recoloring(r)) times, so
// the repeat piece's recoloring becomes idempotent.
PumpTriple make_idempotent(const PumpTriple& t);

// Same-size letter pair for a union-stable side condition.  The universe
// lists hole-free decompositions of chi-models over colors < k; it must
// contain one big enough to pump.  verify_absorption forwards to the
// saturation step (affordable only at small rank).
PumpQuad stable_pump(const FormulaPtr& psi, const FormulaPtr& chi,
                     const std::vector<Decomposition>& universe, int m, int k,
                     int l_test = 3, bool verify_absorption = true,
                     const TypeOptions& topts = {}, const ModelCheckOptions& mc = {});

// Parallel pumps from equal-size model/counter-model decomposition pairs;
// repeat pieces are cross-replicated so both sides grow at the same rate.
PumpPair unstable_pump(const FormulaPtr& psi, const FormulaPtr& chi,
                       const std::vector<std::pair<Decomposition, Decomposition>>& pairs,
                       int m, const TypeOptions& topts = {}, const ModelCheckOptions& mc = {},
                       int verify_powers = 3);

bool verify_pump(const PumpTriple& t, int max_power = 3, const ModelCheckOptions& mc = {});
bool verify_quad(const PumpQuad& q, int max_len = 3, const ModelCheckOptions& mc = {});
bool verify_pair(const PumpPair& p, int max_power = 3, const ModelCheckOptions& mc = {});

}  // namespace msox
