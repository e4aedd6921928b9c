#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "msox/circuit.hpp"
#include "msox/cnf.hpp"
#include "msox/graph.hpp"
#include "msox/model_check.hpp"
#include "msox/pumping.hpp"
#include "msox/succinct.hpp"

namespace msox {

// Block kinds for vertices of a glued word s w e.  Triples only use the
// first three; quads distinguish the good letter from the bad one.
enum BlockKind : int {
    kBlockStart = 0,
    kBlockEnd = 1,
    kBlockRepeat = 2,  // triple r, quad g
    kBlockBad = 3,     // quad b
};

// Vertex layout of eval_delta_blocks(s w e): the start piece first, then
// the |w| letters in order, then the end piece.
struct BlockLayout {
    long long start = 0;   // leaves of s
    long long letter = 0;  // leaves of one letter (r, or g = b)
    long long end = 0;     // leaves of e
    long long ell = 0;     // number of letters

    long long total() const { return start + ell * letter + end; }
    // copy index: 0 for the start block, 1..ell for letters, ell+1 for end
    long long copy_of(long long v) const;
    long long relative_of(long long v) const;
};

// One observed arc pattern between two vertices of a glued word, keyed by
// where each endpoint sits.  The copy gap is clamped to [-2, 2]: an
// idempotent letter recoloring makes one crossing look like any larger
// number of crossings, so wider gaps never produce new answers.
struct CaseKey {
    int kind_u = 0, kind_v = 0;
    int rel_u = 0, rel_v = 0;
    int gap = 0;
    auto operator<=>(const CaseKey&) const = default;
};

// Exhaustive arc behaviour of a pump family, built by gluing and decoding
// every short word.  bits masks arc symbols in signature order.
struct EdgeCaseTable {
    int nsym = 0;
    std::map<CaseKey, uint32_t> bits;
};

// 0 for keys never observed.
uint32_t table_lookup(const EdgeCaseTable& t, const CaseKey& k);

// Evaluates s r^j e for j = 0..max_len and records every vertex pair under
// its key.  Throws ConsistencyViolation when the same key is seen with two
// different arc masks (the symptom of a non-idempotent repeat recoloring).
EdgeCaseTable edge_case_table(const PumpTriple& t, int max_len = 3);
// Same over all words in {g, b}^<=max_len.
EdgeCaseTable edge_case_table(const PumpQuad& q, int max_len = 3);

// Circuit fragment mapping a vertex encoding to its block position.  copy
// and rel are wide enough that copy+1 cannot wrap and the in-letter offset
// always fits, whichever of the address and the letter needs more bits.
// in_s / in_mid / in_e are the block-membership bits.  Gate count depends
// only on the bit widths, never on the sizes wired in.
struct BlockPosition {
    CircuitBuilder::Vec copy;
    CircuitBuilder::Vec rel;
    int in_s = -1, in_mid = -1, in_e = -1;
};

BlockPosition block_position(CircuitBuilder& b, const CircuitBuilder::Vec& v,
                             const BlockLayout& lay);

// Arc outputs (one per symbol) for endpoints u, v given their block
// positions and per-kind membership bits (indexed by BlockKind; unused
// kinds wired to constant false).
CircuitBuilder::Vec table_match(CircuitBuilder& b, const EdgeCaseTable& table,
                                const BlockPosition& u, const BlockPosition& v,
                                const CircuitBuilder::Vec& kind_u,
                                const CircuitBuilder::Vec& kind_v);

// Succinct form of eval_delta_blocks(s r^ell e); decode gives the identical
// arc set.  Requires an idempotent repeat recoloring (run make_idempotent
// first).  Gate count is A + B*ceil(log2 N) with A, B fixed by the pieces.
SuccinctGraph pump_circuit(const PumpTriple& t, long long ell, int table_words = 3);

// Succinct form of s w e where letter i of w (1-based copy index) is b
// exactly when i-1 encodes a satisfying assignment of cnf; ell = 2^n.  The
// kind bit is computed by an embedded evaluator for cnf, so the output size
// stays polynomial in n while N is exponential.
SuccinctGraph sat_reduction(const PumpQuad& q, const CnfInstance& cnf, int table_words = 3);

// A circuit-value instance: evaluate at the all-zero input, one output.
struct CvpInstance {
    BoolCircuit circuit;
    void check() const;
};

// Pump circuits for both sides of the pair at ell = gate count of cvp,
// multiplexed on the embedded cvp output; decode models psi exactly when
// cvp evaluates to 1.  Both sides share N by the pair's size invariant.
SuccinctGraph cvp_reduction(const PumpPair& p, const CvpInstance& cvp, int table_words = 3);

// N = 2^n vertices over symbols {"->", "<="}: v carries a loop iff v
// encodes a satisfying assignment, and <= orders satisfying assignments
// below falsifying ones (integer order inside each class).  The minimum
// of <= has a loop iff cnf is satisfiable.
SuccinctGraph min_order_reduction(const CnfInstance& cnf);

// Decision table for psi restricted to looped cliques and edgeless graphs:
// below the threshold answers come from the stored model list; above it one
// probe of the arc circuit at (0, 0) picks the stabilized side truth.
struct XiFixture {
    FormulaPtr psi;
    int threshold = 0;
    std::vector<Graph> small_models;  // models of psi among both families
    bool clique_truth = false;        // psi on large looped cliques
    bool independent_truth = false;   // psi on large edgeless graphs
};

// Sweeps both families up to the threshold.  Cliques carry loops: that is
// what makes the (0, 0) probe separate the families.
XiFixture make_xi_fixture(const FormulaPtr& psi, int threshold,
                          const ModelCheckOptions& mc = {});

// Promise: decode(sg) is a looped clique or an edgeless graph.  Inputs
// outside the promise give unspecified answers.
bool xi_decider(const SuccinctGraph& sg, const XiFixture& fx, int decode_guard = 4096);

}  // namespace msox
