#include "msox/reductions.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <numeric>

#include "msox/error.hpp"

namespace msox {

long long BlockLayout::copy_of(long long v) const {
    if (v < start) return 0;
    if (v >= start + ell * letter) return ell + 1;
    return 1 + (v - start) / letter;
}

long long BlockLayout::relative_of(long long v) const {
    if (v < start) return v;
    if (v >= start + ell * letter) return v - (start + ell * letter);
    return (v - start) % letter;
}

uint32_t table_lookup(const EdgeCaseTable& t, const CaseKey& k) {
    auto it = t.bits.find(k);
    return it == t.bits.end() ? 0u : it->second;
}

namespace {

int clamp_gap(long long d) { return (int)std::clamp(d, -2ll, 2ll); }

// Glues s w e, then files the arc mask of every ordered vertex pair under
// its case key.  Conflicting observations for one key are the detection
// point for non-idempotent repeat recolorings.
void record_word(const Decomposition& s, const Decomposition& e,
                 const std::vector<const Decomposition*>& letters,
                 const std::vector<int>& letter_kinds, EdgeCaseTable& table) {
    std::vector<Decomposition> pieces;
    pieces.reserve(letters.size() + 2);
    pieces.push_back(s);
    for (const Decomposition* l : letters) pieces.push_back(*l);
    pieces.push_back(e);

    const int t = (int)pieces.size();
    std::vector<int> kind(t), base(t), size(t);
    for (int i = 0; i < t; ++i) {
        size[i] = num_leaves(pieces[i]);
        base[i] = i == 0 ? 0 : base[i - 1] + size[i - 1];
        kind[i] = i == 0 ? kBlockStart : i == t - 1 ? kBlockEnd : letter_kinds[i - 1];
    }

    ColoredGraph g = eval_delta_blocks(pieces);
    const int nsym = (int)g.g.sig.arc_symbols.size();
    if (nsym > 32) throw GuardExceeded("edge_case_table: more than 32 arc symbols");
    if (table.nsym == 0) table.nsym = nsym;
    if (table.nsym != nsym) throw SignatureMismatch("edge_case_table: symbol count changed");

    auto piece_of = [&](int v) {
        return int(std::upper_bound(base.begin(), base.end(), v) - base.begin()) - 1;
    };

    for (int u = 0; u < g.g.n; ++u) {
        const int pu = piece_of(u);
        for (int v = 0; v < g.g.n; ++v) {
            const int pv = piece_of(v);
            uint32_t mask = 0;
            for (int sy = 0; sy < nsym; ++sy)
                if (g.g.has_arc(sy, u, v)) mask |= 1u << sy;
            CaseKey key{kind[pu], kind[pv], u - base[pu], v - base[pv],
                        clamp_gap((long long)pv - pu)};
            auto [it, fresh] = table.bits.emplace(key, mask);
            if (!fresh && it->second != mask)
                throw ConsistencyViolation("edge_case_table: one key observed with two arc masks");
        }
    }
}

}  // namespace

EdgeCaseTable edge_case_table(const PumpTriple& t, int max_len) {
    if (max_len < 1) throw Error("edge_case_table: need words of length >= 1");
    EdgeCaseTable table;
    for (int len = 0; len <= max_len; ++len) {
        std::vector<const Decomposition*> letters(len, &t.r);
        std::vector<int> kinds(len, kBlockRepeat);
        record_word(t.s, t.e, letters, kinds, table);
    }
    return table;
}

EdgeCaseTable edge_case_table(const PumpQuad& q, int max_len) {
    if (max_len < 1) throw Error("edge_case_table: need words of length >= 1");
    if (num_leaves(q.g) != num_leaves(q.b))
        throw Error("edge_case_table: letter sizes differ");
    EdgeCaseTable table;
    for (int len = 0; len <= max_len; ++len) {
        for (uint32_t w = 0; w < (1u << len); ++w) {
            std::vector<const Decomposition*> letters(len);
            std::vector<int> kinds(len);
            for (int i = 0; i < len; ++i) {
                bool bad = w >> i & 1u;
                letters[i] = bad ? &q.b : &q.g;
                kinds[i] = bad ? kBlockBad : kBlockRepeat;
            }
            record_word(q.s, q.e, letters, kinds, table);
        }
    }
    return table;
}

BlockPosition block_position(CircuitBuilder& b, const CircuitBuilder::Vec& v,
                             const BlockLayout& lay) {
    if (lay.letter <= 0) throw Error("block_position: letter size must be positive");
    const int wr = std::max(1, (int)std::bit_width((uint64_t)lay.letter));
    // room for copy+1, the end offset, and the divmod remainder: tiny words
    // can have fewer address bits than the letter size needs
    const int ww = std::max((int)v.size(), wr) + 1;
    auto vx = b.zero_extend(v, ww);
    auto cs = b.const_vec((uint64_t)lay.start, ww);
    auto cme = b.const_vec((uint64_t)(lay.start + lay.ell * lay.letter), ww);

    BlockPosition p;
    p.in_s = b.less_than(vx, cs);
    int before_e = b.less_than(vx, cme);
    p.in_e = b.bnot(before_e);
    p.in_mid = b.band(b.bnot(p.in_s), before_e);

    // mid-block arithmetic; outputs are don't-cares outside that block
    auto off = b.sub(vx, cs);
    auto [quot, rem] = b.divmod(off, b.const_vec((uint64_t)lay.letter, wr));
    auto copy_mid = b.add(quot, b.const_vec(1, ww));
    auto copy_end = b.const_vec((uint64_t)(lay.ell + 1), ww);
    auto rel_mid = b.zero_extend(rem, ww);
    auto rel_end = b.sub(vx, cme);
    auto zero = b.const_vec(0, ww);

    p.copy = b.mux(p.in_s, b.mux(p.in_e, copy_mid, copy_end), zero);
    p.rel = b.mux(p.in_s, b.mux(p.in_e, rel_mid, rel_end), vx);
    return p;
}

CircuitBuilder::Vec table_match(CircuitBuilder& b, const EdgeCaseTable& table,
                                const BlockPosition& u, const BlockPosition& v,
                                const CircuitBuilder::Vec& kind_u,
                                const CircuitBuilder::Vec& kind_v) {
    const int ww = (int)u.copy.size();
    auto one = b.const_vec(1, ww);
    auto cu1 = b.add(u.copy, one);
    auto cv1 = b.add(v.copy, one);
    const int g_eq = b.equal(u.copy, v.copy);
    const int g_up1 = b.equal(cu1, v.copy);
    const int g_up2 = b.less_than(cu1, v.copy);
    const int g_dn1 = b.equal(cv1, u.copy);
    const int g_dn2 = b.less_than(cv1, u.copy);

    CircuitBuilder::Vec acc(table.nsym);
    for (int i = 0; i < table.nsym; ++i) acc[i] = b.constant(false);
    for (const auto& [key, mask] : table.bits) {
        if (!mask) continue;  // arcless cases contribute nothing
        int m = b.band(kind_u[key.kind_u], kind_v[key.kind_v]);
        m = b.band(m, b.equal(u.rel, b.const_vec((uint64_t)key.rel_u, ww)));
        m = b.band(m, b.equal(v.rel, b.const_vec((uint64_t)key.rel_v, ww)));
        const int gp = key.gap == 0    ? g_eq
                       : key.gap == 1  ? g_up1
                       : key.gap == 2  ? g_up2
                       : key.gap == -1 ? g_dn1
                                       : g_dn2;
        m = b.band(m, gp);
        for (int i = 0; i < table.nsym; ++i)
            if (mask >> i & 1u) acc[i] = b.bor(acc[i], m);
    }
    return acc;
}

SuccinctGraph pump_circuit(const PumpTriple& t, long long ell, int table_words) {
    if (ell < 0) throw Error("pump_circuit: power must be nonnegative");
    if (!is_idempotent(recoloring(t.r)))
        throw Error("pump_circuit: repeat recoloring must be idempotent (run make_idempotent)");
    EdgeCaseTable table = edge_case_table(t, table_words);
    BlockLayout lay{num_leaves(t.s), num_leaves(t.r), num_leaves(t.e), ell};
    const long long N = lay.total();
    if (N < 1 || N > (1ll << 30)) throw GuardExceeded("pump_circuit: vertex count out of range");
    const int w = addr_bits((int)N);

    CircuitBuilder b;
    b.c.num_inputs = 2 * w;
    BlockPosition pu = block_position(b, b.input_range(0, w), lay);
    BlockPosition pv = block_position(b, b.input_range(w, w), lay);
    const int none = b.constant(false);
    CircuitBuilder::Vec ku{pu.in_s, pu.in_e, pu.in_mid, none};
    CircuitBuilder::Vec kv{pv.in_s, pv.in_e, pv.in_mid, none};
    b.set_outputs(table_match(b, table, pu, pv, ku, kv));

    SuccinctGraph sg;
    sg.n = (int)N;
    sg.sig = t.s.sig;
    sg.arc_circuit = std::move(b.c);
    sg.check();
    return sg;
}

namespace {

// Conjunction-of-disjunctions evaluator; bit i-1 of var_bits is variable i.
int cnf_gate(CircuitBuilder& b, const CnfInstance& cnf, const CircuitBuilder::Vec& var_bits) {
    int acc = b.constant(true);
    for (const auto& clause : cnf.clauses) {
        int c = b.constant(false);
        for (int lit : clause) {
            int g = var_bits[std::abs(lit) - 1];
            if (lit < 0) g = b.bnot(g);
            c = b.bor(c, g);
        }
        acc = b.band(acc, c);
    }
    return acc;
}

}  // namespace

SuccinctGraph sat_reduction(const PumpQuad& q, const CnfInstance& cnf, int table_words) {
    cnf.check();
    if (cnf.num_vars < 1) throw Error("sat_reduction: need at least one variable");
    if (cnf.num_vars > 24) throw GuardExceeded("sat_reduction: too many variables");
    if (num_leaves(q.g) != num_leaves(q.b)) throw Error("sat_reduction: letter sizes differ");
    EdgeCaseTable table = edge_case_table(q, table_words);
    BlockLayout lay{num_leaves(q.s), num_leaves(q.g), num_leaves(q.e), 1ll << cnf.num_vars};
    const long long N = lay.total();
    if (N > (1ll << 30)) throw GuardExceeded("sat_reduction: vertex count out of range");
    const int w = addr_bits((int)N);
    const int ww = w + 1;

    CircuitBuilder b;
    b.c.num_inputs = 2 * w;
    CircuitBuilder::Vec kinds[2];
    BlockPosition pos[2];
    for (int side = 0; side < 2; ++side) {
        BlockPosition p = block_position(b, b.input_range(side * w, w), lay);
        // letter i holds assignment i-1; outside the mid block the bit is
        // masked off, so the wrapped subtraction at copy 0 is harmless
        auto assign = b.sub(p.copy, b.const_vec(1, ww));
        CircuitBuilder::Vec var_bits(assign.begin(), assign.begin() + cnf.num_vars);
        const int sat = cnf_gate(b, cnf, var_bits);
        kinds[side] = {p.in_s, p.in_e, b.band(p.in_mid, b.bnot(sat)), b.band(p.in_mid, sat)};
        pos[side] = p;
    }
    b.set_outputs(table_match(b, table, pos[0], pos[1], kinds[0], kinds[1]));

    SuccinctGraph sg;
    sg.n = (int)N;
    sg.sig = q.s.sig;
    sg.arc_circuit = std::move(b.c);
    sg.check();
    return sg;
}

void CvpInstance::check() const {
    circuit.check();
    if (circuit.outputs.size() != 1) throw Error("value instances have exactly one output");
}

SuccinctGraph cvp_reduction(const PumpPair& p, const CvpInstance& cvp, int table_words) {
    cvp.check();
    const long long ell = (long long)cvp.circuit.gates.size();

    PumpTriple pos = make_idempotent(p.pos);
    PumpTriple neg = make_idempotent(p.neg);
    // making each side idempotent can scale the letters apart; restore the
    // common letter size with the smallest equalizing replication
    const long long a = num_leaves(pos.r), c = num_leaves(neg.r);
    const long long g = std::gcd(a, c);
    if (c / g > 1) pos.r = delta_fold(std::vector<Decomposition>((size_t)(c / g), pos.r));
    if (a / g > 1) neg.r = delta_fold(std::vector<Decomposition>((size_t)(a / g), neg.r));

    BlockLayout lp{num_leaves(pos.s), num_leaves(pos.r), num_leaves(pos.e), ell};
    BlockLayout ln{num_leaves(neg.s), num_leaves(neg.r), num_leaves(neg.e), ell};
    if (lp.total() != ln.total()) throw Error("cvp_reduction: side sizes diverge");
    EdgeCaseTable tp = edge_case_table(pos, table_words);
    EdgeCaseTable tn = edge_case_table(neg, table_words);
    if (tp.nsym != tn.nsym) throw SignatureMismatch("cvp_reduction: sides disagree on symbols");
    const long long N = lp.total();
    if (N > (1ll << 30)) throw GuardExceeded("cvp_reduction: vertex count out of range");
    const int w = addr_bits((int)N);

    CircuitBuilder b;
    b.c.num_inputs = 2 * w;
    const auto ub = b.input_range(0, w);
    const auto vb = b.input_range(w, w);
    const int none = b.constant(false);
    auto side_outputs = [&](const EdgeCaseTable& table, const BlockLayout& lay) {
        BlockPosition pu = block_position(b, ub, lay);
        BlockPosition pv = block_position(b, vb, lay);
        CircuitBuilder::Vec ku{pu.in_s, pu.in_e, pu.in_mid, none};
        CircuitBuilder::Vec kv{pv.in_s, pv.in_e, pv.in_mid, none};
        return table_match(b, table, pu, pv, ku, kv);
    };
    auto out_pos = side_outputs(tp, lp);
    auto out_neg = side_outputs(tn, ln);
    const int sel = b.append_circuit(cvp.circuit, b.const_vec(0, cvp.circuit.num_inputs))[0];
    CircuitBuilder::Vec outs(tp.nsym);
    for (int i = 0; i < tp.nsym; ++i) outs[i] = b.mux1(sel, out_neg[i], out_pos[i]);
    b.set_outputs(outs);

    SuccinctGraph sg;
    sg.n = (int)N;
    sg.sig = p.pos.s.sig;
    sg.arc_circuit = std::move(b.c);
    sg.check();
    return sg;
}

SuccinctGraph min_order_reduction(const CnfInstance& cnf) {
    cnf.check();
    if (cnf.num_vars < 1) throw Error("min_order_reduction: need at least one variable");
    if (cnf.num_vars > 24) throw GuardExceeded("min_order_reduction: too many variables");
    const int n = cnf.num_vars;

    CircuitBuilder b;
    b.c.num_inputs = 2 * n;
    const auto ub = b.input_range(0, n);
    const auto vb = b.input_range(n, n);
    const int su = cnf_gate(b, cnf, ub);
    const int sv = cnf_gate(b, cnf, vb);
    // loop on every satisfying assignment; order satisfying ones first and
    // fall back to the integer order inside each class
    const int arrow = b.band(b.equal(ub, vb), su);
    const int le = b.bor(b.band(su, b.bnot(sv)),
                         b.band(b.bxnor(su, sv), b.bnot(b.less_than(vb, ub))));
    b.set_outputs({arrow, le});

    SuccinctGraph sg;
    sg.n = 1 << n;
    sg.sig = Signature{{"->", "<="}, {}, 1};
    sg.arc_circuit = std::move(b.c);
    sg.check();
    return sg;
}

XiFixture make_xi_fixture(const FormulaPtr& psi, int threshold, const ModelCheckOptions& mc) {
    if (threshold < 1) throw Error("make_xi_fixture: threshold must be positive");
    XiFixture fx;
    fx.psi = psi;
    fx.threshold = threshold;
    const Signature sig = single_arc_signature("->");
    for (int n = 1; n <= threshold; ++n) {
        Graph k = clique_with_loops(n, sig);
        if (models(k, psi, mc)) fx.small_models.push_back(std::move(k));
        Graph i = edgeless_graph(n, sig);
        if (models(i, psi, mc)) fx.small_models.push_back(std::move(i));
    }
    // one size past the threshold stands in for every larger instance
    fx.clique_truth = models(clique_with_loops(threshold + 1, sig), psi, mc);
    fx.independent_truth = models(edgeless_graph(threshold + 1, sig), psi, mc);
    return fx;
}

bool xi_decider(const SuccinctGraph& sg, const XiFixture& fx, int decode_guard) {
    if (sg.n <= fx.threshold) {
        const Graph g = decode(sg, decode_guard);
        for (const Graph& m : fx.small_models)
            if (graph_equal(g, m)) return true;
        return false;
    }
    const int arrow = sg.sig.arc_index("->");
    if (arrow < 0) throw SignatureMismatch("xi_decider: signature has no -> symbol");
    const std::vector<bool> probe(sg.arc_circuit.num_inputs, false);
    return eval_circuit(sg.arc_circuit, probe)[arrow] ? fx.clique_truth : fx.independent_truth;
}

}  // namespace msox
