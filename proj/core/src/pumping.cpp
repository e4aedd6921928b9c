#include "msox/pumping.hpp"

#include <algorithm>
#include <functional>

#include "msox/error.hpp"

namespace msox {

namespace {

// Copy the subtree at `from`, substituting a hole for the subtree at `stop`.
int copy_below(const Decomposition& src, int idx, int stop, Decomposition& dst) {
    if (idx == stop) {
        dst.nodes.push_back(DecompNode{NodeOp::Marked});
        return (int)dst.nodes.size() - 1;
    }
    DecompNode out = src.nodes[idx];
    out.stated_id = -1;
    if (out.op == NodeOp::Recolor) out.child = copy_below(src, out.child, stop, dst);
    if (out.op == NodeOp::Join) {
        out.left = copy_below(src, out.left, stop, dst);
        out.right = copy_below(src, out.right, stop, dst);
    }
    dst.nodes.push_back(out);
    return (int)dst.nodes.size() - 1;
}

Decomposition cut(const Decomposition& src, int from, int stop) {
    Decomposition d;
    d.sig = src.sig;
    d.root = copy_below(src, from, stop, d);
    d.check();
    return d;
}

std::vector<Decomposition> word_pieces(const PumpTriple& t, int ell) {
    std::vector<Decomposition> pieces;
    pieces.push_back(t.s);
    for (int i = 0; i < ell; ++i) pieces.push_back(t.r);
    pieces.push_back(t.e);
    return pieces;
}

Decomposition widen_colors(const Decomposition& d, int new_k) {
    if (new_k < d.sig.num_colors)
        throw Error("cannot narrow a decomposition from " +
                    std::to_string(d.sig.num_colors) + " to " + std::to_string(new_k) +
                    " colors");
    Decomposition out = d;
    out.sig.num_colors = new_k;
    for (auto& nd : out.nodes)
        if (nd.op == NodeOp::Recolor)
            while ((int)nd.map.size() < new_k) nd.map.push_back((int)nd.map.size());
    return out;
}

}  // namespace

Decomposition pump_tree(const PumpTriple& t, int ell) { return delta_fold(word_pieces(t, ell)); }

ColoredGraph pump_graph(const PumpTriple& t, int ell) {
    return eval_delta_blocks(word_pieces(t, ell));
}

Decomposition quad_tree(const PumpQuad& q, const std::vector<bool>& word) {
    std::vector<Decomposition> pieces;
    pieces.push_back(q.s);
    for (bool bad : word) pieces.push_back(bad ? q.b : q.g);
    pieces.push_back(q.e);
    return delta_fold(pieces);
}

ColoredGraph quad_graph(const PumpQuad& q, const std::vector<bool>& word) {
    std::vector<Decomposition> pieces;
    pieces.push_back(q.s);
    for (bool bad : word) pieces.push_back(bad ? q.b : q.g);
    pieces.push_back(q.e);
    return eval_delta_blocks(pieces);
}

PumpTriple extract_pump(const Decomposition& c, const FormulaPtr& phi, int m,
                        const TypeOptions& topts, const ModelCheckOptions& mc,
                        int verify_powers) {
    c.check();
    if (count_marked(c) != 0) throw Error("input tree must be hole-free");
    if (!phi) throw Error("null formula");
    if (rank(phi) > m)
        throw Error("formula rank " + std::to_string(rank(phi)) + " exceeds m = " +
                    std::to_string(m));
    if (!models(eval(c), phi, mc)) throw Error("input graph does not satisfy the formula");

    auto ann = annotate_types(c, m, topts);

    // Euler intervals for ancestor tests, plus per-node depth and leaf count.
    int n = (int)c.nodes.size();
    std::vector<int> tin(n, -1), tout(n, -1), depth(n, 0), leaves(n, 0);
    int clock = 0;
    std::function<void(int, int)> dfs = [&](int idx, int d) {
        const DecompNode& nd = c.nodes[idx];
        tin[idx] = clock++;
        depth[idx] = d;
        switch (nd.op) {
            case NodeOp::Constant:
                leaves[idx] = 1;
                break;
            case NodeOp::Marked:
                break;
            case NodeOp::Recolor:
                dfs(nd.child, d + 1);
                leaves[idx] = leaves[nd.child];
                break;
            case NodeOp::Join:
                dfs(nd.left, d + 1);
                dfs(nd.right, d + 1);
                leaves[idx] = leaves[nd.left] + leaves[nd.right];
                break;
        }
        tout[idx] = clock++;
    };
    dfs(c.root, 0);

    int best_outer = -1, best_inner = -1;
    auto better = [&](int o, int i) {
        if (best_outer < 0) return true;
        int gap = leaves[o] - leaves[i];
        int bgap = leaves[best_outer] - leaves[best_inner];
        if (gap != bgap) return gap < bgap;
        if (depth[o] != depth[best_outer]) return depth[o] > depth[best_outer];
        if (depth[i] != depth[best_inner]) return depth[i] > depth[best_inner];
        return std::make_pair(o, i) < std::make_pair(best_outer, best_inner);
    };
    for (int outer = 0; outer < n; ++outer) {
        if (tin[outer] < 0 || c.nodes[outer].op != NodeOp::Join) continue;
        for (int inner = 0; inner < n; ++inner) {
            if (tin[inner] < 0 || inner == outer || c.nodes[inner].op != NodeOp::Join) continue;
            if (!(tin[outer] < tin[inner] && tout[inner] < tout[outer])) continue;
            if (!(*ann[outer] == *ann[inner])) continue;
            if (better(outer, inner)) {
                best_outer = outer;
                best_inner = inner;
            }
        }
    }
    if (best_outer < 0)
        throw NoRepeatedType("no two nested join nodes with equal rank-" + std::to_string(m) +
                             " summaries");

    PumpTriple t;
    t.s = cut(c, c.root, best_outer);
    t.e = cut(c, best_outer, -1);
    t.r = cut(c, best_outer, best_inner);
    t.target = phi;
    t.m = m;
    if (num_leaves(t.r) < 1) throw Error("repeat piece lost its constants");
    if (!verify_pump(t, verify_powers, mc)) throw Error("pump verification failed");
    return t;
}

PumpTriple make_idempotent(const PumpTriple& t) {
    int power = idempotent_power(recoloring(t.r));
    if (power == 1) return t;
    PumpTriple out = t;
    out.r = delta_fold(std::vector<Decomposition>(power, t.r));
    return out;
}

PumpQuad stable_pump(const FormulaPtr& psi, const FormulaPtr& chi,
                     const std::vector<Decomposition>& universe, int m, int k, int l_test,
                     bool verify_absorption, const TypeOptions& topts,
                     const ModelCheckOptions& mc) {
    if (!psi || !chi) throw Error("null formula");
    if (rank(psi) > m || rank(chi) > m) throw Error("rank exceeds m");
    if (universe.empty()) throw Error("empty universe");
    for (const auto& u : universe) {
        u.check();
        if (count_marked(u) != 0) throw Error("universe members must be hole-free");
        if (!(u.sig == universe[0].sig))
            throw SignatureMismatch("universe members over different signatures");
        if (u.sig.num_colors > k)
            throw Error("universe member uses more than k colors");
    }

    std::vector<Graph> plain;
    plain.reserve(universe.size());
    for (const auto& u : universe) plain.push_back(underlying(eval(u)));
    for (size_t i = 0; i < plain.size(); ++i)
        if (!models(plain[i], chi, mc))
            throw Error("universe member " + std::to_string(i) +
                        " does not satisfy the side condition");

    std::vector<ColoredGraph> uniform;
    uniform.reserve(plain.size());
    for (const auto& g : plain) uniform.push_back(uniform_coloring(g));
    SaturationPlan plan = saturation_plan(uniform, m, topts);

    Graph omega{plain[0].sig, 0, {}, {}};
    omega.unary.resize(omega.sig.unary_symbols.size());
    Decomposition omega_dec;
    bool first = true;
    for (size_t i = 0; i < plan.rep_index.size(); ++i) {
        int rep = plan.rep_index[i];
        omega = disjoint_union(omega, disjoint_union_copies(plain[rep], plan.copies[i]));
        for (int j = 0; j < plan.copies[i]; ++j) {
            omega_dec = first ? universe[rep] : make_union(omega_dec, universe[rep]);
            first = false;
        }
    }
    if (!models(omega, chi, mc))
        throw Error("combined graph violates the side condition; is it union-stable?");
    if (verify_absorption) {
        MsoType t_omega = type_of(omega, m, raised_for(topts, omega.n));
        for (const auto& g : plain) {
            Graph side = disjoint_union(g, omega);
            MsoType t = type_of(side, m, raised_for(topts, side.n));
            if (!(t == t_omega)) throw Error("absorption check failed over the universe");
        }
    }

    // Branch: when adding omega kills psi, pump a psi-model and keep psi as
    // the target; otherwise pump a counter-model and target the negation.
    bool with_omega_sat = models(disjoint_union(omega, plain[0]), psi, mc);
    FormulaPtr target = with_omega_sat ? Formula::lnot(psi) : psi;
    FormulaPtr pump_formula = Formula::land(with_omega_sat ? Formula::lnot(psi) : psi, chi);

    std::vector<size_t> order(universe.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return plain[a].n > plain[b].n; });
    PumpTriple triple;
    bool found = false;
    for (size_t i : order) {
        if (!models(plain[i], pump_formula, mc)) continue;
        try {
            triple = extract_pump(universe[i], pump_formula, m, topts, mc, l_test);
            found = true;
            break;
        } catch (const NoRepeatedType&) {
        }
    }
    if (!found) throw Error("no universe member is large enough to pump");

    triple = make_idempotent(triple);
    int wide = k + 1;
    Decomposition rr = widen_colors(triple.r, wide);
    Decomposition omega_wide = widen_colors(omega_dec, wide);

    Decomposition r2 = delta_fold(std::vector<Decomposition>(std::max(1, omega.n), rr));
    int r_leaves = num_leaves(rr);
    Decomposition omega_rep = omega_wide;
    for (int j = 1; j < r_leaves; ++j) omega_rep = make_union(omega_rep, omega_wide);
    Decomposition parked = make_recolor(std::vector<int>(wide, wide - 1), omega_rep);

    PumpQuad quad;
    quad.s = widen_colors(triple.s, wide);
    quad.e = widen_colors(triple.e, wide);
    quad.g = delta_fold({r2, r2});
    quad.b = make_union(r2, parked);
    quad.psi = psi;
    quad.chi = chi;
    quad.target = target;
    quad.negated = with_omega_sat;
    quad.m = m;

    if (num_leaves(quad.g) != num_leaves(quad.b))
        throw Error("letter sizes diverge; construction bug");
    Recoloring fg = recoloring(quad.g), fb = recoloring(quad.b);
    if (fg != fb || !is_idempotent(fg))
        throw Error("letter recolorings are not equal idempotents; construction bug");
    if (!verify_quad(quad, l_test, mc)) throw Error("letter words fail verification");
    return quad;
}

PumpPair unstable_pump(const FormulaPtr& psi, const FormulaPtr& chi,
                       const std::vector<std::pair<Decomposition, Decomposition>>& pairs,
                       int m, const TypeOptions& topts, const ModelCheckOptions& mc,
                       int verify_powers) {
    if (!psi || !chi) throw Error("null formula");
    if (pairs.empty()) throw Error("no model pairs supplied");
    FormulaPtr pos_f = Formula::land(psi, chi);
    FormulaPtr neg_f = Formula::land(Formula::lnot(psi), chi);

    PumpPair out;
    bool found = false;
    for (const auto& [cp, cn] : pairs) {
        ColoredGraph gp = eval(cp), gn = eval(cn);
        if (gp.g.n != gn.g.n) throw Error("model pair sizes differ");
        if (!models(gp, pos_f, mc) || !models(gn, neg_f, mc))
            throw Error("model pair does not split on the formula");
        try {
            out.pos = extract_pump(cp, pos_f, m, topts, mc, verify_powers);
            out.neg = extract_pump(cn, neg_f, m, topts, mc, verify_powers);
            found = true;
            break;
        } catch (const NoRepeatedType&) {
        }
    }
    if (!found)
        throw NoRepeatedType("no supplied pair admits a pump cut on both sides");

    int a = num_leaves(out.pos.r), b = num_leaves(out.neg.r);
    out.pos.r = delta_fold(std::vector<Decomposition>(b, out.pos.r));
    out.neg.r = delta_fold(std::vector<Decomposition>(a, out.neg.r));
    if (!verify_pair(out, verify_powers, mc)) throw Error("pair verification failed");
    return out;
}

bool verify_pump(const PumpTriple& t, int max_power, const ModelCheckOptions& mc) {
    for (int ell = 0; ell <= max_power; ++ell)
        if (!models(pump_graph(t, ell), t.target, mc)) return false;
    return true;
}

bool verify_quad(const PumpQuad& q, int max_len, const ModelCheckOptions& mc) {
    for (int len = 0; len <= max_len; ++len) {
        for (uint32_t bits = 0; bits < (1u << len); ++bits) {
            std::vector<bool> word(len);
            bool has_b = false;
            for (int i = 0; i < len; ++i) {
                word[i] = (bits >> i) & 1;
                has_b = has_b || word[i];
            }
            ColoredGraph g = quad_graph(q, word);
            if (!models(g, q.chi, mc)) return false;
            if (models(g, q.target, mc) != !has_b) return false;
        }
    }
    return true;
}

bool verify_pair(const PumpPair& p, int max_power, const ModelCheckOptions& mc) {
    for (int ell = 0; ell <= max_power; ++ell) {
        ColoredGraph gp = pump_graph(p.pos, ell);
        ColoredGraph gn = pump_graph(p.neg, ell);
        if (gp.g.n != gn.g.n) return false;
        if (!models(gp, p.pos.target, mc)) return false;
        if (!models(gn, p.neg.target, mc)) return false;
    }
    return true;
}

}  // namespace msox
