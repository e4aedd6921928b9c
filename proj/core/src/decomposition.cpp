#include "msox/decomposition.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "msox/error.hpp"

namespace msox {

namespace {

void check_node(const Decomposition& c, int idx, std::vector<char>& seen) {
    if (idx < 0 || idx >= (int)c.nodes.size()) throw Error("decomposition: bad node index");
    if (seen[idx]) throw Error("decomposition: node shared between branches");
    seen[idx] = 1;
    const auto& n = c.nodes[idx];
    const int k = c.sig.num_colors;
    const int nsym = (int)c.sig.arc_symbols.size();
    switch (n.op) {
        case NodeOp::Constant:
            if (n.color < 0 || n.color >= k) throw Error("decomposition: constant color out of range");
            for (int s : n.loops)
                if (s < 0 || s >= nsym) throw Error("decomposition: loop symbol out of range");
            break;
        case NodeOp::Marked:
            break;
        case NodeOp::Recolor:
            if ((int)n.map.size() != k) throw Error("decomposition: recolor map size != k");
            for (int v : n.map)
                if (v < 0 || v >= k) throw Error("decomposition: recolor target out of range");
            check_node(c, n.child, seen);
            break;
        case NodeOp::Join:
            for (const auto& r : n.rules) {
                if (r.sym < 0 || r.sym >= nsym) throw Error("decomposition: rule symbol out of range");
                if (r.from_color < 0 || r.from_color >= k || r.to_color < 0 || r.to_color >= k)
                    throw Error("decomposition: rule color out of range");
            }
            check_node(c, n.left, seen);
            check_node(c, n.right, seen);
            break;
    }
}

int count_marked_rec(const Decomposition& c, int idx) {
    const auto& n = c.nodes[idx];
    switch (n.op) {
        case NodeOp::Constant: return 0;
        case NodeOp::Marked: return 1;
        case NodeOp::Recolor: return count_marked_rec(c, n.child);
        case NodeOp::Join: return count_marked_rec(c, n.left) + count_marked_rec(c, n.right);
    }
    return 0;
}

// appends src's node tree into dst pool, returns new root index
int append_tree(std::vector<DecompNode>& dst, const Decomposition& src, int idx) {
    const auto& n = src.nodes[idx];
    DecompNode copy = n;
    switch (n.op) {
        case NodeOp::Constant:
        case NodeOp::Marked:
            break;
        case NodeOp::Recolor:
            copy.child = append_tree(dst, src, n.child);
            break;
        case NodeOp::Join:
            copy.left = append_tree(dst, src, n.left);
            copy.right = append_tree(dst, src, n.right);
            break;
    }
    dst.push_back(copy);
    return (int)dst.size() - 1;
}

}  // namespace

void Decomposition::check() const {
    if (sig.num_colors < 1) throw Error("decomposition: k must be positive");
    std::vector<char> seen(nodes.size(), 0);
    check_node(*this, root, seen);
    if (count_marked_rec(*this, root) > 1)
        throw Error("decomposition: more than one hole");
}

Decomposition make_constant(const Signature& sig, int color, const std::vector<int>& loop_syms,
                            int stated_id) {
    Decomposition c;
    c.sig = sig;
    DecompNode n;
    n.op = NodeOp::Constant;
    n.color = color;
    n.loops = loop_syms;
    std::sort(n.loops.begin(), n.loops.end());
    n.stated_id = stated_id;
    c.nodes.push_back(n);
    c.root = 0;
    c.check();
    return c;
}

Decomposition make_marked(const Signature& sig) {
    Decomposition c;
    c.sig = sig;
    DecompNode n;
    n.op = NodeOp::Marked;
    c.nodes.push_back(n);
    c.root = 0;
    return c;
}

Decomposition make_recolor(const std::vector<int>& map, const Decomposition& child) {
    Decomposition c;
    c.sig = child.sig;
    int ci = append_tree(c.nodes, child, child.root);
    DecompNode n;
    n.op = NodeOp::Recolor;
    n.map = map;
    n.child = ci;
    c.nodes.push_back(n);
    c.root = (int)c.nodes.size() - 1;
    c.check();
    return c;
}

Decomposition make_join(const std::vector<JoinRule>& rules, const Decomposition& left,
                        const Decomposition& right) {
    if (left.sig != right.sig) throw SignatureMismatch("join: signatures differ");
    Decomposition c;
    c.sig = left.sig;
    int li = append_tree(c.nodes, left, left.root);
    int ri = append_tree(c.nodes, right, right.root);
    DecompNode n;
    n.op = NodeOp::Join;
    n.rules = rules;
    std::sort(n.rules.begin(), n.rules.end());
    n.rules.erase(std::unique(n.rules.begin(), n.rules.end()), n.rules.end());
    n.left = li;
    n.right = ri;
    c.nodes.push_back(n);
    c.root = (int)c.nodes.size() - 1;
    c.check();
    return c;
}

Decomposition make_union(const Decomposition& left, const Decomposition& right) {
    return make_join({}, left, right);
}

namespace {

bool tree_equal_rec(const Decomposition& a, int ia, const Decomposition& b, int ib) {
    const auto& na = a.nodes[ia];
    const auto& nb = b.nodes[ib];
    if (na.op != nb.op) return false;
    switch (na.op) {
        case NodeOp::Constant:
            return na.color == nb.color && na.loops == nb.loops;
        case NodeOp::Marked:
            return true;
        case NodeOp::Recolor:
            return na.map == nb.map && tree_equal_rec(a, na.child, b, nb.child);
        case NodeOp::Join:
            return na.rules == nb.rules && tree_equal_rec(a, na.left, b, nb.left) &&
                   tree_equal_rec(a, na.right, b, nb.right);
    }
    return false;
}

}  // namespace

bool tree_equal(const Decomposition& a, const Decomposition& b) {
    return a.sig == b.sig && tree_equal_rec(a, a.root, b, b.root);
}

int count_marked(const Decomposition& c) { return count_marked_rec(c, c.root); }

namespace {

int num_leaves_rec(const Decomposition& c, int idx) {
    const auto& n = c.nodes[idx];
    switch (n.op) {
        case NodeOp::Constant: return 1;
        case NodeOp::Marked: return 0;
        case NodeOp::Recolor: return num_leaves_rec(c, n.child);
        case NodeOp::Join: return num_leaves_rec(c, n.left) + num_leaves_rec(c, n.right);
    }
    return 0;
}

int join_depth_rec(const Decomposition& c, int idx) {
    const auto& n = c.nodes[idx];
    switch (n.op) {
        case NodeOp::Constant:
        case NodeOp::Marked:
            return 0;
        case NodeOp::Recolor:
            return join_depth_rec(c, n.child);
        case NodeOp::Join:
            return 1 + std::max(join_depth_rec(c, n.left), join_depth_rec(c, n.right));
    }
    return 0;
}

ColoredGraph eval_rec(const Decomposition& c, int idx, bool hole_as_empty,
                      std::set<int>* used_colors) {
    const auto& n = c.nodes[idx];
    switch (n.op) {
        case NodeOp::Constant: {
            ColoredGraph g;
            g.g.sig = c.sig;
            g.g.sig.unary_symbols.clear();
            g.g.n = 1;
            for (int s : n.loops) g.g.arcs.insert({s, 0, 0});
            g.colors = {n.color};
            if (used_colors) used_colors->insert(n.color);
            return g;
        }
        case NodeOp::Marked: {
            if (!hole_as_empty) throw Error("eval: tree has a hole");
            ColoredGraph g;
            g.g.sig = c.sig;
            g.g.sig.unary_symbols.clear();
            return g;
        }
        case NodeOp::Recolor: {
            ColoredGraph g = eval_rec(c, n.child, hole_as_empty, used_colors);
            for (auto& col : g.colors) {
                col = n.map[col];
                if (used_colors) used_colors->insert(col);
            }
            return g;
        }
        case NodeOp::Join: {
            ColoredGraph L = eval_rec(c, n.left, hole_as_empty, used_colors);
            ColoredGraph R = eval_rec(c, n.right, hole_as_empty, used_colors);
            const int nl = L.g.n;
            ColoredGraph g = disjoint_union(L, R);
            for (const auto& r : n.rules) {
                if (r.dir == JoinDir::LeftToRight) {
                    for (int u = 0; u < nl; ++u) {
                        if (L.colors[u] != r.from_color) continue;
                        for (int v = 0; v < R.g.n; ++v)
                            if (R.colors[v] == r.to_color) g.g.arcs.insert({r.sym, u, nl + v});
                    }
                } else {
                    for (int v = 0; v < R.g.n; ++v) {
                        if (R.colors[v] != r.from_color) continue;
                        for (int u = 0; u < nl; ++u)
                            if (L.colors[u] == r.to_color) g.g.arcs.insert({r.sym, nl + v, u});
                    }
                }
            }
            return g;
        }
    }
    throw Error("eval: bad node");
}

}  // namespace

int num_leaves(const Decomposition& c) { return num_leaves_rec(c, c.root); }
int join_depth(const Decomposition& c) { return join_depth_rec(c, c.root); }

ColoredGraph eval(const Decomposition& c) {
    c.check();
    return eval_rec(c, c.root, false, nullptr);
}

ColoredGraph eval_with_hole_empty(const Decomposition& c) {
    c.check();
    return eval_rec(c, c.root, true, nullptr);
}

int width(const Decomposition& c) {
    c.check();
    std::set<int> used;
    eval_rec(c, c.root, true, &used);
    return (int)used.size();
}

namespace {

// replace the hole of acc (pool index located first) by tree d
int find_marked(const Decomposition& c, int idx) {
    const auto& n = c.nodes[idx];
    switch (n.op) {
        case NodeOp::Constant: return -1;
        case NodeOp::Marked: return idx;
        case NodeOp::Recolor: return find_marked(c, n.child);
        case NodeOp::Join: {
            int l = find_marked(c, n.left);
            return l >= 0 ? l : find_marked(c, n.right);
        }
    }
    return -1;
}

}  // namespace

Decomposition glue(const Decomposition& c, const Decomposition& d) {
    if (c.sig != d.sig) throw SignatureMismatch("glue: signatures differ");
    if (count_marked(c) != 1) throw Error("glue: left operand has no hole");
    Decomposition out = c;
    int hole = find_marked(out, out.root);
    int droot = append_tree(out.nodes, d, d.root);
    // splice: the hole slot takes over d's root node
    out.nodes[hole] = out.nodes[droot];
    out.check();
    return out;
}

Decomposition delta_fold(const std::vector<Decomposition>& pieces) {
    if (pieces.empty()) throw Error("delta_fold: empty word");
    Decomposition acc = pieces[0];
    for (size_t i = 1; i < pieces.size(); ++i) acc = glue(acc, pieces[i]);
    return acc;
}

namespace {

// leaf slots in depth-first order: true entries are the hole
void leaf_slots(const Decomposition& c, int idx, std::vector<bool>& out) {
    const auto& n = c.nodes[idx];
    switch (n.op) {
        case NodeOp::Constant: out.push_back(false); break;
        case NodeOp::Marked: out.push_back(true); break;
        case NodeOp::Recolor: leaf_slots(c, n.child, out); break;
        case NodeOp::Join:
            leaf_slots(c, n.left, out);
            leaf_slots(c, n.right, out);
            break;
    }
}

}  // namespace

ColoredGraph eval_delta_blocks(const std::vector<Decomposition>& pieces) {
    const int t = (int)pieces.size();
    std::vector<int> leaf_count(t), before_hole(t, -1);
    for (int i = 0; i < t; ++i) {
        std::vector<bool> slots;
        leaf_slots(pieces[i], pieces[i].root, slots);
        int constants = 0;
        for (size_t j = 0; j < slots.size(); ++j) {
            if (slots[j]) {
                before_hole[i] = constants;
            } else {
                ++constants;
            }
        }
        leaf_count[i] = constants;
        if (i + 1 < t && before_hole[i] < 0) throw Error("eval_delta_blocks: inner piece lacks a hole");
    }
    ColoredGraph g = eval(delta_fold(pieces));

    // evaluation order: piece i's leaves with the hole expanded to the rest
    std::vector<std::pair<int, int>> eval_order;  // (piece, offset within piece)
    for (int i = t - 1; i >= 0; --i) {
        if (i == t - 1) {
            for (int o = 0; o < leaf_count[i]; ++o) eval_order.emplace_back(i, o);
        } else {
            std::vector<std::pair<int, int>> cur;
            for (int o = 0; o < before_hole[i]; ++o) cur.emplace_back(i, o);
            cur.insert(cur.end(), eval_order.begin(), eval_order.end());
            for (int o = before_hole[i]; o < leaf_count[i]; ++o) cur.emplace_back(i, o);
            eval_order = std::move(cur);
        }
    }
    if ((int)eval_order.size() != g.g.n) throw Error("eval_delta_blocks: leaf count mismatch");

    std::vector<int> base(t, 0);
    for (int i = 1; i < t; ++i) base[i] = base[i - 1] + leaf_count[i - 1];
    std::vector<int> perm(g.g.n);
    for (int pos = 0; pos < g.g.n; ++pos) {
        auto [piece, off] = eval_order[pos];
        perm[pos] = base[piece] + off;
    }
    return permute_vertices(g, perm);
}

Recoloring identity_recoloring(int k) {
    Recoloring f(k);
    std::iota(f.begin(), f.end(), 0);
    return f;
}

Recoloring compose(const Recoloring& f, const Recoloring& g) {
    if (f.size() != g.size()) throw Error("compose: size mismatch");
    Recoloring h(g.size());
    for (size_t i = 0; i < g.size(); ++i) h[i] = f[g[i]];
    return h;
}

bool is_idempotent(const Recoloring& f) { return compose(f, f) == f; }

int idempotent_power(const Recoloring& f) {
    long long bound = 1;
    for (size_t i = 2; i <= f.size(); ++i) bound *= (long long)i;
    bound += 1;  // k! + 1 covers every power orbit
    Recoloring g = f;
    for (int t = 1; t <= bound; ++t) {
        if (is_idempotent(g)) return t;
        g = compose(g, f);
    }
    throw Error("idempotent_power: no idempotent power within k!+1");
}

Recoloring recoloring(const Decomposition& c) {
    if (count_marked(c) != 1) throw Error("recoloring: tree has no hole");
    Recoloring acc = identity_recoloring(c.sig.num_colors);
    // walk from the root towards the hole, composing outer maps after inner
    struct Walker {
        const Decomposition& c;
        Recoloring& acc;
        bool walk(int idx) {
            const auto& n = c.nodes[idx];
            switch (n.op) {
                case NodeOp::Constant: return false;
                case NodeOp::Marked: return true;
                case NodeOp::Recolor:
                    if (walk(n.child)) {
                        acc = compose(n.map, acc);
                        return true;
                    }
                    return false;
                case NodeOp::Join: return walk(n.left) || walk(n.right);
            }
            return false;
        }
    };
    Walker w{c, acc};
    w.walk(c.root);
    return acc;
}

namespace {

std::vector<JoinRule> rule_universe(const Signature& sig) {
    std::vector<JoinRule> out;
    for (int s = 0; s < (int)sig.arc_symbols.size(); ++s)
        for (auto dir : {JoinDir::LeftToRight, JoinDir::RightToLeft})
            for (int a = 0; a < sig.num_colors; ++a)
                for (int b = 0; b < sig.num_colors; ++b) out.push_back({s, dir, a, b});
    return out;
}

std::vector<Recoloring> nonidentity_maps(int k) {
    std::vector<Recoloring> out;
    Recoloring f(k, 0);
    const Recoloring id = identity_recoloring(k);
    while (true) {
        if (f != id) out.push_back(f);
        int i = 0;
        while (i < k && ++f[i] == k) f[i++] = 0;
        if (i == k) break;
    }
    return out;
}

}  // namespace

std::vector<Decomposition> enumerate_decompositions(const Signature& sig, int max_leaves,
                                                    const EnumOptions& opts) {
    const auto rules = rule_universe(sig);
    const auto maps = opts.wrap_recolor ? nonidentity_maps(sig.num_colors)
                                        : std::vector<Recoloring>{};
    if (rules.size() > 20) throw GuardExceeded("enumerate_decompositions: rule space too large");

    std::vector<std::vector<Decomposition>> by_leaves(max_leaves + 1);
    size_t total = 0;
    auto push = [&](int j, Decomposition d) {
        if (++total > opts.max_count)
            throw GuardExceeded("enumerate_decompositions: too many trees");
        by_leaves[j].push_back(std::move(d));
    };

    // leaves
    for (int color = 0; color < sig.num_colors; ++color) {
        const int nsym = (int)sig.arc_symbols.size();
        for (uint32_t mask = 0; mask < (1u << nsym); ++mask) {
            std::vector<int> loops;
            for (int s = 0; s < nsym; ++s)
                if ((mask >> s) & 1u) loops.push_back(s);
            push(1, make_constant(sig, color, loops));
        }
    }
    for (int j = 2; j <= max_leaves; ++j) {
        for (int jl = 1; jl < j; ++jl) {
            for (const auto& L : by_leaves[jl]) {
                for (const auto& R : by_leaves[j - jl]) {
                    for (uint32_t mask = 0; mask < (1u << rules.size()); ++mask) {
                        std::vector<JoinRule> rs;
                        for (size_t r = 0; r < rules.size(); ++r)
                            if ((mask >> r) & 1u) rs.push_back(rules[r]);
                        push(j, make_join(rs, L, R));
                    }
                }
            }
        }
    }
    std::vector<Decomposition> out;
    for (int j = 1; j <= max_leaves; ++j)
        for (const auto& d : by_leaves[j]) {
            out.push_back(d);
            for (const auto& m : maps) out.push_back(make_recolor(m, d));
        }
    return out;
}

namespace {

int replace_kth_leaf_with_hole(Decomposition& c, int idx, int& k) {
    auto& n = c.nodes[idx];
    switch (n.op) {
        case NodeOp::Constant:
            if (k-- == 0) {
                n = DecompNode{};
                n.op = NodeOp::Marked;
                return 1;
            }
            return 0;
        case NodeOp::Marked: return 0;
        case NodeOp::Recolor: return replace_kth_leaf_with_hole(c, n.child, k);
        case NodeOp::Join:
            if (replace_kth_leaf_with_hole(c, n.left, k)) return 1;
            return replace_kth_leaf_with_hole(c, n.right, k);
    }
    return 0;
}

}  // namespace

Decomposition random_decomposition(const Signature& sig, int max_leaves, std::mt19937& rng,
                                   bool with_hole) {
    const auto rules = rule_universe(sig);
    const auto maps = nonidentity_maps(sig.num_colors);
    const int nsym = (int)sig.arc_symbols.size();

    struct Gen {
        const Signature& sig;
        const std::vector<JoinRule>& rules;
        const std::vector<Recoloring>& maps;
        std::mt19937& rng;
        int nsym;

        Decomposition rec(int budget) {
            Decomposition out = [&] {
                if (budget <= 1) {
                    std::vector<int> loops;
                    for (int s = 0; s < nsym; ++s)
                        if (rng() % 2) loops.push_back(s);
                    return make_constant(sig, (int)(rng() % sig.num_colors), loops);
                }
                int jl = 1 + (int)(rng() % (budget - 1));
                std::vector<JoinRule> rs;
                for (const auto& r : rules)
                    if (rng() % 4 == 0) rs.push_back(r);
                return make_join(rs, rec(jl), rec(budget - jl));
            }();
            if (!maps.empty() && rng() % 5 == 0)
                out = make_recolor(maps[rng() % maps.size()], out);
            return out;
        }
    };
    Gen gen{sig, rules, maps, rng, nsym};
    int leaves = 1 + (int)(rng() % max_leaves);
    if (with_hole && leaves < 2) leaves = 2;
    Decomposition d = gen.rec(leaves);
    if (with_hole) {
        int k = (int)(rng() % leaves);
        replace_kth_leaf_with_hole(d, d.root, k);
    }
    return d;
}

}  // namespace msox
