#include "msox/mso_type.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <unordered_map>

#include "msox/error.hpp"

namespace msox {

namespace {

// One quantifier move of the comparison game: either a pinned vertex or a
// chosen vertex set (as a bitmask, hence the n <= 64 cap).
struct Move {
    bool is_set = false;
    int v = -1;
    uint64_t mask = 0;
};

// Atomic facts visible to an assignment: colors, unary membership, arcs and
// equality among pinned vertices, membership of pinned vertices in chosen
// sets.  Two assignments with equal facts satisfy the same quantifier-free
// formulas over their move variables.
struct Facts {
    int sig_tag = 0;
    int nm = 0;
    int nsym = 0;
    std::vector<char> kinds;      // 'v' or 's' per move
    std::vector<int> color;       // per move, -1 for set moves
    std::vector<uint32_t> unary;  // per move, bitmask over unary symbols
    std::vector<char> arc;        // nsym * nm * nm
    std::vector<char> eq;         // nm * nm
    std::vector<char> in;        // nm * nm, vertex move i member of set move j

    bool arc_at(int s, int i, int j) const { return arc[(s * nm + i) * nm + j] != 0; }
    bool eq_at(int i, int j) const { return eq[i * nm + j] != 0; }
    bool in_at(int i, int j) const { return in[i * nm + j] != 0; }
};

Facts build_facts(const ColoredGraph& g, const std::vector<Move>& asg, int sig_tag) {
    Facts f;
    f.sig_tag = sig_tag;
    f.nm = (int)asg.size();
    f.nsym = (int)g.g.sig.arc_symbols.size();
    int nu = (int)g.g.sig.unary_symbols.size();
    f.kinds.resize(f.nm);
    f.color.assign(f.nm, -1);
    f.unary.assign(f.nm, 0);
    f.arc.assign((size_t)f.nsym * f.nm * f.nm, 0);
    f.eq.assign((size_t)f.nm * f.nm, 0);
    f.in.assign((size_t)f.nm * f.nm, 0);
    for (int i = 0; i < f.nm; ++i) {
        if (asg[i].is_set) {
            f.kinds[i] = 's';
            continue;
        }
        f.kinds[i] = 'v';
        int v = asg[i].v;
        f.color[i] = g.colors[v];
        for (int u = 0; u < nu; ++u)
            if (g.g.unary[u].count(v)) f.unary[i] |= 1u << u;
        for (int j = 0; j < f.nm; ++j) {
            if (asg[j].is_set) {
                if ((asg[j].mask >> v) & 1) f.in[i * f.nm + j] = 1;
                continue;
            }
            if (asg[j].v == v) f.eq[i * f.nm + j] = 1;
            for (int s = 0; s < f.nsym; ++s)
                if (g.g.has_arc(s, v, asg[j].v)) f.arc[(s * f.nm + i) * f.nm + j] = 1;
        }
    }
    return f;
}

void encode_facts_into(const Facts& f, std::string& out) {
    out.clear();
    out.push_back((char)(f.sig_tag & 0xff));
    out.push_back((char)((f.sig_tag >> 8) & 0xff));
    out.push_back((char)f.nm);
    for (int i = 0; i < f.nm; ++i) {
        out.push_back(f.kinds[i]);
        out.push_back((char)(f.color[i] & 0xff));
        out.push_back((char)((f.color[i] >> 8) & 0xff));
        uint32_t u = f.unary[i];
        for (int b = 0; b < 4; ++b) out.push_back((char)((u >> (8 * b)) & 0xff));
    }
    out.append(f.arc.begin(), f.arc.end());
    out.append(f.eq.begin(), f.eq.end());
    out.append(f.in.begin(), f.in.end());
}

uint64_t fnv64(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(uint64_t h) {
    static const char* d = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = d[h & 0xf];
        h >>= 4;
    }
    return s;
}

std::string hex_bytes(const std::string& raw) {
    static const char* d = "0123456789abcdef";
    std::string s;
    s.reserve(raw.size() * 2);
    for (unsigned char c : raw) {
        s.push_back(d[c >> 4]);
        s.push_back(d[c & 0xf]);
    }
    return s;
}

struct TypeNode {
    int rank = 0;
    Facts facts;
    std::vector<int> vkids, skids;  // sorted, deduplicated
    std::string canon;              // filled lazily
};

// Process-wide intern table.  Not thread safe; the library is meant for
// single-threaded drivers.
class Pool {
  public:
    static Pool& inst() {
        static Pool p;
        return p;
    }

    int sig_tag(const Signature& s) {
        std::string e;
        for (const auto& a : s.arc_symbols) e += a + '\x1f';
        e += '\x1e';
        for (const auto& u : s.unary_symbols) e += u + '\x1f';
        e += '\x1e';
        e += std::to_string(s.num_colors);
        auto [it, fresh] = sig_tags_.try_emplace(e, (int)sig_tags_.size());
        return it->second;
    }

    int intern(int rank, const ColoredGraph& g, const std::vector<Move>& asg, int tag,
               std::vector<int> vkids, std::vector<int> skids) {
        Facts f = build_facts(g, asg, tag);
        encode_facts_into(f, buf_);
        key_.clear();
        key_.push_back((char)rank);
        key_ += buf_;
        key_.push_back('V');
        append_ids(key_, vkids);
        key_.push_back('S');
        append_ids(key_, skids);
        auto it = table_.find(key_);
        if (it != table_.end()) return it->second;
        int id = (int)nodes_.size();
        nodes_.push_back(TypeNode{rank, std::move(f), std::move(vkids), std::move(skids), {}});
        table_.emplace(key_, id);
        return id;
    }

    const TypeNode& at(int id) const { return nodes_[id]; }

    const std::string& canon(int id) {
        TypeNode& nd = nodes_[id];
        if (!nd.canon.empty()) return nd.canon;
        std::string raw;
        encode_facts_into(nd.facts, raw);
        std::string c = "R" + std::to_string(nd.rank) + "|F" + hex_bytes(raw) + "|V{";
        c += kid_digests(nd.vkids);
        c += "}|S{";
        c += kid_digests(nd.skids);
        c += "}";
        nd.canon = std::move(c);
        return nd.canon;
    }

    void offer_witness(int id, const ColoredGraph& g) {
        auto it = witness_.find(id);
        if (it == witness_.end()) {
            witness_.emplace(id, g);
            return;
        }
        const ColoredGraph& old = it->second;
        if (g.g.n < old.g.n || (g.g.n == old.g.n && encode_graph(g) < encode_graph(old)))
            it->second = g;
    }

    const ColoredGraph& witness(int id) const { return witness_.at(id); }

    std::unordered_map<std::string, int> memo;  // graph encoding + rank -> id

  private:
    static void append_ids(std::string& key, const std::vector<int>& ids) {
        for (int id : ids)
            for (int b = 0; b < 4; ++b) key.push_back((char)((id >> (8 * b)) & 0xff));
    }

    // Children are listed by digest, not expanded inline, so the canonical
    // form stays linear in the child count instead of exploding with rank.
    std::string kid_digests(const std::vector<int>& kids) {
        std::vector<std::string> ds;
        ds.reserve(kids.size());
        for (int kid : kids) ds.push_back(hex64(fnv64(canon(kid))));
        std::sort(ds.begin(), ds.end());
        std::string out;
        for (size_t i = 0; i < ds.size(); ++i) {
            if (i) out.push_back(',');
            out += ds[i];
        }
        return out;
    }

    std::deque<TypeNode> nodes_;
    std::unordered_map<std::string, int> table_;
    std::map<std::string, int> sig_tags_;
    std::unordered_map<int, ColoredGraph> witness_;
    std::string buf_, key_;
};

struct Builder {
    const ColoredGraph& g;
    const TypeOptions& opts;
    int tag;
    int n;
    std::vector<Move> asg;

    int run(int budget) {
        if (budget == 0) return Pool::inst().intern(0, g, asg, tag, {}, {});
        std::vector<int> vk, sk;
        vk.reserve(n);
        for (int v = 0; v < n; ++v) {
            asg.push_back(Move{false, v, 0});
            vk.push_back(run(budget - 1));
            asg.pop_back();
        }
        if (budget == 1) {
            // A set chosen on the last move only shows up through membership
            // of already pinned vertices, so subsets of the pinned vertices
            // cover every reachable child; this replaces the 2^n sweep.
            std::vector<int> pins;
            for (const Move& mv : asg)
                if (!mv.is_set && std::find(pins.begin(), pins.end(), mv.v) == pins.end())
                    pins.push_back(mv.v);
            for (uint32_t pm = 0; pm < (1u << pins.size()); ++pm) {
                uint64_t mask = 0;
                for (size_t i = 0; i < pins.size(); ++i)
                    if ((pm >> i) & 1) mask |= 1ull << pins[i];
                asg.push_back(Move{true, -1, mask});
                sk.push_back(Pool::inst().intern(0, g, asg, tag, {}, {}));
                asg.pop_back();
            }
        } else {
            if (n > opts.max_n_full_sets)
                throw GuardExceeded("set expansion over " + std::to_string(n) +
                                    " vertices exceeds the bound of " +
                                    std::to_string(opts.max_n_full_sets));
            for (uint64_t mask = 0; mask < (1ull << n); ++mask) {
                asg.push_back(Move{true, -1, mask});
                sk.push_back(run(budget - 1));
                asg.pop_back();
            }
        }
        auto dedup = [](std::vector<int>& xs) {
            std::sort(xs.begin(), xs.end());
            xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        };
        dedup(vk);
        dedup(sk);
        return Pool::inst().intern(budget, g, asg, tag, std::move(vk), std::move(sk));
    }
};

int compute_id(const ColoredGraph& g, int m, const TypeOptions& opts) {
    g.check();
    if (m < 0) throw Error("rank must be nonnegative");
    if (g.g.n > opts.max_n)
        throw GuardExceeded("graph has " + std::to_string(g.g.n) +
                            " vertices, over the limit of " + std::to_string(opts.max_n));
    Pool& pool = Pool::inst();
    std::string key = encode_graph(g) + "#" + std::to_string(m);
    auto it = pool.memo.find(key);
    int id;
    if (it != pool.memo.end()) {
        id = it->second;
    } else {
        Builder b{g, opts, pool.sig_tag(g.g.sig), g.g.n, {}};
        // The guard only matters for expansions that happen, so probe lazily:
        // ranks 0 and 1 never hit the full sweep.
        id = b.run(m);
        pool.memo.emplace(std::move(key), id);
    }
    pool.offer_witness(id, g);
    return id;
}

}  // namespace

TypeOptions raised_for(const TypeOptions& opts, int n) {
    // Internal growth (union copies for stabilization, absorption checks)
    // needs wider sweeps than the caller's default; cap at 26 so a runaway
    // request still fails loudly instead of running for hours.
    TypeOptions r = opts;
    r.max_n_full_sets = std::min(26, std::max(opts.max_n_full_sets, n));
    return r;
}

MsoType type_of(const ColoredGraph& g, int m, const TypeOptions& opts) {
    int id = compute_id(g, m, opts);
    return MsoType{id, m, Pool::inst().witness(id)};
}

MsoType type_of(const Graph& g, int m, const TypeOptions& opts) {
    return type_of(uniform_coloring(g), m, opts);
}

namespace {

struct TypeEval {
    const Signature& sig;
    std::map<std::string, int> pos;  // bound variable -> move index

    int arc_sym(const std::string& s) const {
        int i = sig.arc_index(s);
        if (i < 0) throw SignatureMismatch("arc symbol '" + s + "' not in the summary's signature");
        return i;
    }
    int unary_sym(const std::string& s) const {
        int i = sig.unary_index(s);
        if (i < 0) throw SignatureMismatch("predicate '" + s + "' not in the summary's signature");
        return i;
    }

    bool eval(int id, const Formula* f) {
        const TypeNode& nd = Pool::inst().at(id);
        switch (f->kind) {
            case FKind::True:
                return true;
            case FKind::False:
                return false;
            case FKind::Eq:
                return nd.facts.eq_at(pos.at(f->var), pos.at(f->var2));
            case FKind::Arc:
                return nd.facts.arc_at(arc_sym(f->symbol), pos.at(f->var), pos.at(f->var2));
            case FKind::InSet:
                return nd.facts.in_at(pos.at(f->var), pos.at(f->var2));
            case FKind::Pred:
                return (nd.facts.unary[pos.at(f->var)] >> unary_sym(f->symbol)) & 1;
            case FKind::ColorIs:
                return nd.facts.color[pos.at(f->var)] == f->color;
            case FKind::Not:
                return !eval(id, f->kids[0].get());
            case FKind::And:
                return eval(id, f->kids[0].get()) && eval(id, f->kids[1].get());
            case FKind::Or:
                return eval(id, f->kids[0].get()) || eval(id, f->kids[1].get());
            case FKind::Implies:
                return !eval(id, f->kids[0].get()) || eval(id, f->kids[1].get());
            case FKind::Iff:
                return eval(id, f->kids[0].get()) == eval(id, f->kids[1].get());
            case FKind::ExistsV:
            case FKind::ForallV:
            case FKind::ExistsS:
            case FKind::ForallS: {
                if (nd.rank == 0)
                    throw Error("quantifier left over at rank 0; check rank(f) first");
                bool vertex = f->kind == FKind::ExistsV || f->kind == FKind::ForallV;
                bool exists = f->kind == FKind::ExistsV || f->kind == FKind::ExistsS;
                const std::vector<int>& kids = vertex ? nd.vkids : nd.skids;
                auto saved = pos.find(f->var) != pos.end()
                                 ? std::optional<int>(pos[f->var])
                                 : std::nullopt;
                pos[f->var] = nd.facts.nm;
                bool out = !exists;
                for (int kid : kids) {
                    bool b = eval(kid, f->kids[0].get());
                    if (exists && b) {
                        out = true;
                        break;
                    }
                    if (!exists && !b) {
                        out = false;
                        break;
                    }
                }
                if (saved)
                    pos[f->var] = *saved;
                else
                    pos.erase(f->var);
                return out;
            }
        }
        throw Error("unreachable formula kind");
    }
};

}  // namespace

bool type_models(const MsoType& t, const FormulaPtr& f) {
    if (!f) throw Error("null formula");
    if (rank(f) > t.rank_m)
        throw Error("formula rank " + std::to_string(rank(f)) + " exceeds summary rank " +
                    std::to_string(t.rank_m));
    TypeEval ev{t.witness.g.sig, {}};
    return ev.eval(t.id, f.get());
}

std::string type_canonical(const MsoType& t) { return Pool::inst().canon(t.id); }

std::string type_digest(const MsoType& t) { return hex64(fnv64(Pool::inst().canon(t.id))); }

MsoType union_type(const MsoType& a, const MsoType& b, const TypeOptions& opts) {
    if (a.rank_m != b.rank_m) throw Error("summaries of different rank");
    if (!(a.witness.g.sig == b.witness.g.sig))
        throw SignatureMismatch("summaries over different signatures");
    return type_of(disjoint_union(a.witness, b.witness), a.rank_m, opts);
}

int stabilization_count(const ColoredGraph& g, int m, const TypeOptions& opts, int max_copies) {
    if (g.g.n == 0) return 1;
    MsoType prev = type_of(g, m, raised_for(opts, g.g.n));
    for (int copies = 1; copies < max_copies; ++copies) {
        ColoredGraph next = disjoint_union_copies(g, copies + 1);
        MsoType t = type_of(next, m, raised_for(opts, next.g.n));
        if (t == prev) return copies;
        prev = t;
    }
    throw GuardExceeded("no stabilization within " + std::to_string(max_copies) + " copies");
}

SaturationPlan saturation_plan(const std::vector<ColoredGraph>& universe, int m,
                               const TypeOptions& opts) {
    if (universe.empty()) throw Error("empty universe");
    for (size_t i = 1; i < universe.size(); ++i)
        if (!(universe[i].g.sig == universe[0].g.sig))
            throw SignatureMismatch("universe members over different signatures");
    SaturationPlan plan;
    std::vector<int> seen_ids;
    for (size_t i = 0; i < universe.size(); ++i) {
        MsoType t = type_of(universe[i], m, raised_for(opts, universe[i].g.n));
        auto it = std::find(seen_ids.begin(), seen_ids.end(), t.id);
        if (it == seen_ids.end()) {
            seen_ids.push_back(t.id);
            plan.types.push_back(t);
            plan.rep_index.push_back((int)i);
            continue;
        }
        size_t slot = (size_t)(it - seen_ids.begin());
        const ColoredGraph& cur = universe[plan.rep_index[slot]];
        if (universe[i].g.n < cur.g.n) plan.rep_index[slot] = (int)i;
    }
    for (int rep : plan.rep_index)
        plan.copies.push_back(stabilization_count(universe[rep], m, opts));
    return plan;
}

Graph saturating_graph(const std::vector<Graph>& universe, int m, const FormulaPtr& chi,
                       bool verify_absorption, const TypeOptions& opts,
                       const ModelCheckOptions& mc) {
    if (universe.empty()) throw Error("empty universe");
    std::vector<ColoredGraph> colored;
    colored.reserve(universe.size());
    for (size_t i = 0; i < universe.size(); ++i) {
        if (!models(universe[i], chi, mc))
            throw Error("universe member " + std::to_string(i) +
                        " does not satisfy the side condition");
        colored.push_back(uniform_coloring(universe[i]));
    }
    SaturationPlan plan = saturation_plan(colored, m, opts);
    Graph omega{universe[0].sig, 0, {}, {}};
    omega.unary.resize(omega.sig.unary_symbols.size());
    for (size_t i = 0; i < plan.rep_index.size(); ++i) {
        Graph part = disjoint_union_copies(universe[plan.rep_index[i]], plan.copies[i]);
        omega = disjoint_union(omega, part);
    }
    if (!models(omega, chi, mc))
        throw Error("combined graph does not satisfy the side condition; "
                    "it is not closed under disjoint union here");
    if (verify_absorption) {
        MsoType t_omega = type_of(omega, m, raised_for(opts, omega.n));
        for (size_t i = 0; i < universe.size(); ++i) {
            Graph side = disjoint_union(universe[i], omega);
            MsoType t = type_of(side, m, raised_for(opts, side.n));
            if (!(t == t_omega))
                throw Error("absorption failed for universe member " + std::to_string(i));
        }
    }
    return omega;
}

std::vector<std::optional<MsoType>> annotate_types(const Decomposition& c, int m,
                                                   const TypeOptions& opts) {
    c.check();
    std::vector<std::optional<MsoType>> out(c.nodes.size());
    std::function<bool(int)> rec = [&](int idx) -> bool {
        const DecompNode& nd = c.nodes[idx];
        bool hole_free = true;
        switch (nd.op) {
            case NodeOp::Marked:
                hole_free = false;
                break;
            case NodeOp::Constant:
                break;
            case NodeOp::Recolor:
                hole_free = rec(nd.child);
                break;
            case NodeOp::Join: {
                bool l = rec(nd.left);
                bool r = rec(nd.right);
                hole_free = l && r;
                break;
            }
        }
        if (hole_free) {
            Decomposition sub{c.sig, c.nodes, idx};
            out[idx] = type_of(eval(sub), m, opts);
        }
        return hole_free;
    };
    rec(c.root);
    return out;
}

bool check_compositionality(const Decomposition& context, const Decomposition& a,
                            const Decomposition& b, int m, const TypeOptions& opts) {
    context.check();
    a.check();
    b.check();
    if (count_marked(context) != 1) throw Error("context must have exactly one hole");
    if (count_marked(a) != 0 || count_marked(b) != 0)
        throw Error("operands must be hole-free");
    if (!(context.sig == a.sig) || !(a.sig == b.sig))
        throw SignatureMismatch("context and operands over different signatures");
    MsoType ta = type_of(eval(a), m, opts);
    MsoType tb = type_of(eval(b), m, opts);
    if (!(ta == tb)) throw Error("operands are not summary-equal");
    MsoType ga = type_of(eval(glue(context, a)), m, opts);
    MsoType gb = type_of(eval(glue(context, b)), m, opts);
    return ga == gb;
}

}  // namespace msox
