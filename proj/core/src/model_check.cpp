#include "msox/model_check.hpp"

#include <map>
#include <optional>
#include <string>

#include "msox/error.hpp"

namespace msox {

namespace {

struct Evaluator {
    const ColoredGraph& g;
    std::map<std::string, int> vertex_env;
    std::map<std::string, uint64_t> set_env;

    int resolve_arc(const std::string& sym) const {
        int i = g.g.sig.arc_index(sym);
        if (i < 0) throw SignatureMismatch("formula uses arc symbol '" + sym +
                                           "' absent from the graph signature");
        return i;
    }

    int resolve_pred(const std::string& sym) const {
        int i = g.g.sig.unary_index(sym);
        if (i < 0) throw SignatureMismatch("formula uses pred symbol '" + sym +
                                           "' absent from the graph signature");
        return i;
    }

    bool eval(const FormulaPtr& f) {
        const int n = g.g.n;
        switch (f->kind) {
            case FKind::True: return true;
            case FKind::False: return false;
            case FKind::Eq: return vertex_env.at(f->var) == vertex_env.at(f->var2);
            case FKind::Arc:
                return g.g.has_arc(resolve_arc(f->symbol), vertex_env.at(f->var),
                                   vertex_env.at(f->var2));
            case FKind::InSet:
                return (set_env.at(f->var2) >> vertex_env.at(f->var)) & 1u;
            case FKind::Pred:
                return g.g.unary[resolve_pred(f->symbol)].count(vertex_env.at(f->var)) > 0;
            case FKind::ColorIs: {
                if (f->color < 0 || f->color >= g.g.sig.num_colors)
                    throw SignatureMismatch("formula color out of range");
                return g.colors[vertex_env.at(f->var)] == f->color;
            }
            case FKind::Not: return !eval(f->kids[0]);
            case FKind::And: return eval(f->kids[0]) && eval(f->kids[1]);
            case FKind::Or: return eval(f->kids[0]) || eval(f->kids[1]);
            case FKind::Implies: return !eval(f->kids[0]) || eval(f->kids[1]);
            case FKind::Iff: return eval(f->kids[0]) == eval(f->kids[1]);
            case FKind::ExistsV:
            case FKind::ForallV: {
                bool want = (f->kind == FKind::ExistsV);
                auto saved = vertex_env.find(f->var) != vertex_env.end()
                                 ? std::optional<int>(vertex_env[f->var])
                                 : std::nullopt;
                bool out = !want;
                for (int v = 0; v < n; ++v) {
                    vertex_env[f->var] = v;
                    if (eval(f->kids[0]) == want) {
                        out = want;
                        break;
                    }
                }
                if (saved)
                    vertex_env[f->var] = *saved;
                else
                    vertex_env.erase(f->var);
                return out;
            }
            case FKind::ExistsS:
            case FKind::ForallS: {
                bool want = (f->kind == FKind::ExistsS);
                auto saved = set_env.find(f->var) != set_env.end()
                                 ? std::optional<uint64_t>(set_env[f->var])
                                 : std::nullopt;
                bool out = !want;
                for (uint64_t mask = 0; mask < (uint64_t(1) << n); ++mask) {
                    set_env[f->var] = mask;
                    if (eval(f->kids[0]) == want) {
                        out = want;
                        break;
                    }
                }
                if (saved)
                    set_env[f->var] = *saved;
                else
                    set_env.erase(f->var);
                return out;
            }
        }
        throw Error("models: bad node");
    }
};

}  // namespace

bool models(const ColoredGraph& g, const FormulaPtr& f, const ModelCheckOptions& opts) {
    if (uses_set_quantifier(f)) {
        if (g.g.n > opts.max_n_with_sets)
            throw GuardExceeded("models: set quantifier on n=" + std::to_string(g.g.n) +
                                " exceeds guard " + std::to_string(opts.max_n_with_sets));
    } else if (g.g.n > opts.max_n_first_order) {
        throw GuardExceeded("models: n=" + std::to_string(g.g.n) + " exceeds guard " +
                            std::to_string(opts.max_n_first_order));
    }
    Evaluator ev{g};
    return ev.eval(f);
}

bool models(const Graph& g, const FormulaPtr& f, const ModelCheckOptions& opts) {
    return models(uniform_coloring(g), f, opts);
}

std::set<int> spectrum_sample(const FormulaPtr& f, const std::vector<Graph>& universe,
                              const ModelCheckOptions& opts) {
    std::set<int> sizes;
    for (const auto& g : universe)
        if (models(g, f, opts)) sizes.insert(g.n);
    return sizes;
}

PairClassification classify_pair(const FormulaPtr& psi, const FormulaPtr& chi,
                                 const std::vector<Graph>& universe,
                                 const ModelCheckOptions& opts) {
    PairClassification out;
    std::set<int> model_sizes, counter_sizes;
    for (const auto& g : universe) {
        if (!models(g, chi, opts)) continue;
        if (models(g, psi, opts)) {
            ++out.num_models;
            model_sizes.insert(g.n);
        } else {
            ++out.num_counter_models;
            counter_sizes.insert(g.n);
        }
    }
    for (int s : model_sizes)
        if (counter_sizes.count(s)) out.shared_sizes.insert(s);
    return out;
}

std::vector<Graph> all_graphs_one_symbol(int n, const Signature& sig) {
    if (sig.arc_symbols.size() != 1)
        throw SignatureMismatch("all_graphs_one_symbol: need exactly one arc symbol");
    if (n > 4) throw GuardExceeded("all_graphs_one_symbol: n > 4 is too many graphs");
    std::vector<Graph> out;
    const int pairs = n * n;
    for (uint64_t mask = 0; mask < (uint64_t(1) << pairs); ++mask) {
        Graph g;
        g.sig = sig;
        g.n = n;
        g.unary.resize(sig.unary_symbols.size());
        int bit = 0;
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v, ++bit)
                if ((mask >> bit) & 1u) g.arcs.insert({0, u, v});
        out.push_back(std::move(g));
    }
    return out;
}

Graph cycle_graph(int n, const Signature& sig) {
    if (n < 3) throw Error("cycle_graph: n must be at least 3");
    Graph g;
    g.sig = sig;
    g.n = n;
    g.unary.resize(sig.unary_symbols.size());
    for (int i = 0; i < n; ++i) {
        g.arcs.insert({0, i, (i + 1) % n});
        g.arcs.insert({0, (i + 1) % n, i});
    }
    return g;
}

Graph clique_with_loops(int n, const Signature& sig) {
    Graph g;
    g.sig = sig;
    g.n = n;
    g.unary.resize(sig.unary_symbols.size());
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) g.arcs.insert({0, u, v});
    return g;
}

Graph edgeless_graph(int n, const Signature& sig) {
    Graph g;
    g.sig = sig;
    g.n = n;
    g.unary.resize(sig.unary_symbols.size());
    return g;
}

Graph functional_graph(const std::vector<int>& succ, const Signature& sig) {
    Graph g;
    g.sig = sig;
    g.n = (int)succ.size();
    g.unary.resize(sig.unary_symbols.size());
    for (int v = 0; v < g.n; ++v) {
        if (succ[v] < 0 || succ[v] >= g.n) throw Error("functional_graph: successor out of range");
        g.arcs.insert({0, v, succ[v]});
    }
    return g;
}

std::vector<Graph> all_functional_graphs(int n, const Signature& sig) {
    std::vector<Graph> out;
    if (n == 0) return out;
    std::vector<int> succ(n, 0);
    while (true) {
        out.push_back(functional_graph(succ, sig));
        int i = 0;
        while (i < n && ++succ[i] == n) succ[i++] = 0;
        if (i == n) break;
    }
    return out;
}

}  // namespace msox
