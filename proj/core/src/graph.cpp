#include "msox/graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "msox/error.hpp"

namespace msox {

void Graph::add_arc(int sym, int u, int v) {
    if (sym < 0 || sym >= (int)sig.arc_symbols.size())
        throw SignatureMismatch("arc symbol index out of range");
    if (u < 0 || u >= n || v < 0 || v >= n)
        throw Error("arc endpoint out of range");
    arcs.insert({sym, u, v});
}

void Graph::check() const {
    if (unary.size() != sig.unary_symbols.size())
        throw SignatureMismatch("unary set count does not match signature");
    for (const auto& [s, u, v] : arcs) {
        if (s < 0 || s >= (int)sig.arc_symbols.size())
            throw SignatureMismatch("arc symbol index out of range");
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw Error("arc endpoint out of range");
    }
    for (const auto& set : unary)
        for (int v : set)
            if (v < 0 || v >= n) throw Error("unary member out of range");
}

void ColoredGraph::check() const {
    g.check();
    if ((int)colors.size() != g.n) throw Error("color vector size mismatch");
    for (int c : colors)
        if (c < 0 || c >= g.sig.num_colors) throw Error("vertex color out of range");
}

Graph disjoint_union(const Graph& a, const Graph& b) {
    if (a.sig != b.sig) throw SignatureMismatch("disjoint_union: signatures differ");
    Graph r = a;
    r.n = a.n + b.n;
    for (const auto& [s, u, v] : b.arcs) r.arcs.insert({s, u + a.n, v + a.n});
    for (size_t i = 0; i < b.unary.size(); ++i)
        for (int v : b.unary[i]) r.unary[i].insert(v + a.n);
    return r;
}

ColoredGraph disjoint_union(const ColoredGraph& a, const ColoredGraph& b) {
    ColoredGraph r;
    r.g = disjoint_union(a.g, b.g);
    r.colors = a.colors;
    r.colors.insert(r.colors.end(), b.colors.begin(), b.colors.end());
    return r;
}

Graph disjoint_union_copies(const Graph& g, int copies) {
    if (copies < 1) throw Error("disjoint_union_copies: need at least one copy");
    Graph r = g;
    for (int i = 1; i < copies; ++i) r = disjoint_union(r, g);
    return r;
}

ColoredGraph disjoint_union_copies(const ColoredGraph& g, int copies) {
    if (copies < 1) throw Error("disjoint_union_copies: need at least one copy");
    ColoredGraph r = g;
    for (int i = 1; i < copies; ++i) r = disjoint_union(r, g);
    return r;
}

ColoredGraph uniform_coloring(const Graph& g) {
    ColoredGraph cg;
    cg.g = g;
    cg.g.sig.num_colors = 1;
    cg.colors.assign(g.n, 0);
    return cg;
}

const Graph& underlying(const ColoredGraph& cg) { return cg.g; }

bool graph_equal(const Graph& a, const Graph& b) {
    if (a.sig != b.sig) throw SignatureMismatch("graph_equal: signatures differ");
    return a.n == b.n && a.arcs == b.arcs && a.unary == b.unary;
}

Graph permute_vertices(const Graph& g, const std::vector<int>& perm) {
    if ((int)perm.size() != g.n) throw Error("permute_vertices: size mismatch");
    Graph r;
    r.sig = g.sig;
    r.n = g.n;
    r.unary.resize(g.unary.size());
    for (const auto& [s, u, v] : g.arcs) r.arcs.insert({s, perm[u], perm[v]});
    for (size_t i = 0; i < g.unary.size(); ++i)
        for (int v : g.unary[i]) r.unary[i].insert(perm[v]);
    return r;
}

ColoredGraph permute_vertices(const ColoredGraph& g, const std::vector<int>& perm) {
    ColoredGraph r;
    r.g = permute_vertices(g.g, perm);
    r.colors.resize(g.colors.size());
    for (int v = 0; v < (int)g.colors.size(); ++v) r.colors[perm[v]] = g.colors[v];
    return r;
}

bool isomorphic_small(const Graph& a, const Graph& b, int max_n) {
    if (a.sig != b.sig) throw SignatureMismatch("isomorphic_small: signatures differ");
    if (a.n != b.n) return false;
    if (a.arcs.size() != b.arcs.size()) return false;
    if (a.n > max_n) throw GuardExceeded("isomorphic_small: n exceeds guard");
    std::vector<int> perm(a.n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        if (permute_vertices(a, perm) == b) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

std::string encode_graph(const Graph& g) {
    std::ostringstream os;
    os << "n" << g.n << ";k" << g.sig.num_colors << ";a";
    for (const auto& s : g.sig.arc_symbols) os << s << ",";
    os << ";u";
    for (const auto& s : g.sig.unary_symbols) os << s << ",";
    os << ";";
    for (const auto& [s, u, v] : g.arcs) os << s << ":" << u << ":" << v << ";";
    os << "|";
    for (const auto& set : g.unary) {
        for (int v : set) os << v << ",";
        os << ";";
    }
    return os.str();
}

std::string encode_graph(const ColoredGraph& g) {
    std::string s = encode_graph(g.g);
    s += "|c";
    for (int c : g.colors) {
        s += std::to_string(c);
        s += ",";
    }
    return s;
}

}  // namespace msox
