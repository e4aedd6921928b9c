#include "msox/graph_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <vector>

#include "msox/error.hpp"

namespace msox {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

Graph parse_graph_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    bool have_header = false;
    Graph g;
    struct PendingSet {
        std::string sym;
        int v;
    };
    std::vector<PendingSet> sets;
    std::vector<std::tuple<std::string, int, int>> arcs;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string head;
        ls >> head;
        if (head.empty()) continue;
        auto fail = [&](const std::string& msg) {
            throw ParseError("graph text line " + std::to_string(lineno) + ": " + msg);
        };
        if (head == "graph") {
            if (have_header) fail("duplicate header");
            have_header = true;
            std::string tok;
            bool saw_n = false, saw_sig = false;
            while (ls >> tok) {
                if (tok.rfind("n=", 0) == 0) {
                    g.n = std::stoi(tok.substr(2));
                    saw_n = true;
                } else if (tok.rfind("sig=", 0) == 0) {
                    for (auto& s : split(tok.substr(4), ','))
                        if (!s.empty()) g.sig.arc_symbols.push_back(s);
                    saw_sig = true;
                } else {
                    fail("unknown header field '" + tok + "'");
                }
            }
            if (!saw_n || !saw_sig) fail("header needs n= and sig=");
            if (g.n < 0) fail("negative n");
        } else if (head == "arc") {
            std::string sym;
            int u, v;
            if (!(ls >> sym >> u >> v)) fail("arc needs <sym> <u> <v>");
            arcs.emplace_back(sym, u, v);
        } else if (head == "set") {
            std::string sym;
            int v;
            if (!(ls >> sym >> v)) fail("set needs <sym> <v>");
            sets.push_back({sym, v});
        } else {
            fail("unknown directive '" + head + "'");
        }
    }
    if (!have_header) throw ParseError("graph text: missing header");
    for (const auto& ps : sets)
        if (g.sig.unary_index(ps.sym) < 0) g.sig.unary_symbols.push_back(ps.sym);
    std::sort(g.sig.unary_symbols.begin(), g.sig.unary_symbols.end());
    g.unary.resize(g.sig.unary_symbols.size());
    for (const auto& [sym, u, v] : arcs) {
        int si = g.sig.arc_index(sym);
        if (si < 0) throw ParseError("graph text: arc symbol '" + sym + "' not in sig=");
        if (u < 0 || u >= g.n || v < 0 || v >= g.n)
            throw ParseError("graph text: arc endpoint out of range");
        g.arcs.insert({si, u, v});
    }
    for (const auto& ps : sets) {
        if (ps.v < 0 || ps.v >= g.n) throw ParseError("graph text: set member out of range");
        g.unary[g.sig.unary_index(ps.sym)].insert(ps.v);
    }
    g.check();
    return g;
}

std::string print_graph_text(const Graph& g) {
    std::ostringstream os;
    os << "graph n=" << g.n << " sig=";
    for (size_t i = 0; i < g.sig.arc_symbols.size(); ++i)
        os << (i ? "," : "") << g.sig.arc_symbols[i];
    os << "\n";
    for (const auto& [s, u, v] : g.arcs)
        os << "arc " << g.sig.arc_symbols[s] << " " << u << " " << v << "\n";
    for (size_t i = 0; i < g.unary.size(); ++i)
        for (int v : g.unary[i]) os << "set " << g.sig.unary_symbols[i] << " " << v << "\n";
    return os.str();
}

Graph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open graph file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_graph_text(ss.str());
}

void write_graph_file(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write graph file: " + path);
    out << print_graph_text(g);
}

}  // namespace msox
