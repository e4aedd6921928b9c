#include "msox/succinct.hpp"

#include <fstream>
#include <sstream>

#include "msox/error.hpp"

namespace msox {

int addr_bits(int n) {
    if (n < 1) throw Error("vertex count must be positive");
    int w = 0;
    while ((1 << w) < n) ++w;
    return w;
}

void SuccinctGraph::check() const {
    if (n < 1) throw Error("vertex count must be positive");
    arc_circuit.check();
    int w = addr_bits(n);
    if (arc_circuit.num_inputs != 2 * w)
        throw Error("arc circuit takes " + std::to_string(arc_circuit.num_inputs) +
                    " inputs, expected " + std::to_string(2 * w));
    if (arc_circuit.outputs.size() != sig.arc_symbols.size())
        throw Error("arc circuit emits " + std::to_string(arc_circuit.outputs.size()) +
                    " bits for " + std::to_string(sig.arc_symbols.size()) + " arc symbols");
    if (unary_circuit) {
        unary_circuit->check();
        if (unary_circuit->num_inputs != w)
            throw Error("unary circuit input width mismatch");
        if (unary_circuit->outputs.size() != sig.unary_symbols.size())
            throw Error("unary circuit output count mismatch");
    }
}

namespace {

std::vector<bool> encode_pair(int u, int v, int w) {
    std::vector<bool> bits(2 * w);
    for (int i = 0; i < w; ++i) {
        bits[i] = (u >> i) & 1;
        bits[w + i] = (v >> i) & 1;
    }
    return bits;
}

}  // namespace

Graph decode(const SuccinctGraph& sg, int guard) {
    sg.check();
    if (sg.n > guard)
        throw GuardExceeded("decoding " + std::to_string(sg.n) +
                            " vertices exceeds the guard of " + std::to_string(guard));
    int w = addr_bits(sg.n);
    Graph g;
    g.sig = sg.sig;
    g.n = sg.n;
    g.unary.resize(sg.sig.unary_symbols.size());
    for (int u = 0; u < sg.n; ++u) {
        for (int v = 0; v < sg.n; ++v) {
            std::vector<bool> out = eval_circuit(sg.arc_circuit, encode_pair(u, v, w));
            for (size_t s = 0; s < out.size(); ++s)
                if (out[s]) g.add_arc((int)s, u, v);
        }
        if (sg.unary_circuit) {
            std::vector<bool> bits(w);
            for (int i = 0; i < w; ++i) bits[i] = (u >> i) & 1;
            std::vector<bool> out = eval_circuit(*sg.unary_circuit, bits);
            for (size_t s = 0; s < out.size(); ++s)
                if (out[s]) g.unary[s].insert(u);
        }
    }
    g.check();
    return g;
}

SuccinctGraph encode_explicit(const Graph& g) {
    g.check();
    if (g.n < 1) throw Error("cannot encode the empty graph");
    int w = addr_bits(g.n);
    SuccinctGraph sg;
    sg.n = g.n;
    sg.sig = g.sig;

    CircuitBuilder b;
    b.c.num_inputs = 2 * w;
    CircuitBuilder::Vec ub = b.input_range(0, w);
    CircuitBuilder::Vec vb = b.input_range(w, w);
    CircuitBuilder::Vec outs;
    for (size_t s = 0; s < g.sig.arc_symbols.size(); ++s) {
        int acc = b.constant(false);
        for (const auto& [sym, u, v] : g.arcs) {
            if (sym != (int)s) continue;
            int hit = b.band(b.equal(ub, b.const_vec((uint64_t)u, w)),
                             b.equal(vb, b.const_vec((uint64_t)v, w)));
            acc = b.bor(acc, hit);
        }
        outs.push_back(acc);
    }
    b.set_outputs(outs);
    sg.arc_circuit = std::move(b.c);

    if (!g.sig.unary_symbols.empty()) {
        CircuitBuilder ub2;
        ub2.c.num_inputs = w;
        CircuitBuilder::Vec bits = ub2.input_range(0, w);
        CircuitBuilder::Vec uouts;
        for (size_t s = 0; s < g.sig.unary_symbols.size(); ++s) {
            int acc = ub2.constant(false);
            for (int v : g.unary[s])
                acc = ub2.bor(acc, ub2.equal(bits, ub2.const_vec((uint64_t)v, w)));
            uouts.push_back(acc);
        }
        ub2.set_outputs(uouts);
        sg.unary_circuit = std::move(ub2.c);
    }
    sg.check();
    return sg;
}

SuccinctGraph parse_succinct_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    SuccinctGraph sg;
    bool saw_header = false;
    std::ostringstream rest;
    while (std::getline(in, line)) {
        ++line_no;
        std::string bare = line;
        auto hash = bare.find('#');
        if (hash != std::string::npos) bare.erase(hash);
        std::istringstream ls(bare);
        std::string head;
        if (!(ls >> head)) {
            if (saw_header) rest << line << "\n";
            continue;
        }
        if (!saw_header) {
            if (head != "succinct")
                throw ParseError("line " + std::to_string(line_no) +
                                 ": expected 'succinct N=<n> sig=<...>'");
            std::string tok;
            while (ls >> tok) {
                if (tok.rfind("N=", 0) == 0) {
                    try {
                        sg.n = std::stoi(tok.substr(2));
                    } catch (...) {
                        throw ParseError("line " + std::to_string(line_no) + ": bad N");
                    }
                } else if (tok.rfind("sig=", 0) == 0) {
                    std::string names = tok.substr(4);
                    std::string cur;
                    for (char ch : names + ",") {
                        if (ch == ',') {
                            if (!cur.empty()) sg.sig.arc_symbols.push_back(cur);
                            cur.clear();
                        } else {
                            cur.push_back(ch);
                        }
                    }
                } else {
                    throw ParseError("line " + std::to_string(line_no) + ": unknown field '" +
                                     tok + "'");
                }
            }
            saw_header = true;
            continue;
        }
        rest << line << "\n";
    }
    if (!saw_header) throw ParseError("missing succinct header line");
    if (sg.sig.arc_symbols.empty()) throw ParseError("succinct header lists no arc symbols");
    sg.arc_circuit = parse_netlist(rest.str());
    sg.check();
    return sg;
}

std::string print_succinct_text(const SuccinctGraph& sg) {
    sg.check();
    if (sg.unary_circuit) throw Error("unary circuits have no file form");
    std::ostringstream out;
    out << "succinct N=" << sg.n << " sig=";
    for (size_t i = 0; i < sg.sig.arc_symbols.size(); ++i) {
        if (i) out << ",";
        out << sg.sig.arc_symbols[i];
    }
    out << "\n" << print_netlist(sg.arc_circuit);
    return out.str();
}

SuccinctGraph read_succinct_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_succinct_text(buf.str());
}

void write_succinct_file(const std::string& path, const SuccinctGraph& sg) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << print_succinct_text(sg);
}

}  // namespace msox
