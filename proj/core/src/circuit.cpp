#include "msox/circuit.hpp"

#include <fstream>
#include <sstream>

#include "msox/error.hpp"

namespace msox {

void BoolCircuit::check() const {
    if (num_inputs < 0) throw Error("negative input width");
    for (size_t i = 0; i < gates.size(); ++i) {
        const Gate& g = gates[i];
        auto ref = [&](int r) {
            if (r < 0 || r >= (int)i)
                throw Error("gate " + std::to_string(i) + " references gate " +
                            std::to_string(r) + " out of order");
        };
        switch (g.kind) {
            case GateKind::Input:
                if (g.index < 0 || g.index >= num_inputs)
                    throw Error("gate " + std::to_string(i) + " reads input " +
                                std::to_string(g.index) + " of " + std::to_string(num_inputs));
                break;
            case GateKind::Const:
                break;
            case GateKind::Not:
                ref(g.a);
                break;
            case GateKind::And:
            case GateKind::Or:
                ref(g.a);
                ref(g.b);
                break;
        }
    }
    if (outputs.empty()) throw Error("circuit has no outputs");
    for (int o : outputs)
        if (o < 0 || o >= (int)gates.size()) throw Error("output references missing gate");
}

std::vector<bool> eval_circuit(const BoolCircuit& c, const std::vector<bool>& bits) {
    if ((int)bits.size() != c.num_inputs)
        throw Error("circuit expects " + std::to_string(c.num_inputs) + " inputs, got " +
                    std::to_string(bits.size()));
    std::vector<bool> val(c.gates.size());
    for (size_t i = 0; i < c.gates.size(); ++i) {
        const Gate& g = c.gates[i];
        switch (g.kind) {
            case GateKind::Input:
                val[i] = bits[g.index];
                break;
            case GateKind::Const:
                val[i] = g.bit;
                break;
            case GateKind::Not:
                val[i] = !val[g.a];
                break;
            case GateKind::And:
                val[i] = val[g.a] && val[g.b];
                break;
            case GateKind::Or:
                val[i] = val[g.a] || val[g.b];
                break;
        }
    }
    std::vector<bool> out;
    out.reserve(c.outputs.size());
    for (int o : c.outputs) out.push_back(val[o]);
    return out;
}

namespace {

int gate_ref(const std::string& tok, size_t next, int line_no) {
    if (tok.size() < 2 || tok[0] != 'g')
        throw ParseError("line " + std::to_string(line_no) + ": expected gate name, got '" +
                         tok + "'");
    int id;
    try {
        size_t used;
        id = std::stoi(tok.substr(1), &used);
        if (used != tok.size() - 1) throw std::invalid_argument("");
    } catch (...) {
        throw ParseError("line " + std::to_string(line_no) + ": bad gate name '" + tok + "'");
    }
    if (id < 0 || id >= (int)next)
        throw ParseError("line " + std::to_string(line_no) + ": gate '" + tok +
                         "' not defined yet");
    return id;
}

}  // namespace

BoolCircuit parse_netlist(const std::string& text) {
    BoolCircuit c;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    bool saw_inputs = false, saw_outputs = false;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        if (head == "inputs") {
            if (saw_inputs) throw ParseError("line " + std::to_string(line_no) +
                                             ": duplicate inputs line");
            if (!(ls >> c.num_inputs) || c.num_inputs < 0)
                throw ParseError("line " + std::to_string(line_no) + ": bad input width");
            saw_inputs = true;
            continue;
        }
        if (!saw_inputs)
            throw ParseError("line " + std::to_string(line_no) + ": expected 'inputs' first");
        if (head == "outputs") {
            std::string tok;
            while (ls >> tok) c.outputs.push_back(gate_ref(tok, c.gates.size(), line_no));
            saw_outputs = true;
            continue;
        }
        if (saw_outputs)
            throw ParseError("line " + std::to_string(line_no) + ": gate after outputs line");
        int id = gate_ref(head, c.gates.size() + 1, line_no);
        if (id != (int)c.gates.size())
            throw ParseError("line " + std::to_string(line_no) + ": gate ids must be dense: expected g" +
                             std::to_string(c.gates.size()));
        std::string eq, op;
        if (!(ls >> eq >> op) || eq != "=")
            throw ParseError("line " + std::to_string(line_no) + ": expected 'g<i> = OP ...'");
        Gate g;
        std::string t1, t2;
        if (op == "AND" || op == "OR") {
            g.kind = op == "AND" ? GateKind::And : GateKind::Or;
            if (!(ls >> t1 >> t2))
                throw ParseError("line " + std::to_string(line_no) + ": " + op +
                                 " needs two operands");
            g.a = gate_ref(t1, c.gates.size(), line_no);
            g.b = gate_ref(t2, c.gates.size(), line_no);
        } else if (op == "NOT") {
            g.kind = GateKind::Not;
            if (!(ls >> t1))
                throw ParseError("line " + std::to_string(line_no) + ": NOT needs an operand");
            g.a = gate_ref(t1, c.gates.size(), line_no);
        } else if (op == "INPUT") {
            g.kind = GateKind::Input;
            if (!(ls >> g.index) || g.index < 0 || g.index >= c.num_inputs)
                throw ParseError("line " + std::to_string(line_no) + ": bad input index");
        } else if (op == "CONST") {
            g.kind = GateKind::Const;
            int b;
            if (!(ls >> b) || (b != 0 && b != 1))
                throw ParseError("line " + std::to_string(line_no) + ": CONST needs 0 or 1");
            g.bit = b == 1;
        } else {
            throw ParseError("line " + std::to_string(line_no) + ": unknown op '" + op + "'");
        }
        std::string extra;
        if (ls >> extra)
            throw ParseError("line " + std::to_string(line_no) + ": trailing '" + extra + "'");
        c.gates.push_back(g);
    }
    if (!saw_inputs) throw ParseError("netlist missing inputs line");
    if (!saw_outputs) throw ParseError("netlist missing outputs line");
    c.check();
    return c;
}

std::string print_netlist(const BoolCircuit& c) {
    c.check();
    std::ostringstream out;
    out << "inputs " << c.num_inputs << "\n";
    for (size_t i = 0; i < c.gates.size(); ++i) {
        const Gate& g = c.gates[i];
        out << "g" << i << " = ";
        switch (g.kind) {
            case GateKind::Input:
                out << "INPUT " << g.index;
                break;
            case GateKind::Const:
                out << "CONST " << (g.bit ? 1 : 0);
                break;
            case GateKind::Not:
                out << "NOT g" << g.a;
                break;
            case GateKind::And:
                out << "AND g" << g.a << " g" << g.b;
                break;
            case GateKind::Or:
                out << "OR g" << g.a << " g" << g.b;
                break;
        }
        out << "\n";
    }
    out << "outputs";
    for (int o : c.outputs) out << " g" << o;
    out << "\n";
    return out.str();
}

BoolCircuit read_netlist_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_netlist(buf.str());
}

void write_netlist_file(const std::string& path, const BoolCircuit& c) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << print_netlist(c);
}

int CircuitBuilder::input(int idx) {
    Gate g;
    g.kind = GateKind::Input;
    g.index = idx;
    c.gates.push_back(g);
    return (int)c.gates.size() - 1;
}

int CircuitBuilder::constant(bool b) {
    Gate g;
    g.kind = GateKind::Const;
    g.bit = b;
    c.gates.push_back(g);
    return (int)c.gates.size() - 1;
}

int CircuitBuilder::bnot(int a) {
    Gate g;
    g.kind = GateKind::Not;
    g.a = a;
    c.gates.push_back(g);
    return (int)c.gates.size() - 1;
}

int CircuitBuilder::band(int a, int b) {
    Gate g;
    g.kind = GateKind::And;
    g.a = a;
    g.b = b;
    c.gates.push_back(g);
    return (int)c.gates.size() - 1;
}

int CircuitBuilder::bor(int a, int b) {
    Gate g;
    g.kind = GateKind::Or;
    g.a = a;
    g.b = b;
    c.gates.push_back(g);
    return (int)c.gates.size() - 1;
}

int CircuitBuilder::bxor(int a, int b) { return band(bor(a, b), bnot(band(a, b))); }

int CircuitBuilder::bxnor(int a, int b) { return bnot(bxor(a, b)); }

CircuitBuilder::Vec CircuitBuilder::input_range(int start, int w) {
    Vec v(w);
    for (int i = 0; i < w; ++i) v[i] = input(start + i);
    return v;
}

CircuitBuilder::Vec CircuitBuilder::const_vec(uint64_t value, int w) {
    Vec v(w);
    for (int i = 0; i < w; ++i) v[i] = constant((value >> i) & 1);
    return v;
}

CircuitBuilder::Vec CircuitBuilder::zero_extend(const Vec& a, int w) {
    Vec v = a;
    while ((int)v.size() < w) v.push_back(constant(false));
    if ((int)v.size() != w) throw Error("zero_extend cannot shrink");
    return v;
}

CircuitBuilder::Vec CircuitBuilder::add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw Error("add width mismatch");
    Vec out(a.size());
    int carry = constant(false);
    for (size_t i = 0; i < a.size(); ++i) {
        int axb = bxor(a[i], b[i]);
        out[i] = bxor(axb, carry);
        carry = bor(band(a[i], b[i]), band(axb, carry));
    }
    return out;
}

CircuitBuilder::Vec CircuitBuilder::sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw Error("sub width mismatch");
    Vec out(a.size());
    int borrow = constant(false);
    for (size_t i = 0; i < a.size(); ++i) {
        int axb = bxor(a[i], b[i]);
        out[i] = bxor(axb, borrow);
        borrow = bor(band(bnot(a[i]), b[i]), band(bnot(axb), borrow));
    }
    return out;
}

int CircuitBuilder::equal(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw Error("equal width mismatch");
    int acc = constant(true);
    for (size_t i = 0; i < a.size(); ++i) acc = band(acc, bxnor(a[i], b[i]));
    return acc;
}

int CircuitBuilder::less_than(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw Error("less_than width mismatch");
    int lt = constant(false);
    int eq = constant(true);
    for (int i = (int)a.size() - 1; i >= 0; --i) {
        lt = bor(lt, band(eq, band(bnot(a[i]), b[i])));
        eq = band(eq, bxnor(a[i], b[i]));
    }
    return lt;
}

int CircuitBuilder::mux1(int sel, int a, int b) {
    return bor(band(bnot(sel), a), band(sel, b));
}

CircuitBuilder::Vec CircuitBuilder::mux(int sel, const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw Error("mux width mismatch");
    Vec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = mux1(sel, a[i], b[i]);
    return out;
}

std::pair<CircuitBuilder::Vec, CircuitBuilder::Vec> CircuitBuilder::divmod(const Vec& x,
                                                                           const Vec& m) {
    // Restoring division, most significant dividend bit first.  The running
    // remainder lives in |m|+1 bits: it stays below m after each step, and
    // below 2m just before the conditional subtraction.
    int wm = (int)m.size();
    Vec mx = zero_extend(m, wm + 1);
    Vec rem(wm + 1);
    for (int i = 0; i <= wm; ++i) rem[i] = constant(false);
    Vec q(x.size());
    for (int i = (int)x.size() - 1; i >= 0; --i) {
        Vec shifted(wm + 1);
        shifted[0] = x[i];
        for (int j = 1; j <= wm; ++j) shifted[j] = rem[j - 1];
        int ge = bnot(less_than(shifted, mx));
        q[i] = ge;
        rem = mux(ge, shifted, sub(shifted, mx));
    }
    return {q, rem};
}

CircuitBuilder::Vec CircuitBuilder::append_circuit(const BoolCircuit& other, const Vec& inputs) {
    if ((int)inputs.size() != other.num_inputs)
        throw Error("append_circuit input width mismatch");
    std::vector<int> remap(other.gates.size());
    for (size_t i = 0; i < other.gates.size(); ++i) {
        const Gate& g = other.gates[i];
        switch (g.kind) {
            case GateKind::Input:
                remap[i] = inputs[g.index];
                break;
            case GateKind::Const:
                remap[i] = constant(g.bit);
                break;
            case GateKind::Not:
                remap[i] = bnot(remap[g.a]);
                break;
            case GateKind::And:
                remap[i] = band(remap[g.a], remap[g.b]);
                break;
            case GateKind::Or:
                remap[i] = bor(remap[g.a], remap[g.b]);
                break;
        }
    }
    Vec outs;
    outs.reserve(other.outputs.size());
    for (int o : other.outputs) outs.push_back(remap[o]);
    return outs;
}

void CircuitBuilder::set_outputs(const Vec& outs) { c.outputs = outs; }

}  // namespace msox
