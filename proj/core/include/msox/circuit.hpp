#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace msox {

enum class GateKind { Input, Const, Not, And, Or };

struct Gate {
    GateKind kind = GateKind::Const;
    int a = -1, b = -1;  // operand gate positions (earlier in the list)
    int index = 0;       // Input: which input bit
    bool bit = false;    // Const: the value
};

// Gate list in topological order (gates may only reference earlier gates),
// plus the declared input width and the ordered output gates.
struct BoolCircuit {
    int num_inputs = 0;
    std::vector<Gate> gates;
    std::vector<int> outputs;

    void check() const;
    size_t size() const { return gates.size(); }
};

std::vector<bool> eval_circuit(const BoolCircuit& c, const std::vector<bool>& bits);

// Line format: `inputs <w>`, one `g<i> = OP ...` per line with i equal to the
// line's position, then `outputs g<i> ...`.  Ops: AND g<j> g<k>, OR g<j> g<k>,
// NOT g<j>, INPUT <idx>, CONST 0|1.  '#' starts a comment.
BoolCircuit parse_netlist(const std::string& text);
std::string print_netlist(const BoolCircuit& c);
BoolCircuit read_netlist_file(const std::string& path);
void write_netlist_file(const std::string& path, const BoolCircuit& c);

// Append-only construction helper.  Values are gate positions; multi-bit
// quantities are little-endian vectors of gate positions.
//
// Every gadget emits a gate count that depends only on the operand widths,
// never on operand values or on which constants are wired in.  Constants go
// through const_vec so that swapping one constant for another cannot change
// the size of the emitted circuit.
struct CircuitBuilder {
    BoolCircuit c;

    using Vec = std::vector<int>;

    int input(int idx);
    int constant(bool b);
    int bnot(int a);
    int band(int a, int b);
    int bor(int a, int b);
    int bxor(int a, int b);
    int bxnor(int a, int b);

    Vec input_range(int start, int w);
    Vec const_vec(uint64_t value, int w);
    Vec zero_extend(const Vec& a, int w);

    Vec add(const Vec& a, const Vec& b);  // equal widths, wraps
    Vec sub(const Vec& a, const Vec& b);  // equal widths, wraps
    int equal(const Vec& a, const Vec& b);
    int less_than(const Vec& a, const Vec& b);  // unsigned
    Vec mux(int sel, const Vec& a, const Vec& b);  // sel=0 -> a, sel=1 -> b
    int mux1(int sel, int a, int b);

    // floor division and remainder by a circuit-held divisor; the dividend
    // width drives the iteration count, the divisor width the step size.
    // The divisor must be nonzero for meaningful output.
    std::pair<Vec, Vec> divmod(const Vec& x, const Vec& m);

    // Splice another circuit in, rewiring its inputs to the given gates;
    // returns the positions of its outputs.
    Vec append_circuit(const BoolCircuit& other, const Vec& inputs);

    void set_outputs(const Vec& outs);
};

}  // namespace msox
