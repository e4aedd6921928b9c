#pragma once

#include <optional>
#include <string>

#include "msox/circuit.hpp"
#include "msox/graph.hpp"

namespace msox {

// ceil(log2(n)) for n >= 1: the bits needed to address n vertices.
int addr_bits(int n);

// A graph given by its vertex count and a circuit answering, for an ordered
// pair of vertex encodings (u bits little-endian, then v bits), which arc
// symbols connect them.  Inputs encoding values >= n are never queried.
// The optional second circuit maps one vertex encoding to unary-predicate
// membership bits.
struct SuccinctGraph {
    int n = 0;
    Signature sig;
    BoolCircuit arc_circuit;
    std::optional<BoolCircuit> unary_circuit;

    void check() const;
};

Graph decode(const SuccinctGraph& sg, int guard = 4096);
SuccinctGraph encode_explicit(const Graph& g);

// File form: `succinct N=<n> sig=<sym,...>` on the first line, the arc
// netlist after it.  The in-memory unary circuit has no file form.
SuccinctGraph parse_succinct_text(const std::string& text);
std::string print_succinct_text(const SuccinctGraph& sg);
SuccinctGraph read_succinct_file(const std::string& path);
void write_succinct_file(const std::string& path, const SuccinctGraph& sg);

}  // namespace msox
