#pragma once

#include <string>
#include <vector>

#include "msox/decomposition.hpp"

namespace msox {

// JSON node forms:
//   {"op":"const", "color":C, "loops":["->"], "id":N}      (loops, id optional)
//   {"op":"marked"}
//   {"op":"recolor", "map":[...], "child":NODE}
//   {"op":"join", "M":[[SYM,"right"|"left",FROM,TO],...], "left":NODE, "right":NODE}
// "right" rules add arcs from the left block to the right block, "left" rules
// the reverse.  A file is either a bare node or a wrapper object
//   {"base":0|1, "k":K, "symbols":[...], "tree":NODE}
// base=1 declares 1-based colors (the loader shifts them down).  Without a
// wrapper, k and the symbol order are inferred (max color + 1; names sorted).
// Constant "id" fields, when present, must equal the leaf's depth-first index.
Decomposition parse_decomposition_json(const std::string& text);
Decomposition read_decomposition_file(const std::string& path);

std::string print_decomposition_json(const Decomposition& c);
void write_decomposition_file(const Decomposition& c, const std::string& path);

// {"k":K, "symbols":[...], "base":B, "universe":[NODE,...]}
std::vector<Decomposition> read_universe_file(const std::string& path);
std::string print_universe_json(const std::vector<Decomposition>& universe);

}  // namespace msox
