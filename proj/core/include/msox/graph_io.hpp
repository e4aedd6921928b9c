#pragma once

#include <iosfwd>
#include <string>

#include "msox/graph.hpp"

namespace msox {

// Text format:
//   graph n=<N> sig=<name,...>
//   arc <sym> <u> <v>
//   set <sym> <v>
// Lines starting with '#' are comments.  Unary symbols are collected from the
// set lines (sorted by name); arc symbols come from the header in order.
Graph parse_graph_text(const std::string& text);
Graph read_graph_file(const std::string& path);

std::string print_graph_text(const Graph& g);
void write_graph_file(const Graph& g, const std::string& path);

}  // namespace msox
