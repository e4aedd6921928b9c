#pragma once

#include <string>
#include <vector>

namespace msox {

// Relational vocabulary of a graph: named binary arc relations, named unary
// predicates, and a number of colors (colors only matter while a graph is
// being assembled from a decomposition; plain graphs use num_colors = 1).
struct Signature {
    std::vector<std::string> arc_symbols;
    std::vector<std::string> unary_symbols;
    int num_colors = 1;

    int arc_index(const std::string& name) const;    // -1 if absent
    int unary_index(const std::string& name) const;  // -1 if absent

    bool operator==(const Signature&) const = default;
};

Signature single_arc_signature(const std::string& name = "->");

}  // namespace msox
