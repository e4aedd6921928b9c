#include "msox/signature.hpp"

namespace msox {

int Signature::arc_index(const std::string& name) const {
    for (size_t i = 0; i < arc_symbols.size(); ++i)
        if (arc_symbols[i] == name) return (int)i;
    return -1;
}

int Signature::unary_index(const std::string& name) const {
    for (size_t i = 0; i < unary_symbols.size(); ++i)
        if (unary_symbols[i] == name) return (int)i;
    return -1;
}

Signature single_arc_signature(const std::string& name) {
    Signature s;
    s.arc_symbols = {name};
    return s;
}

}  // namespace msox
