#pragma once

#include <string>

#include "msox/formula.hpp"
#include "msox/signature.hpp"

namespace msox {

// Grammar (quantifier bodies run to the end of the enclosing expression):
//   formula  := iff
//   iff      := implies ("<=>" implies)*
//   implies  := or ("=>" implies)?
//   or       := and ("|" and)*
//   and      := unary ("&" unary)*
//   unary    := "!" unary | quantifier | primary
//   quantifier := ("exists"|"forall"|"existsS"|"forallS") IDENT "." formula
//   primary  := "(" formula ")" | "true" | "false"
//            | "arc" "(" SYM "," IDENT "," IDENT ")"
//            | "pred" "(" SYM "," IDENT ")"
//            | "color" "(" NAT "," IDENT ")"
//            | IDENT "=" IDENT | IDENT "in" IDENT
// '#' starts a comment running to end of line.  Arc/pred symbols and colors
// are checked against sig; variables must be bound, with the binder kind
// (vertex vs set) matching every use.
FormulaPtr parse_formula(const std::string& text, const Signature& sig);

FormulaPtr read_formula_file(const std::string& path, const Signature& sig);

}  // namespace msox
