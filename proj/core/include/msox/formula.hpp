#pragma once

#include <memory>
#include <string>
#include <vector>

#include "msox/signature.hpp"

namespace msox {

enum class FKind {
    True,
    False,
    Eq,       // a = b            (vertex vars)
    Arc,      // arc(sym, a, b)
    InSet,    // a in B           (vertex var, set var)
    Pred,     // pred(sym, a)
    ColorIs,  // color(c, a)
    Not,
    And,
    Or,
    Implies,
    Iff,
    ExistsV,
    ForallV,
    ExistsS,
    ForallS,
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Implication and iff stay primitive so printed formulas read like the
// originals they were transcribed from.
struct Formula {
    FKind kind = FKind::True;
    std::string var;          // bound variable, or first atom argument
    std::string var2;         // second atom argument
    std::string symbol;       // arc/pred symbol name
    int color = -1;           // ColorIs only
    std::vector<FormulaPtr> kids;

    static FormulaPtr make_true();
    static FormulaPtr make_false();
    static FormulaPtr eq(std::string a, std::string b);
    static FormulaPtr arc(std::string sym, std::string a, std::string b);
    static FormulaPtr in_set(std::string a, std::string B);
    static FormulaPtr pred(std::string sym, std::string a);
    static FormulaPtr color_is(int c, std::string a);
    static FormulaPtr lnot(FormulaPtr f);
    static FormulaPtr land(FormulaPtr a, FormulaPtr b);
    static FormulaPtr lor(FormulaPtr a, FormulaPtr b);
    static FormulaPtr implies(FormulaPtr a, FormulaPtr b);
    static FormulaPtr iff(FormulaPtr a, FormulaPtr b);
    static FormulaPtr exists_v(std::string x, FormulaPtr f);
    static FormulaPtr forall_v(std::string x, FormulaPtr f);
    static FormulaPtr exists_s(std::string X, FormulaPtr f);
    static FormulaPtr forall_s(std::string X, FormulaPtr f);
};

// Quantifier nesting depth; vertex and set quantifiers count alike.
int rank(const FormulaPtr& f);

bool uses_set_quantifier(const FormulaPtr& f);
bool formula_equal(const FormulaPtr& a, const FormulaPtr& b);

// Minimal-parenthesis rendering; parse(print(f)) == f structurally.
std::string print_formula(const FormulaPtr& f);

// Sorted names of symbols the formula mentions.
std::vector<std::string> arc_symbols_used(const FormulaPtr& f);
std::vector<std::string> pred_symbols_used(const FormulaPtr& f);
int max_color_used(const FormulaPtr& f);  // -1 when no color atom

}  // namespace msox
