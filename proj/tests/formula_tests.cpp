#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "msox/error.hpp"
#include "msox/fixtures.hpp"
#include "msox/formula.hpp"
#include "msox/formula_parse.hpp"

using namespace msox;

namespace {

Signature sig_for(const FormulaPtr& f) {
    Signature sig;
    sig.arc_symbols = arc_symbols_used(f);
    if (sig.arc_symbols.empty()) sig.arc_symbols = {"->"};
    sig.unary_symbols = pred_symbols_used(f);
    return sig;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int annotated_rank(const std::string& text) {
    auto pos = text.find("# rank:");
    REQUIRE(pos != std::string::npos);
    return std::stoi(text.substr(pos + 7));
}

}  // namespace

TEST_CASE("stated ranks match the computed quantifier depth") {
    for (const NamedFormula& nf : formula_corpus()) {
        CAPTURE(nf.file);
        CHECK(rank(nf.f) == nf.stated_rank);
    }
}

TEST_CASE("printing then parsing is the identity") {
    for (const NamedFormula& nf : formula_corpus()) {
        CAPTURE(nf.file);
        FormulaPtr back = parse_formula(print_formula(nf.f), sig_for(nf.f));
        CHECK(formula_equal(back, nf.f));
    }
}

TEST_CASE("shipped formula files parse to their programmatic twins") {
    for (const NamedFormula& nf : formula_corpus()) {
        CAPTURE(nf.file);
        std::string path = std::string(MSOX_FIXTURES_DIR) + "/" + nf.file;
        std::string text = slurp(path);
        CHECK(annotated_rank(text) == nf.stated_rank);
        FormulaPtr parsed = parse_formula(text, sig_for(nf.f));
        CHECK(formula_equal(parsed, nf.f));
    }
}

TEST_CASE("conjunction chains associate left, implication right") {
    Signature sig = single_arc_signature();
    auto a = Formula::arc("->", "x", "x");
    FormulaPtr f = parse_formula("exists x. arc(->, x, x) & arc(->, x, x) & arc(->, x, x)", sig);
    FormulaPtr left = Formula::exists_v("x", Formula::land(Formula::land(a, a), a));
    CHECK(formula_equal(f, left));

    FormulaPtr g = parse_formula(
        "forall x. arc(->, x, x) => arc(->, x, x) => arc(->, x, x)", sig);
    FormulaPtr right = Formula::forall_v("x", Formula::implies(a, Formula::implies(a, a)));
    CHECK(formula_equal(g, right));
}

TEST_CASE("quantifier bodies run to the end of the enclosing expression") {
    Signature sig = single_arc_signature();
    FormulaPtr f = parse_formula("(exists x. arc(->, x, x) & arc(->, x, x)) | true", sig);
    auto a = Formula::arc("->", "x", "x");
    FormulaPtr want =
        Formula::lor(Formula::exists_v("x", Formula::land(a, a)), Formula::make_true());
    CHECK(formula_equal(f, want));
}

TEST_CASE("negation binds tighter than binary connectives") {
    Signature sig = single_arc_signature();
    FormulaPtr f = parse_formula("forall x. ! arc(->, x, x) & true", sig);
    auto a = Formula::arc("->", "x", "x");
    FormulaPtr want =
        Formula::forall_v("x", Formula::land(Formula::lnot(a), Formula::make_true()));
    CHECK(formula_equal(f, want));
}

TEST_CASE("parser rejects unknown symbols and unbound or mis-kinded variables") {
    Signature sig = single_arc_signature();
    CHECK_THROWS_AS(parse_formula("exists x. arc(??, x, x)", sig), ParseError);
    CHECK_THROWS_AS(parse_formula("exists x. pred(zero, x)", sig), ParseError);
    CHECK_THROWS_AS(parse_formula("arc(->, x, x)", sig), ParseError);
    CHECK_THROWS_AS(parse_formula("exists x. x in x", sig), ParseError);
    CHECK_THROWS_AS(parse_formula("existsS X. arc(->, X, X)", sig), ParseError);
    CHECK_THROWS_AS(parse_formula("exists x. arc(->, x, x) &", sig), ParseError);
    CHECK_THROWS_AS(parse_formula("", sig), ParseError);
}

TEST_CASE("symbol and color usage reports") {
    CHECK(arc_symbols_used(min_loop_formula()) == std::vector<std::string>{"->", "<="});
    CHECK(pred_symbols_used(zero_loop_formula()) == std::vector<std::string>{"zero"});
    CHECK(pred_symbols_used(psi1_formula()).empty());
    CHECK(max_color_used(psi1_formula()) == -1);
    FormulaPtr c = Formula::exists_v("x", Formula::color_is(2, "x"));
    CHECK(max_color_used(c) == 2);
}

TEST_CASE("set quantifier detection") {
    CHECK(uses_set_quantifier(bipartite_formula()));
    CHECK(uses_set_quantifier(cycle_formula()));
    CHECK_FALSE(uses_set_quantifier(total_order_formula()));
}

TEST_CASE("rank counts vertex and set quantifiers alike") {
    FormulaPtr f = Formula::exists_s(
        "X", Formula::exists_v("x", Formula::exists_s("Y", Formula::in_set("x", "Y"))));
    CHECK(rank(f) == 3);
    CHECK(rank(Formula::make_true()) == 0);
}
