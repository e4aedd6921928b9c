#include "msox/formula.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "msox/error.hpp"

namespace msox {

namespace {

FormulaPtr node(FKind k) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    return f;
}

FormulaPtr node1(FKind k, FormulaPtr a) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->kids = {std::move(a)};
    return f;
}

FormulaPtr node2(FKind k, FormulaPtr a, FormulaPtr b) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->kids = {std::move(a), std::move(b)};
    return f;
}

FormulaPtr quant(FKind k, std::string x, FormulaPtr body) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->var = std::move(x);
    f->kids = {std::move(body)};
    return f;
}

}  // namespace

FormulaPtr Formula::make_true() { return node(FKind::True); }
FormulaPtr Formula::make_false() { return node(FKind::False); }

FormulaPtr Formula::eq(std::string a, std::string b) {
    auto f = node(FKind::Eq);
    auto* m = const_cast<Formula*>(f.get());
    m->var = std::move(a);
    m->var2 = std::move(b);
    return f;
}

FormulaPtr Formula::arc(std::string sym, std::string a, std::string b) {
    auto f = node(FKind::Arc);
    auto* m = const_cast<Formula*>(f.get());
    m->symbol = std::move(sym);
    m->var = std::move(a);
    m->var2 = std::move(b);
    return f;
}

FormulaPtr Formula::in_set(std::string a, std::string B) {
    auto f = node(FKind::InSet);
    auto* m = const_cast<Formula*>(f.get());
    m->var = std::move(a);
    m->var2 = std::move(B);
    return f;
}

FormulaPtr Formula::pred(std::string sym, std::string a) {
    auto f = node(FKind::Pred);
    auto* m = const_cast<Formula*>(f.get());
    m->symbol = std::move(sym);
    m->var = std::move(a);
    return f;
}

FormulaPtr Formula::color_is(int c, std::string a) {
    auto f = node(FKind::ColorIs);
    auto* m = const_cast<Formula*>(f.get());
    m->color = c;
    m->var = std::move(a);
    return f;
}

FormulaPtr Formula::lnot(FormulaPtr f) { return node1(FKind::Not, std::move(f)); }
FormulaPtr Formula::land(FormulaPtr a, FormulaPtr b) { return node2(FKind::And, std::move(a), std::move(b)); }
FormulaPtr Formula::lor(FormulaPtr a, FormulaPtr b) { return node2(FKind::Or, std::move(a), std::move(b)); }
FormulaPtr Formula::implies(FormulaPtr a, FormulaPtr b) { return node2(FKind::Implies, std::move(a), std::move(b)); }
FormulaPtr Formula::iff(FormulaPtr a, FormulaPtr b) { return node2(FKind::Iff, std::move(a), std::move(b)); }
FormulaPtr Formula::exists_v(std::string x, FormulaPtr f) { return quant(FKind::ExistsV, std::move(x), std::move(f)); }
FormulaPtr Formula::forall_v(std::string x, FormulaPtr f) { return quant(FKind::ForallV, std::move(x), std::move(f)); }
FormulaPtr Formula::exists_s(std::string X, FormulaPtr f) { return quant(FKind::ExistsS, std::move(X), std::move(f)); }
FormulaPtr Formula::forall_s(std::string X, FormulaPtr f) { return quant(FKind::ForallS, std::move(X), std::move(f)); }

int rank(const FormulaPtr& f) {
    switch (f->kind) {
        case FKind::True:
        case FKind::False:
        case FKind::Eq:
        case FKind::Arc:
        case FKind::InSet:
        case FKind::Pred:
        case FKind::ColorIs:
            return 0;
        case FKind::Not:
            return rank(f->kids[0]);
        case FKind::And:
        case FKind::Or:
        case FKind::Implies:
        case FKind::Iff:
            return std::max(rank(f->kids[0]), rank(f->kids[1]));
        case FKind::ExistsV:
        case FKind::ForallV:
        case FKind::ExistsS:
        case FKind::ForallS:
            return 1 + rank(f->kids[0]);
    }
    throw Error("rank: bad node");
}

bool uses_set_quantifier(const FormulaPtr& f) {
    if (f->kind == FKind::ExistsS || f->kind == FKind::ForallS) return true;
    for (const auto& k : f->kids)
        if (uses_set_quantifier(k)) return true;
    return false;
}

bool formula_equal(const FormulaPtr& a, const FormulaPtr& b) {
    if (a->kind != b->kind || a->var != b->var || a->var2 != b->var2 ||
        a->symbol != b->symbol || a->color != b->color ||
        a->kids.size() != b->kids.size())
        return false;
    for (size_t i = 0; i < a->kids.size(); ++i)
        if (!formula_equal(a->kids[i], b->kids[i])) return false;
    return true;
}

namespace {

// Quantifier bodies extend to the end of the enclosing expression, so a
// quantifier binds weakest: quant(1) < iff(2) < implies(3) < or(4) < and(5)
// < not(6) < atom(7).
int prec(FKind k) {
    switch (k) {
        case FKind::ExistsV:
        case FKind::ForallV:
        case FKind::ExistsS:
        case FKind::ForallS: return 1;
        case FKind::Iff: return 2;
        case FKind::Implies: return 3;
        case FKind::Or: return 4;
        case FKind::And: return 5;
        case FKind::Not: return 6;
        default: return 7;
    }
}

void print_rec(const FormulaPtr& f, int parent_prec, std::ostream& os) {
    int p = prec(f->kind);
    bool paren = p < parent_prec;
    if (paren) os << "(";
    switch (f->kind) {
        case FKind::True: os << "true"; break;
        case FKind::False: os << "false"; break;
        case FKind::Eq: os << f->var << " = " << f->var2; break;
        case FKind::Arc: os << "arc(" << f->symbol << ", " << f->var << ", " << f->var2 << ")"; break;
        case FKind::InSet: os << f->var << " in " << f->var2; break;
        case FKind::Pred: os << "pred(" << f->symbol << ", " << f->var << ")"; break;
        case FKind::ColorIs: os << "color(" << f->color << ", " << f->var << ")"; break;
        case FKind::Not:
            os << "!";
            print_rec(f->kids[0], p + 1, os);
            break;
        case FKind::And:
            print_rec(f->kids[0], p, os);
            os << " & ";
            print_rec(f->kids[1], p + 1, os);
            break;
        case FKind::Or:
            print_rec(f->kids[0], p, os);
            os << " | ";
            print_rec(f->kids[1], p + 1, os);
            break;
        case FKind::Implies:
            // right associative
            print_rec(f->kids[0], p + 1, os);
            os << " => ";
            print_rec(f->kids[1], p, os);
            break;
        case FKind::Iff:
            print_rec(f->kids[0], p, os);
            os << " <=> ";
            print_rec(f->kids[1], p + 1, os);
            break;
        case FKind::ExistsV: os << "exists " << f->var << ". "; print_rec(f->kids[0], p, os); break;
        case FKind::ForallV: os << "forall " << f->var << ". "; print_rec(f->kids[0], p, os); break;
        case FKind::ExistsS: os << "existsS " << f->var << ". "; print_rec(f->kids[0], p, os); break;
        case FKind::ForallS: os << "forallS " << f->var << ". "; print_rec(f->kids[0], p, os); break;
    }
    if (paren) os << ")";
}

void collect(const FormulaPtr& f, std::set<std::string>& arcs, std::set<std::string>& preds, int& maxc) {
    if (f->kind == FKind::Arc) arcs.insert(f->symbol);
    if (f->kind == FKind::Pred) preds.insert(f->symbol);
    if (f->kind == FKind::ColorIs) maxc = std::max(maxc, f->color);
    for (const auto& k : f->kids) collect(k, arcs, preds, maxc);
}

}  // namespace

std::string print_formula(const FormulaPtr& f) {
    std::ostringstream os;
    print_rec(f, 0, os);
    return os.str();
}

std::vector<std::string> arc_symbols_used(const FormulaPtr& f) {
    std::set<std::string> a, p;
    int c = -1;
    collect(f, a, p, c);
    return {a.begin(), a.end()};
}

std::vector<std::string> pred_symbols_used(const FormulaPtr& f) {
    std::set<std::string> a, p;
    int c = -1;
    collect(f, a, p, c);
    return {p.begin(), p.end()};
}

int max_color_used(const FormulaPtr& f) {
    std::set<std::string> a, p;
    int c = -1;
    collect(f, a, p, c);
    return c;
}

}  // namespace msox
