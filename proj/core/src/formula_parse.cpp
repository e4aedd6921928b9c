#include "msox/formula_parse.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "msox/error.hpp"

namespace msox {

namespace {

bool ident_start(char c) { return std::isalpha((unsigned char)c) || c == '_'; }
bool ident_char(char c) { return std::isalnum((unsigned char)c) || c == '_' || c == '\''; }

const char* const kKeywords[] = {"exists", "forall", "existsS", "forallS",
                                 "true",   "false",  "arc",     "pred",
                                 "color",  "in"};

bool is_keyword(const std::string& s) {
    for (auto* k : kKeywords)
        if (s == k) return true;
    return false;
}

struct Parser {
    const std::string& src;
    const Signature& sig;
    size_t pos = 0;
    // variable name -> kind (true = set variable)
    std::map<std::string, bool> bound;

    explicit Parser(const std::string& s, const Signature& g) : src(s), sig(g) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("formula, offset " + std::to_string(pos) + ": " + msg);
    }

    void skip_ws() {
        while (pos < src.size()) {
            if (std::isspace((unsigned char)src[pos])) {
                ++pos;
            } else if (src[pos] == '#') {
                while (pos < src.size() && src[pos] != '\n') ++pos;
            } else {
                break;
            }
        }
    }

    bool eat(const std::string& tok) {
        skip_ws();
        if (src.compare(pos, tok.size(), tok) == 0) {
            // an identifier-like token must not continue
            if (ident_start(tok[0]) && pos + tok.size() < src.size() &&
                ident_char(src[pos + tok.size()]))
                return false;
            pos += tok.size();
            return true;
        }
        return false;
    }

    void expect(const std::string& tok) {
        if (!eat(tok)) fail("expected '" + tok + "'");
    }

    bool peek_ident(std::string& out) {
        skip_ws();
        if (pos >= src.size() || !ident_start(src[pos])) return false;
        size_t p = pos;
        std::string s;
        while (p < src.size() && ident_char(src[p])) s += src[p++];
        out = s;
        return true;
    }

    std::string take_ident() {
        std::string s;
        if (!peek_ident(s)) fail("expected identifier");
        if (is_keyword(s)) fail("'" + s + "' is reserved");
        pos += s.size();
        return s;
    }

    std::string take_symbol() {
        // raw relation name: anything up to ',' / ')' / whitespace
        skip_ws();
        std::string s;
        while (pos < src.size() && src[pos] != ',' && src[pos] != ')' &&
               !std::isspace((unsigned char)src[pos]))
            s += src[pos++];
        if (s.empty()) fail("expected relation symbol");
        return s;
    }

    int take_nat() {
        skip_ws();
        if (pos >= src.size() || !std::isdigit((unsigned char)src[pos]))
            fail("expected number");
        int v = 0;
        while (pos < src.size() && std::isdigit((unsigned char)src[pos]))
            v = v * 10 + (src[pos++] - '0');
        return v;
    }

    std::string use_var(bool want_set) {
        std::string name = take_ident();
        auto it = bound.find(name);
        if (it == bound.end()) fail("unbound variable '" + name + "'");
        if (it->second != want_set)
            fail(std::string("variable '") + name + "' is a " +
                 (it->second ? "set" : "vertex") + " variable here");
        return name;
    }

    FormulaPtr formula() { return iff(); }

    FormulaPtr iff() {
        auto f = implies();
        while (eat("<=>")) f = Formula::iff(f, implies());
        return f;
    }

    FormulaPtr implies() {
        auto f = lor();
        // careful: "=>" but not "<=>" (iff is consumed before us), and "=" alone
        skip_ws();
        if (src.compare(pos, 2, "=>") == 0) {
            pos += 2;
            return Formula::implies(f, implies());
        }
        return f;
    }

    FormulaPtr lor() {
        auto f = land();
        while (true) {
            skip_ws();
            if (pos < src.size() && src[pos] == '|') {
                ++pos;
                f = Formula::lor(f, land());
            } else {
                break;
            }
        }
        return f;
    }

    FormulaPtr land() {
        auto f = unary();
        while (eat("&")) f = Formula::land(f, unary());
        return f;
    }

    FormulaPtr quantified(FKind k) {
        std::string name = take_ident();
        bool as_set = (k == FKind::ExistsS || k == FKind::ForallS);
        expect(".");
        auto saved = bound.find(name) != bound.end()
                         ? std::optional<bool>(bound[name])
                         : std::nullopt;
        bound[name] = as_set;
        auto body = formula();
        if (saved)
            bound[name] = *saved;
        else
            bound.erase(name);
        switch (k) {
            case FKind::ExistsV: return Formula::exists_v(name, body);
            case FKind::ForallV: return Formula::forall_v(name, body);
            case FKind::ExistsS: return Formula::exists_s(name, body);
            default: return Formula::forall_s(name, body);
        }
    }

    FormulaPtr unary() {
        if (eat("!")) return Formula::lnot(unary());
        if (eat("exists")) return quantified(FKind::ExistsV);
        if (eat("forall")) return quantified(FKind::ForallV);
        if (eat("existsS")) return quantified(FKind::ExistsS);
        if (eat("forallS")) return quantified(FKind::ForallS);
        return primary();
    }

    FormulaPtr primary() {
        if (eat("(")) {
            auto f = formula();
            expect(")");
            return f;
        }
        if (eat("true")) return Formula::make_true();
        if (eat("false")) return Formula::make_false();
        if (eat("arc")) {
            expect("(");
            std::string sym = take_symbol();
            if (sig.arc_index(sym) < 0) fail("arc symbol '" + sym + "' not in signature");
            expect(",");
            std::string a = use_var(false);
            expect(",");
            std::string b = use_var(false);
            expect(")");
            return Formula::arc(sym, a, b);
        }
        if (eat("pred")) {
            expect("(");
            std::string sym = take_symbol();
            if (sig.unary_index(sym) < 0) fail("pred symbol '" + sym + "' not in signature");
            expect(",");
            std::string a = use_var(false);
            expect(")");
            return Formula::pred(sym, a);
        }
        if (eat("color")) {
            expect("(");
            int c = take_nat();
            if (c < 0 || c >= sig.num_colors) fail("color out of range");
            expect(",");
            std::string a = use_var(false);
            expect(")");
            return Formula::color_is(c, a);
        }
        // x = y | x in X
        std::string a = use_var(false);
        skip_ws();
        if (eat("in")) {
            std::string B = use_var(true);
            return Formula::in_set(a, B);
        }
        if (pos < src.size() && src[pos] == '=' &&
            (pos + 1 >= src.size() || src[pos + 1] != '>')) {
            ++pos;
            std::string b = use_var(false);
            return Formula::eq(a, b);
        }
        fail("expected '=' or 'in' after variable");
    }
};

}  // namespace

FormulaPtr parse_formula(const std::string& text, const Signature& sig) {
    Parser p(text, sig);
    auto f = p.formula();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return f;
}

FormulaPtr read_formula_file(const std::string& path, const Signature& sig) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open formula file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_formula(ss.str(), sig);
}

}  // namespace msox
