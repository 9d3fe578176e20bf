#include "teamdim/parser.hpp"
#include "teamdim/error.hpp"

#include <cctype>
#include <set>

namespace teamdim::logic {

namespace {

enum class Tok { Ident, LParen, RParen, Semi, Dot, Eq, Bang, NotEq, Arrow, End };

struct Token {
    Tok type;
    std::string text;
    int line, col;
};

const std::set<std::string> kKeywords = {"and", "or",  "ior", "tand",  "E",   "A",   "E1",  "A1",   "d1", "Q",
                                         "NE",  "dep", "const", "exc", "inc", "ano", "ind", "even", "half"};

std::vector<Token> lex(const std::string& s) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto push = [&](Tok t, std::string text, int c) { out.push_back({t, std::move(text), line, c}); };
    while (i < s.size()) {
        char c = s[i];
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
            ++i;
            ++col;
            continue;
        }
        int start = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\''))
                ++j;
            push(Tok::Ident, s.substr(i, j - i), start);
            col += int(j - i);
            i = j;
            continue;
        }
        if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
            push(Tok::Arrow, "->", start);
            i += 2;
            col += 2;
            continue;
        }
        if (c == '!' && i + 1 < s.size() && s[i + 1] == '=') {
            push(Tok::NotEq, "!=", start);
            i += 2;
            col += 2;
            continue;
        }
        Tok t;
        switch (c) {
        case '(': t = Tok::LParen; break;
        case ')': t = Tok::RParen; break;
        case ';': t = Tok::Semi; break;
        case '.': t = Tok::Dot; break;
        case '=': t = Tok::Eq; break;
        case '!': t = Tok::Bang; break;
        default: throw ParseError(std::string("unexpected character '") + c + "'", line, start);
        }
        push(t, std::string(1, c), start);
        ++i;
        ++col;
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    FormulaPtr parse() {
        auto f = implication();
        if (peek().type != Tok::End) fail("unexpected `" + peek().text + "`");
        return f;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }
    bool at_word(const char* w) const { return peek().type == Tok::Ident && peek().text == w; }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().line, peek().col); }

    void expect(Tok t, const char* what) {
        if (peek().type != t) fail(std::string("expected ") + what);
        ++pos_;
    }

    std::string variable() {
        if (peek().type != Tok::Ident) fail("expected a variable");
        if (kKeywords.count(peek().text)) fail("keyword `" + peek().text + "` used as a variable");
        return next().text;
    }

    std::vector<std::string> vars_until(std::initializer_list<Tok> stops) {
        std::vector<std::string> vs;
        auto stop = [&] {
            for (auto s : stops)
                if (peek().type == s) return true;
            return false;
        };
        while (!stop()) vs.push_back(variable());
        return vs;
    }

    // right associative, lowest precedence
    FormulaPtr implication() {
        auto lhs = binary_level(0);
        if (peek().type == Tok::Arrow) {
            next();
            return imp(lhs, implication());
        }
        return lhs;
    }

    // levels: 0 ior, 1 or, 2 tand, 3 and
    FormulaPtr binary_level(int level) {
        static const char* words[] = {"ior", "or", "tand", "and"};
        static const Kind kinds[] = {Kind::Ior, Kind::Or, Kind::Tand, Kind::And};
        if (level == 4) return unary();
        auto lhs = binary_level(level + 1);
        while (at_word(words[level])) {
            next();
            lhs = binary(kinds[level], lhs, binary_level(level + 1));
        }
        return lhs;
    }

    FormulaPtr quantifier_body() {
        expect(Tok::Dot, "`.`");
        return implication();
    }

    FormulaPtr unary() {
        const Token& t = peek();
        if (t.type == Tok::LParen) {
            next();
            auto f = implication();
            expect(Tok::RParen, "`)`");
            return f;
        }
        if (t.type == Tok::Bang) {
            next();
            if (peek().type != Tok::Ident) fail("expected a literal after `!`");
            std::string name = peek().text;
            if (toks_[pos_ + 1].type == Tok::LParen) {
                if (kKeywords.count(name)) fail("only first-order literals can be negated");
                next();
                next();
                auto args = vars_until({Tok::RParen});
                expect(Tok::RParen, "`)`");
                return nrel(name, std::move(args));
            }
            auto x = variable();
            expect(Tok::Eq, "`=`");
            return neq(x, variable());
        }
        if (t.type != Tok::Ident) fail("expected a formula");
        const std::string w = t.text;
        if (w == "E" || w == "A" || w == "E1" || w == "A1" || w == "d1") {
            next();
            Kind k = w == "E" ? Kind::Exists : w == "A" ? Kind::Forall : w == "E1" ? Kind::E1 : w == "A1" ? Kind::A1 : Kind::D1;
            auto vs = vars_until({Tok::Dot, Tok::End});
            if (vs.empty()) fail("quantifier needs a variable");
            auto body = quantifier_body();
            for (auto it = vs.rbegin(); it != vs.rend(); ++it) body = quant(k, *it, body);
            return body;
        }
        if (w == "Q") {
            next();
            if (peek().type != Tok::Ident) fail("expected a quantifier class name");
            std::string cls = next().text;
            auto vs = vars_until({Tok::Dot, Tok::End});
            if (vs.empty()) fail("quantifier needs a variable");
            return lindstrom(cls, std::move(vs), quantifier_body());
        }
        if (w == "NE") {
            next();
            return ne();
        }
        if (w == "dep" || w == "const" || w == "exc" || w == "inc" || w == "ano" || w == "ind" || w == "even" ||
            w == "half")
            return atom(w);
        if (kKeywords.count(w)) fail("unexpected keyword `" + w + "`");
        next();
        if (peek().type == Tok::LParen) {
            next();
            auto args = vars_until({Tok::RParen, Tok::End});
            expect(Tok::RParen, "`)`");
            return rel(w, std::move(args));
        }
        if (peek().type == Tok::Eq) {
            next();
            return eq(w, variable());
        }
        if (peek().type == Tok::NotEq) {
            next();
            return neq(w, variable());
        }
        fail("expected `=` or `(` after `" + w + "`");
    }

    FormulaPtr atom(const std::string& w) {
        next();
        expect(Tok::LParen, "`(`");
        std::vector<std::vector<std::string>> parts(1);
        while (peek().type != Tok::RParen) {
            if (peek().type == Tok::End) fail("unterminated atom");
            if (peek().type == Tok::Semi) {
                next();
                parts.emplace_back();
                continue;
            }
            parts.back().push_back(variable());
        }
        const Token close = peek();
        next();
        auto bad = [&](const std::string& msg) -> FormulaPtr { throw ParseError(msg, close.line, close.col); };
        try {
            if (w == "dep") {
                if (parts.size() != 2) return bad("dep expects `dep(vars ; v)`");
                if (parts[1].empty()) return bad("dep needs a variable after `;` (use const(...) for constancy)");
                if (parts[1].size() != 1) return bad("dep takes exactly one variable after `;`");
                return dep(parts[0], parts[1][0]);
            }
            if (w == "const") {
                if (parts.size() != 1 || parts[0].empty()) return bad("const expects `const(vars)`");
                return constancy(parts[0]);
            }
            if (w == "exc" || w == "inc") {
                if (parts.size() != 2) return bad(w + " expects `" + w + "(vars ; vars)`");
                if (parts[0].empty() || parts[0].size() != parts[1].size())
                    return bad(w + " sides must be nonempty and of equal length");
                return w == "exc" ? exc(parts[0], parts[1]) : inc(parts[0], parts[1]);
            }
            if (w == "ano") {
                if (parts.size() != 2 || parts[0].empty() || parts[1].size() != 1)
                    return bad("ano expects `ano(vars ; v)` with nonempty vars");
                return ano(parts[0], parts[1][0]);
            }
            if (w == "ind") {
                if (parts.size() != 3) return bad("ind expects `ind(vars ; vars ; vars)`");
                if (parts[0].empty() || parts[2].empty()) return bad("ind sides must be nonempty");
                return ind(parts[0], parts[1], parts[2]);
            }
            if (parts.size() != 1 || parts[0].empty()) return bad(w + " expects `" + w + "(vars)`");
            return w == "even" ? even(parts[0]) : half(parts[0]);
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(e.what(), close.line, close.col);
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace

FormulaPtr parse_formula(const std::string& text) {
    Parser p(lex(text));
    return p.parse();
}

}  // namespace teamdim::logic
