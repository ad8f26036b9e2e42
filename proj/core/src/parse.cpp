#include "ratsym/parse.hpp"

#include <cctype>

namespace ratsym {

namespace {

struct Parser {
    const std::string& s;
    std::size_t pos = 0;
    Tower& tower;
    const EngineOptions& opt;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c))
            throw SyntaxError(pos, std::string("expected '") + c + "'");
    }

    Int read_integer() {
        skip_ws();
        std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        std::size_t digits = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == digits) throw SyntaxError(start, "expected an integer");
        return Int(s.substr(start, pos - start));
    }

    std::string read_ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) ++pos;
        return s.substr(start, pos - start);
    }

    RatFunc expr() {
        RatFunc v = term();
        while (true) {
            if (accept('+'))
                v = v + term();
            else if (accept('-'))
                v = v - term();
            else
                return v;
        }
    }

    RatFunc term() {
        RatFunc v = factor();
        while (true) {
            if (accept('*')) {
                v = v * factor();
            } else if (accept('/')) {
                std::size_t here = pos;
                RatFunc d = factor();
                if (d.num().is_zero()) throw SyntaxError(here, "division by zero");
                v = v / d;
            } else {
                return v;
            }
        }
    }

    RatFunc factor() {
        if (accept('-')) return -factor();
        if (accept('+')) return factor();
        RatFunc v = atom();
        if (accept('^')) {
            std::size_t here = pos;
            Int ei;
            if (accept('(')) {
                ei = read_integer();
                expect(')');
            } else {
                ei = read_integer();
            }
            if (abs(ei) > opt.degree_budget)
                throw DegreeBudgetExceeded(labs(ei.get_si()), opt.degree_budget);
            v = power(v, long(ei.get_si()), here);
        }
        return v;
    }

    RatFunc power(const RatFunc& base, long e, std::size_t here) {
        if (e == 0) return RatFunc::constant(TowerElement(Rat(1), tower));
        bool neg = e < 0;
        unsigned long n = neg ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
        RatFunc acc = RatFunc::constant(TowerElement(Rat(1), tower));
        RatFunc b = base;
        while (n) {
            if (n & 1ul) acc = acc * b;
            n >>= 1ul;
            if (n) b = b * b;
        }
        if (neg) {
            if (acc.num().is_zero()) throw SyntaxError(here, "zero to a negative power");
            acc = RatFunc::constant(TowerElement(Rat(1), tower)) / acc;
        }
        return acc;
    }

    RatFunc atom() {
        skip_ws();
        if (pos >= s.size()) throw SyntaxError(pos, "unexpected end of input");
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Int n = read_integer();
            return RatFunc::constant(TowerElement(Rat(n), tower));
        }
        if (c == '(') {
            ++pos;
            RatFunc v = expr();
            expect(')');
            return v;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            std::string id = read_ident();
            if (id == "z") return RatFunc::variable(tower);
            if (id == "i") {
                AdjoinResult r = adjoin_imaginary(tower, opt.tower_depth_cap);
                tower = r.tower;
                return RatFunc::constant(TowerElement::imaginary_unit(tower));
            }
            if (id == "sqrt") {
                expect('(');
                Int d = read_integer();
                expect(')');
                if (d == 0) return RatFunc::constant(TowerElement(Rat(0), tower));
                AdjoinResult r = adjoin_sqrt(tower, d, opt.tower_depth_cap);
                tower = r.tower;
                return RatFunc::constant(r.value->promoted_to(tower));
            }
            if (id == "inf") throw SyntaxError(start, "'inf' is only valid as a point");
            throw UnknownSymbol(id);
        }
        throw SyntaxError(pos, std::string("unexpected character '") + c + "'");
    }
};

} // namespace

RatFunc parse_expression(const std::string& text, Tower& tower, const EngineOptions& opt) {
    Parser p{text, 0, tower, opt};
    RatFunc v = p.expr();
    p.skip_ws();
    if (p.pos != text.size()) throw SyntaxError(p.pos, "trailing input");
    // pin everything to the final tower (radicals may have been adjoined late)
    return v.promoted_to(tower);
}

SpherePoint parse_point(const std::string& text, Tower& tower, const EngineOptions& opt) {
    std::string trimmed;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
    if (trimmed == "inf" || trimmed == "infinity") return SpherePoint::infinity(tower);
    RatFunc v = parse_expression(text, tower, opt);
    if (!v.is_constant()) throw Error("point expression must be constant");
    if (v.num().is_zero()) return SpherePoint(TowerElement(Rat(0), tower));
    return SpherePoint(v.num().coeff(0) / v.den().coeff(0));
}

} // namespace ratsym
