#pragma once

#include <cctype>
#include <sstream>
#include <string>

#include "wdvv/expr.hpp"

namespace wdvv {

struct ParseError : std::runtime_error {
    int line, column;
    ParseError(int l, int c, const std::string& msg)
        : std::runtime_error("parse error at " + std::to_string(l) + ":" + std::to_string(c)
                             + ": " + msg),
          line(l),
          column(c) {}
};

/// Recursive-descent parser for the expression grammar: integers, rationals
/// p/q, identifiers, binary + - * / ^ (nonnegative integer exponents on ^),
/// unary minus, parentheses.  ^ binds tightest and is right-associative;
/// unary minus binds tighter than * and /; + - * / are left-associative.
class ExprParser {
public:
    ExprParser(std::string text, RingPtr ring)
        : text_(std::move(text)), ring_(std::move(ring)) {}

    RationalExpr parse() {
        RationalExpr e = parse_sum();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    RationalExpr parse_sum() {
        RationalExpr acc = parse_product();
        while (true) {
            skip_ws();
            if (peek() == '+') {
                ++pos_;
                acc += parse_product();
            } else if (peek() == '-') {
                ++pos_;
                acc -= parse_product();
            } else {
                return acc;
            }
        }
    }

    RationalExpr parse_product() {
        RationalExpr acc = parse_unary();
        while (true) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                acc *= parse_unary();
            } else if (peek() == '/') {
                ++pos_;
                RationalExpr d = parse_unary();
                if (d.is_zero()) fail("division by zero");
                acc /= d;
            } else {
                return acc;
            }
        }
    }

    RationalExpr parse_unary() {
        skip_ws();
        if (peek() == '-') {
            ++pos_;
            return -parse_unary();
        }
        if (peek() == '+') {
            ++pos_;
            return parse_unary();
        }
        return parse_power();
    }

    RationalExpr parse_power() {
        RationalExpr base = parse_atom();
        skip_ws();
        if (peek() != '^') return base;
        ++pos_;
        return base.pow(static_cast<unsigned>(parse_exponent()));
    }

    /// Exponents are nonnegative integer literals; chained ^ is
    /// right-associative (2^3^2 = 2^9).
    unsigned long parse_exponent() {
        skip_ws();
        unsigned long a = 0;
        if (peek() == '(') {
            ++pos_;
            a = parse_exponent();
            skip_ws();
            expect(')');
        } else {
            if (!std::isdigit(static_cast<unsigned char>(peek())))
                fail("exponent must be a nonnegative integer");
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                a = a * 10 + static_cast<unsigned long>(peek() - '0');
                if (a > 100000) fail("exponent too large");
                ++pos_;
            }
        }
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            unsigned long b = parse_exponent();
            unsigned long r = 1;
            for (unsigned long i = 0; i < b; ++i) {
                r *= a;
                if (r > 100000) fail("exponent too large");
            }
            a = r;
        }
        return a;
    }

    RationalExpr parse_atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            RationalExpr e = parse_sum();
            skip_ws();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (std::isdigit(static_cast<unsigned char>(peek()))) digits += text_[pos_++];
            return RationalExpr::constant(ring_, Rational(digits));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string id;
            while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')
                id += text_[pos_++];
            auto idx = ring_->index_of(id);
            if (!idx) fail("unknown identifier '" + id + "'");
            return RationalExpr::variable(ring_, *idx);
        }
        if (c == '\0') fail("unexpected end of input");
        fail(std::string("unexpected character '") + c + "'");
        return RationalExpr(ring_);  // unreachable
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        int line = 1, col = 1;
        for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
            if (text_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(line, col, msg);
    }

    std::string text_;
    RingPtr ring_;
    std::size_t pos_ = 0;
};

inline RationalExpr parse_expr(const std::string& text, RingPtr ring) {
    return ExprParser(text, std::move(ring)).parse();
}

/// Prints in the same grammar the parser accepts.
inline std::string to_string(const Poly& p, const Ring& ring) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& t : p.terms()) {
        Rational c = t.coeff;
        if (first) {
            if (c.sign() < 0) {
                os << "-";
                c = -c;
            }
            first = false;
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
            if (c.sign() < 0) c = -c;
        }
        bool printed = false;
        if (!c.is_one() || t.mono.is_one()) {
            os << c.to_string();
            printed = true;
        }
        for (std::size_t v = 0; v < ring.arity(); ++v) {
            unsigned e = t.mono.exp(v);
            if (e == 0) continue;
            if (printed) os << "*";
            os << ring.name(v);
            if (e > 1) os << "^" << e;
            printed = true;
        }
    }
    return os.str();
}

inline std::string to_string(const RationalExpr& e) {
    const Ring& ring = *e.ring();
    if (e.den().is_constant())
        return to_string(e.num().mul_scalar(e.den().constant_value().inverse()), ring);
    return "(" + to_string(e.num(), ring) + ")/(" + to_string(e.den(), ring) + ")";
}

}  // namespace wdvv
