#pragma once

#include <memory>
#include <span>
#include <stdexcept>
#include <string>

#include "wdvv/poly_gcd.hpp"
#include "wdvv/ring.hpp"

namespace wdvv {

struct DivisionByZero : std::domain_error {
    explicit DivisionByZero(const std::string& what) : std::domain_error(what) {}
};

/// Exact rational function over the ring's variables.  Canonical form:
/// parameter relations applied, denominator free of relation variables and
/// not a zero divisor, gcd(num, den) = 1, denominator integer-primitive
/// with positive leading coefficient.
class RationalExpr {
public:
    RationalExpr() = default;

    explicit RationalExpr(RingPtr ring)
        : ring_(std::move(ring)),
          num_(Poly::zero(ring_->arity())),
          den_(Poly::constant(ring_->arity(), Rational(1))) {}

    RationalExpr(RingPtr ring, Poly num)
        : ring_(std::move(ring)),
          num_(std::move(num)),
          den_(Poly::constant(ring_->arity(), Rational(1))) {
        num_ = ring_->reduce(num_);
    }

    RationalExpr(RingPtr ring, Poly num, Poly den)
        : ring_(std::move(ring)), num_(std::move(num)), den_(std::move(den)) {
        normalize();
    }

    static RationalExpr constant(RingPtr ring, const Rational& c) {
        auto a = ring->arity();
        return RationalExpr(std::move(ring), Poly::constant(a, c));
    }

    static RationalExpr variable(RingPtr ring, std::size_t idx) {
        auto a = ring->arity();
        return RationalExpr(std::move(ring), Poly::variable(a, idx));
    }

    static RationalExpr variable(RingPtr ring, const std::string& name) {
        auto idx = ring->index_of(name);
        if (!idx) throw std::invalid_argument("unknown variable: " + name);
        return variable(std::move(ring), *idx);
    }

    const RingPtr& ring() const { return ring_; }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }

    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rational constant_value() const {
        return num_.constant_value() / den_.constant_value();
    }

    /// Numerator as a polynomial when the denominator is constant.
    Poly as_poly() const {
        if (!den_.is_constant())
            throw std::domain_error("RationalExpr: not a polynomial");
        return num_.mul_scalar(den_.constant_value().inverse());
    }

    RationalExpr operator-() const {
        RationalExpr r(*this);
        r.num_ = -r.num_;
        return r;
    }

    friend RationalExpr operator+(const RationalExpr& a, const RationalExpr& b) {
        a.check(b);
        return RationalExpr(a.ring_, a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalExpr operator-(const RationalExpr& a, const RationalExpr& b) {
        a.check(b);
        return RationalExpr(a.ring_, a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalExpr operator*(const RationalExpr& a, const RationalExpr& b) {
        a.check(b);
        return RationalExpr(a.ring_, a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalExpr operator/(const RationalExpr& a, const RationalExpr& b) {
        a.check(b);
        if (b.is_zero()) throw DivisionByZero("division by zero expression");
        return RationalExpr(a.ring_, a.num_ * b.den_, a.den_ * b.num_);
    }

    RationalExpr& operator+=(const RationalExpr& o) { return *this = *this + o; }
    RationalExpr& operator-=(const RationalExpr& o) { return *this = *this - o; }
    RationalExpr& operator*=(const RationalExpr& o) { return *this = *this * o; }
    RationalExpr& operator/=(const RationalExpr& o) { return *this = *this / o; }

    RationalExpr pow(unsigned k) const {
        RationalExpr r = constant(ring_, Rational(1));
        RationalExpr base(*this);
        while (k) {
            if (k & 1u) r *= base;
            k >>= 1u;
            if (k) base *= base;
        }
        return r;
    }

    RationalExpr inverse() const {
        return constant(ring_, Rational(1)) / *this;
    }

    /// Exact quotient-rule derivative.
    RationalExpr diff(std::size_t v) const {
        Poly n = num_.diff(v) * den_ - num_ * den_.diff(v);
        return RationalExpr(ring_, std::move(n), den_ * den_);
    }

    RationalExpr diff(const std::string& var) const {
        auto idx = ring_->index_of(var);
        if (!idx) throw std::invalid_argument("unknown variable: " + var);
        return diff(*idx);
    }

    /// Semantic equality (valid modulo parameter relations).
    friend bool operator==(const RationalExpr& a, const RationalExpr& b) {
        a.check(b);
        if (a.num_ == b.num_ && a.den_ == b.den_) return true;
        return a.ring_->reduce(a.num_ * b.den_ - b.num_ * a.den_).is_zero();
    }
    friend bool operator!=(const RationalExpr& a, const RationalExpr& b) { return !(a == b); }

    Rational eval(std::span<const Rational> point) const {
        Rational d = den_.eval(point);
        if (d.is_zero()) throw DivisionByZero("evaluation hits a denominator zero");
        return num_.eval(point) / d;
    }

    std::size_t hash() const { return num_.hash() * 31 + den_.hash(); }

private:
    void check(const RationalExpr& o) const {
        if (ring_.get() != o.ring_.get())
            throw std::invalid_argument("RationalExpr: mixing distinct rings");
    }

    void normalize() {
        num_ = ring_->reduce(num_);
        den_ = ring_->reduce(den_);
        if (den_.is_zero()) throw DivisionByZero("zero denominator");
        if (num_.is_zero()) {
            den_ = Poly::constant(ring_->arity(), Rational(1));
            return;
        }
        // clear relation variables from the denominator by conjugation
        for (auto& rel : ring_->relations()) {
            if (!den_.depends_on(rel.var)) continue;
            if (rel.power != 2)
                throw std::domain_error(
                    "RationalExpr: cannot invert across relation of power > 2 on "
                    + ring_->name(rel.var));
            Poly conj = ring_->conjugate(den_, rel.var);
            num_ = ring_->reduce(num_ * conj);
            den_ = ring_->reduce(den_ * conj);
            if (den_.is_zero())
                throw DivisionByZero("denominator is a zero divisor modulo relations");
        }
        Poly g = gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = *num_.exact_div(g);
            den_ = *den_.exact_div(g);
        }
        Rational c = den_.content();
        den_ = den_.mul_scalar(c.inverse());
        num_ = num_.mul_scalar(c.inverse());
    }

    RingPtr ring_;
    Poly num_, den_;
};

}  // namespace wdvv
