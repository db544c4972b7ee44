#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wdvv/monomial.hpp"
#include "wdvv/rational.hpp"

namespace wdvv {

/// Sparse multivariate polynomial over the rationals.  Terms are kept in
/// strictly descending graded-lex order with no zero coefficients, so two
/// polynomials are equal iff their representations are equal.
class Poly {
public:
    struct Term {
        Monomial mono;
        Rational coeff;
    };

    Poly() : arity_(0) {}
    explicit Poly(std::size_t arity) : arity_(arity) {}

    static Poly zero(std::size_t arity) { return Poly(arity); }

    static Poly constant(std::size_t arity, const Rational& c) {
        Poly p(arity);
        if (!c.is_zero()) p.terms_.push_back({Monomial::one(arity), c});
        return p;
    }

    static Poly variable(std::size_t arity, std::size_t idx, unsigned k = 1) {
        Poly p(arity);
        p.terms_.push_back({Monomial::var(arity, idx, k), Rational(1)});
        return p;
    }

    static Poly from_term(const Monomial& m, const Rational& c) {
        Poly p(m.arity());
        if (!c.is_zero()) p.terms_.push_back({m, c});
        return p;
    }

    /// Builds from an unsorted/duplicated term list.
    static Poly from_terms(std::size_t arity, std::vector<Term> ts) {
        std::sort(ts.begin(), ts.end(),
                  [](const Term& a, const Term& b) { return b.mono < a.mono; });
        Poly p(arity);
        for (auto& t : ts) {
            if (t.coeff.is_zero()) continue;
            if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
                p.terms_.back().coeff += t.coeff;
                if (p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
            } else {
                p.terms_.push_back(std::move(t));
            }
        }
        return p;
    }

    std::size_t arity() const { return arity_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
    std::size_t term_count() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }

    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        return terms_.size() == 1 && terms_[0].mono.is_one() ? terms_[0].coeff : Rational(0);
    }

    const Term& leading() const { return terms_.front(); }
    unsigned degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree(); }

    unsigned degree_in(std::size_t v) const {
        unsigned d = 0;
        for (auto& t : terms_) d = std::max(d, t.mono.exp(v));
        return d;
    }

    bool depends_on(std::size_t v) const {
        for (auto& t : terms_)
            if (t.mono.depends_on(v)) return true;
        return false;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.arity_ != b.arity_ || a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i)
            if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff)
                return false;
        return true;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly operator-() const {
        Poly r(*this);
        for (auto& t : r.terms_) t.coeff = -t.coeff;
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b) { return merge(a, b, false); }
    friend Poly operator-(const Poly& a, const Poly& b) { return merge(a, b, true); }

    friend Poly operator*(const Poly& a, const Poly& b) {
        check_arity(a, b);
        Poly r(a.arity_);
        if (a.is_zero() || b.is_zero()) return r;
        if (a.terms_.size() == 1) return b.mul_term(a.terms_[0]);
        if (b.terms_.size() == 1) return a.mul_term(b.terms_[0]);
        std::map<Monomial, Rational> acc;
        for (auto& ta : a.terms_)
            for (auto& tb : b.terms_) {
                Monomial m = ta.mono.mul(tb.mono);
                auto it = acc.find(m);
                if (it == acc.end())
                    acc.emplace(std::move(m), ta.coeff * tb.coeff);
                else
                    it->second += ta.coeff * tb.coeff;
            }
        r.terms_.reserve(acc.size());
        for (auto it = acc.rbegin(); it != acc.rend(); ++it)
            if (!it->second.is_zero()) r.terms_.push_back({it->first, it->second});
        return r;
    }

    Poly mul_term(const Term& t) const {
        Poly r(arity_);
        if (t.coeff.is_zero()) return r;
        r.terms_.reserve(terms_.size());
        for (auto& s : terms_) r.terms_.push_back({s.mono.mul(t.mono), s.coeff * t.coeff});
        return r;
    }

    Poly mul_scalar(const Rational& c) const {
        Poly r(arity_);
        if (c.is_zero()) return r;
        r.terms_.reserve(terms_.size());
        for (auto& s : terms_) r.terms_.push_back({s.mono, s.coeff * c});
        return r;
    }

    Poly pow(unsigned k) const {
        Poly r = Poly::constant(arity_, Rational(1));
        Poly base(*this);
        while (k) {
            if (k & 1u) r = r * base;
            k >>= 1u;
            if (k) base = base * base;
        }
        return r;
    }

    Poly diff(std::size_t v) const {
        Poly r(arity_);
        for (auto& t : terms_) {
            unsigned e = t.mono.exp(v);
            if (e == 0) continue;
            Monomial m(t.mono);
            m.set_exp(v, e - 1);
            r.terms_.push_back({std::move(m), t.coeff * Rational(static_cast<long>(e))});
        }
        // differentiation preserves grlex order within the surviving terms
        std::sort(r.terms_.begin(), r.terms_.end(),
                  [](const Term& a, const Term& b) { return b.mono < a.mono; });
        return r;
    }

    Rational eval(std::span<const Rational> point) const {
        Rational acc(0);
        for (auto& t : terms_) {
            Rational v = t.coeff;
            for (std::size_t i = 0; i < arity_; ++i)
                for (unsigned e = 0; e < t.mono.exp(i); ++e) v *= point[i];
            acc += v;
        }
        return acc;
    }

    /// Coefficient of v^k, as a polynomial in the remaining variables
    /// (still represented in the full arity).
    Poly coeff_of(std::size_t v, unsigned k) const {
        Poly r(arity_);
        for (auto& t : terms_) {
            if (t.mono.exp(v) != k) continue;
            Monomial m(t.mono);
            m.set_exp(v, 0);
            r.terms_.push_back({std::move(m), t.coeff});
        }
        std::sort(r.terms_.begin(), r.terms_.end(),
                  [](const Term& a, const Term& b) { return b.mono < a.mono; });
        return r;
    }

    /// Exact division; returns std::nullopt when the division has a remainder.
    std::optional<Poly> exact_div(const Poly& d) const {
        check_arity(*this, d);
        if (d.is_zero()) throw std::domain_error("Poly: division by zero polynomial");
        Poly rem(*this), q(arity_);
        const Term& dl = d.leading();
        std::vector<Term> qterms;
        while (!rem.is_zero()) {
            const Term& rl = rem.leading();
            if (!dl.mono.divides(rl.mono)) return std::nullopt;
            Term t{dl.mono.div_into(rl.mono), rl.coeff / dl.coeff};
            rem = rem - d.mul_term(t);
            qterms.push_back(std::move(t));
        }
        return Poly::from_terms(arity_, std::move(qterms));
    }

    /// gcd of the integer numerators over the lcm of denominators, signed by
    /// the leading coefficient.  content() of the zero polynomial is 0.
    Rational content() const {
        if (terms_.empty()) return Rational(0);
        mpz_class g = 0, l = 1;
        for (auto& t : terms_) {
            g = gcd_z(g, t.coeff.num());
            l = lcm_z(l, t.coeff.den());
        }
        Rational c(mpq_class(g) / mpq_class(l));
        return terms_.front().coeff.sign() < 0 ? -c : c;
    }

    /// *this / content(): integer coefficients with positive leading term.
    Poly primitive() const {
        if (terms_.empty()) return *this;
        return mul_scalar(content().inverse());
    }

    std::size_t hash() const {
        std::size_t h = 1469598103934665603ull ^ terms_.size();
        for (auto& t : terms_) {
            h = (h * 1099511628211ull) ^ t.mono.hash();
            h = (h * 1099511628211ull) ^ t.coeff.hash();
        }
        return h;
    }

private:
    static void check_arity(const Poly& a, const Poly& b) {
        if (a.arity_ != b.arity_)
            throw std::invalid_argument("Poly: variable-list mismatch");
    }

    static Poly merge(const Poly& a, const Poly& b, bool sub) {
        check_arity(a, b);
        Poly r(a.arity_);
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() && j < b.terms_.size()) {
            int c = a.terms_[i].mono.cmp(b.terms_[j].mono);
            if (c > 0) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (c < 0) {
                r.terms_.push_back(b.terms_[j]);
                if (sub) r.terms_.back().coeff = -r.terms_.back().coeff;
                ++j;
            } else {
                Rational s = sub ? a.terms_[i].coeff - b.terms_[j].coeff
                                 : a.terms_[i].coeff + b.terms_[j].coeff;
                if (!s.is_zero()) r.terms_.push_back({a.terms_[i].mono, std::move(s)});
                ++i;
                ++j;
            }
        }
        for (; i < a.terms_.size(); ++i) r.terms_.push_back(a.terms_[i]);
        for (; j < b.terms_.size(); ++j) {
            r.terms_.push_back(b.terms_[j]);
            if (sub) r.terms_.back().coeff = -r.terms_.back().coeff;
        }
        return r;
    }

    std::size_t arity_;
    std::vector<Term> terms_;
};

}  // namespace wdvv
