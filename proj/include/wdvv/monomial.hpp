#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace wdvv {

/// Exponent vector of a power product.  Ordered by graded lexicographic
/// order: total degree first, then lexicographic with the first variable
/// strongest (x1 > x2 > ... within equal degree).
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::size_t arity) : e_(arity, 0), deg_(0) {}

    static Monomial one(std::size_t arity) { return Monomial(arity); }

    static Monomial var(std::size_t arity, std::size_t idx, unsigned k = 1) {
        Monomial m(arity);
        m.set_exp(idx, k);
        return m;
    }

    std::size_t arity() const { return e_.size(); }
    unsigned degree() const { return deg_; }
    unsigned exp(std::size_t i) const { return e_[i]; }
    bool is_one() const { return deg_ == 0; }

    void set_exp(std::size_t i, unsigned k) {
        if (k > 255) throw std::overflow_error("Monomial: exponent overflow");
        deg_ = deg_ - e_[i] + k;
        e_[i] = static_cast<std::uint8_t>(k);
    }

    bool depends_on(std::size_t i) const { return e_[i] != 0; }

    Monomial mul(const Monomial& o) const {
        Monomial r(*this);
        for (std::size_t i = 0; i < e_.size(); ++i) {
            unsigned s = r.e_[i] + o.e_[i];
            if (s > 255) throw std::overflow_error("Monomial: exponent overflow");
            r.e_[i] = static_cast<std::uint8_t>(s);
        }
        r.deg_ += o.deg_;
        return r;
    }

    bool divides(const Monomial& o) const {
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (e_[i] > o.e_[i]) return false;
        return true;
    }

    /// o / *this, assuming divisibility.
    Monomial div_into(const Monomial& o) const {
        Monomial r(o);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] -= e_[i];
        r.deg_ -= deg_;
        return r;
    }

    Monomial gcd(const Monomial& o) const {
        Monomial r(arity());
        unsigned d = 0;
        for (std::size_t i = 0; i < e_.size(); ++i) {
            r.e_[i] = std::min(e_[i], o.e_[i]);
            d += r.e_[i];
        }
        r.deg_ = d;
        return r;
    }

    Monomial pow(unsigned k) const {
        Monomial r(arity());
        for (std::size_t i = 0; i < e_.size(); ++i) {
            unsigned s = e_[i] * k;
            if (s > 255) throw std::overflow_error("Monomial: exponent overflow");
            r.e_[i] = static_cast<std::uint8_t>(s);
        }
        r.deg_ = deg_ * k;
        return r;
    }

    /// Graded-lex comparison; negative if *this < o.
    int cmp(const Monomial& o) const {
        if (deg_ != o.deg_) return deg_ < o.deg_ ? -1 : 1;
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (e_[i] != o.e_[i]) return e_[i] < o.e_[i] ? -1 : 1;
        return 0;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }
    friend bool operator<(const Monomial& a, const Monomial& b) { return a.cmp(b) < 0; }
    friend bool operator>(const Monomial& a, const Monomial& b) { return a.cmp(b) > 0; }

    std::size_t hash() const {
        std::size_t h = deg_ * 1099511628211ull + 14695981039346656037ull;
        for (auto x : e_) h = (h ^ x) * 1099511628211ull;
        return h;
    }

private:
    std::vector<std::uint8_t> e_;
    unsigned deg_ = 0;
};

}  // namespace wdvv
