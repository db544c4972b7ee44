#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wdvv/poly.hpp"

namespace wdvv {

/// Variable universe shared by all expressions of a computation: field
/// variables first, then symbolic parameters.  Parameters may carry side
/// relations of the shape p^k = c (c a rational constant, e.g. lambda^2 = 1)
/// and polynomials asserted to be nonvanishing (e.g. mu, mu*b - 1).
/// Immutable after construction; share via std::shared_ptr.
class Ring {
public:
    struct Relation {
        std::size_t var;
        unsigned power;    // >= 2
        Rational value;    // var^power = value
    };

    static std::shared_ptr<const Ring> make(std::vector<std::string> field_vars,
                                            std::vector<std::string> params = {},
                                            std::vector<Relation> relations = {},
                                            std::vector<Poly> nonvanishing = {}) {
        auto r = std::shared_ptr<Ring>(new Ring());
        r->n_fields_ = field_vars.size();
        r->names_ = std::move(field_vars);
        for (auto& p : params) r->names_.push_back(std::move(p));
        for (std::size_t i = 0; i < r->names_.size(); ++i) {
            for (std::size_t j = i + 1; j < r->names_.size(); ++j)
                if (r->names_[i] == r->names_[j])
                    throw std::invalid_argument("Ring: duplicate variable " + r->names_[i]);
        }
        for (auto& rel : relations) {
            if (rel.var < r->n_fields_ || rel.var >= r->names_.size())
                throw std::invalid_argument("Ring: relation on non-parameter variable");
            if (rel.power < 2) throw std::invalid_argument("Ring: relation power must be >= 2");
            if (rel.value.is_zero())
                throw std::invalid_argument("Ring: relation value must be nonzero");
        }
        r->relations_ = std::move(relations);
        for (auto& nv : nonvanishing) {
            if (nv.arity() != r->names_.size())
                throw std::invalid_argument("Ring: nonvanishing polynomial arity mismatch");
            if (nv.is_zero()) throw std::invalid_argument("Ring: zero nonvanishing witness");
            r->nonvanishing_.push_back(nv.primitive());
        }
        return r;
    }

    std::size_t arity() const { return names_.size(); }
    std::size_t field_count() const { return n_fields_; }
    std::size_t param_count() const { return names_.size() - n_fields_; }
    bool is_param(std::size_t i) const { return i >= n_fields_; }
    const std::string& name(std::size_t i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<Relation>& relations() const { return relations_; }
    const std::vector<Poly>& nonvanishing() const { return nonvanishing_; }
    bool has_relations() const { return !relations_.empty(); }

    std::optional<std::size_t> index_of(const std::string& n) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == n) return i;
        return std::nullopt;
    }

    std::optional<const Relation*> relation_for(std::size_t var) const {
        for (auto& r : relations_)
            if (r.var == var) return &r;
        return std::nullopt;
    }

    /// Rewrites ever term by the parameter relations: var^e with e >= power
    /// becomes value^(e div power) * var^(e mod power).  Confluent because
    /// relation right-hand sides are constants.
    Poly reduce(const Poly& p) const {
        if (relations_.empty()) return p;
        bool touched = false;
        for (auto& t : p.terms()) {
            for (auto& r : relations_)
                if (t.mono.exp(r.var) >= r.power) touched = true;
            if (touched) break;
        }
        if (!touched) return p;
        std::vector<Poly::Term> out;
        out.reserve(p.term_count());
        for (auto& t : p.terms()) {
            Monomial m = t.mono;
            Rational c = t.coeff;
            for (auto& r : relations_) {
                unsigned e = m.exp(r.var);
                if (e >= r.power) {
                    c *= r.value.pow(e / r.power);
                    m.set_exp(r.var, e % r.power);
                }
            }
            out.push_back({std::move(m), std::move(c)});
        }
        return Poly::from_terms(p.arity(), std::move(out));
    }

    /// Substitutes var -> -var; a ring automorphism when var^2 = c.
    Poly conjugate(const Poly& p, std::size_t var) const {
        std::vector<Poly::Term> out;
        out.reserve(p.term_count());
        for (auto& t : p.terms()) {
            Rational c = t.coeff;
            if (t.mono.exp(var) % 2 == 1) c = -c;
            out.push_back({t.mono, std::move(c)});
        }
        return Poly::from_terms(p.arity(), std::move(out));
    }

    /// True when p maps to zero under some admissible evaluation of the
    /// relation parameters (so multiplying by p can lose information).
    /// Only relations with a rational root of var^power = value are probed;
    /// relation-free polynomials are zero divisors only when zero.
    bool is_zero_divisor(const Poly& p) const {
        if (p.is_zero()) return true;
        std::vector<std::pair<std::size_t, std::vector<Rational>>> roots;
        for (auto& r : relations_) {
            if (!p.depends_on(r.var)) continue;
            std::vector<Rational> rs = rational_roots(r);
            if (rs.empty()) continue;
            roots.push_back({r.var, std::move(rs)});
        }
        if (roots.empty()) return false;
        std::vector<std::size_t> pick(roots.size(), 0);
        while (true) {
            Poly q = p;
            for (std::size_t i = 0; i < roots.size(); ++i)
                q = substitute_constant(q, roots[i].first, roots[i].second[pick[i]]);
            if (q.is_zero()) return true;
            std::size_t i = 0;
            while (i < pick.size() && ++pick[i] == roots[i].second.size()) pick[i++] = 0;
            if (i == pick.size()) break;
        }
        return false;
    }

    /// Checks that p is a unit times a product of declared nonvanishing
    /// polynomials (used to validate divisions in strict solving).
    bool is_allowed_nonvanishing(const Poly& p) const {
        if (p.is_zero()) return false;
        Poly q = p.primitive();
        // strip pure parameter monomial factors of relation variables (units)
        q = strip_relation_units(q);
        bool progress = true;
        while (!q.is_constant() && progress) {
            progress = false;
            for (auto& nv : nonvanishing_) {
                if (nv.is_constant()) continue;
                if (auto d = q.exact_div(nv)) {
                    q = d->primitive();
                    progress = true;
                }
            }
        }
        return q.is_constant();
    }

    std::size_t hash_identity() const { return reinterpret_cast<std::size_t>(this); }

private:
    Ring() = default;

    static Poly substitute_constant(const Poly& p, std::size_t var, const Rational& val) {
        std::vector<Poly::Term> out;
        out.reserve(p.term_count());
        for (auto& t : p.terms()) {
            Monomial m = t.mono;
            Rational c = t.coeff * val.pow(m.exp(var));
            m.set_exp(var, 0);
            out.push_back({std::move(m), std::move(c)});
        }
        return Poly::from_terms(p.arity(), std::move(out));
    }

    static std::vector<Rational> rational_roots(const Relation& r) {
        // var^power = value; only power == 2 with square rational value is
        // probed (covers lambda^2 = 1, mu^2 = 1).
        std::vector<Rational> out;
        if (r.power != 2) return out;
        mpz_class n = r.value.num(), d = r.value.den();
        if (sgn(n) < 0) return out;
        mpz_class sn, sd;
        mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
        mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
        if (sn * sn != n || sd * sd != d) return out;
        Rational root(mpq_class(sn) / mpq_class(sd));
        out.push_back(root);
        out.push_back(-root);
        return out;
    }

    Poly strip_relation_units(const Poly& q) const {
        if (relations_.empty() || q.is_zero()) return q;
        // common monomial factor in relation variables only is a unit
        Monomial g = q.terms().front().mono;
        for (auto& t : q.terms()) g = g.gcd(t.mono);
        Monomial unit(q.arity());
        for (auto& r : relations_)
            if (g.exp(r.var) > 0) unit.set_exp(r.var, g.exp(r.var));
        if (unit.is_one()) return q;
        std::vector<Poly::Term> out;
        for (auto& t : q.terms()) out.push_back({unit.div_into(t.mono), t.coeff});
        return Poly::from_terms(q.arity(), std::move(out));
    }

    std::vector<std::string> names_;
    std::size_t n_fields_ = 0;
    std::vector<Relation> relations_;
    std::vector<Poly> nonvanishing_;
};

using RingPtr = std::shared_ptr<const Ring>;

}  // namespace wdvv
