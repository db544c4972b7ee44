#pragma once

#include <vector>

#include "wdvv/poly.hpp"

namespace wdvv {

Poly gcd(const Poly& a, const Poly& b);

namespace detail {

/// Dense coefficient list of p with respect to variable v; entry k is the
/// coefficient of v^k (v-free in its monomials).
inline std::vector<Poly> collect(const Poly& p, std::size_t v) {
    std::vector<Poly> out(p.degree_in(v) + 1, Poly::zero(p.arity()));
    for (unsigned k = 0; k < out.size(); ++k) out[k] = p.coeff_of(v, k);
    while (out.size() > 1 && out.back().is_zero()) out.pop_back();
    return out;
}

inline Poly assemble(const std::vector<Poly>& cs, std::size_t v, std::size_t arity) {
    Poly r(arity);
    for (unsigned k = 0; k < cs.size(); ++k) {
        if (cs[k].is_zero()) continue;
        r = r + cs[k].mul_term({Monomial::var(arity, v, k), Rational(1)});
    }
    return r;
}

inline bool vec_is_zero(const std::vector<Poly>& v) {
    return v.size() == 1 && v[0].is_zero();
}

/// Pseudo-remainder of f by g in the collected representation; result has
/// v-degree < deg(g).  The overall scalar factor is irrelevant to callers
/// (they take primitive parts).
inline std::vector<Poly> prem(std::vector<Poly> r, const std::vector<Poly>& g) {
    const std::size_t dg = g.size() - 1;
    const Poly& lc = g[dg];
    while (!vec_is_zero(r) && r.size() - 1 >= dg) {
        const std::size_t dr = r.size() - 1;
        Poly head = r[dr];
        for (auto& c : r) c = c * lc;
        for (std::size_t j = 0; j <= dg; ++j)
            r[dr - dg + j] = r[dr - dg + j] - head * g[j];
        while (r.size() > 1 && r.back().is_zero()) r.pop_back();
    }
    return r;
}

inline Poly content_in(const Poly& p, std::size_t v) {
    Poly c = Poly::zero(p.arity());
    for (unsigned k = 0; k <= p.degree_in(v); ++k) {
        Poly ck = p.coeff_of(v, k);
        if (ck.is_zero()) continue;
        c = gcd(c, ck);
        if (c.is_constant() && !c.is_zero()) break;
    }
    return c;
}

inline Poly primitive_in(const Poly& p, std::size_t v) {
    return *p.exact_div(content_in(p, v));
}

/// Image of p as a dense univariate polynomial in v under evaluating every
/// other variable at the given values.
inline std::vector<Rational> eval_except(const Poly& p, std::size_t v,
                                         const std::vector<Rational>& point) {
    std::vector<Rational> out(p.degree_in(v) + 1, Rational(0));
    for (auto& t : p.terms()) {
        Rational c = t.coeff;
        for (std::size_t i = 0; i < p.arity(); ++i) {
            if (i == v) continue;
            unsigned e = t.mono.exp(i);
            if (e) c *= point[i].pow(e);
        }
        out[t.mono.exp(v)] += c;
    }
    while (out.size() > 1 && out.back().is_zero()) out.pop_back();
    return out;
}

inline unsigned univariate_gcd_degree(std::vector<Rational> a, std::vector<Rational> b) {
    auto deg = [](const std::vector<Rational>& p) { return p.size() - 1; };
    auto is0 = [](const std::vector<Rational>& p) {
        return p.size() == 1 && p[0].is_zero();
    };
    if (deg(a) < deg(b)) std::swap(a, b);
    while (!is0(b)) {
        // a mod b
        while (!is0(a) && deg(a) >= deg(b)) {
            Rational f = a.back() / b.back();
            std::size_t off = deg(a) - deg(b);
            for (std::size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
            while (a.size() > 1 && a.back().is_zero()) a.pop_back();
        }
        std::swap(a, b);
    }
    return static_cast<unsigned>(deg(a));
}

}  // namespace detail

/// Primitive multivariate gcd over Q (integer-primitive, positive leading
/// coefficient).  Primitive-PRS recursion: adequate for the moderate degrees
/// in this code base.
inline Poly gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.primitive();
    if (b.is_zero()) return a.primitive();
    const std::size_t arity = a.arity();
    if (a.is_constant() || b.is_constant()) return Poly::constant(arity, Rational(1));

    // common monomial factor
    Monomial ma = a.terms().front().mono, mb = b.terms().front().mono;
    for (auto& t : a.terms()) ma = ma.gcd(t.mono);
    for (auto& t : b.terms()) mb = mb.gcd(t.mono);
    Monomial mg = ma.gcd(mb);
    Poly pa = a, pb = b;
    if (!ma.is_one()) pa = *a.exact_div(Poly::from_term(ma, Rational(1)));
    if (!mb.is_one()) pb = *b.exact_div(Poly::from_term(mb, Rational(1)));
    Poly monpart = Poly::from_term(mg, Rational(1));

    if (pa.is_constant() || pb.is_constant()) return monpart;
    if (pa == pb) return (monpart * pa.primitive()).primitive();
    if (pa.exact_div(pb)) return (monpart * pb.primitive()).primitive();
    if (pb.exact_div(pa)) return (monpart * pa.primitive()).primitive();

    // main variable: common dependence, smallest min-degree
    std::size_t v = arity;
    unsigned best = 0;
    for (std::size_t i = 0; i < arity; ++i) {
        unsigned da = pa.degree_in(i), db = pb.degree_in(i);
        if (da == 0 || db == 0) continue;
        unsigned m = std::min(da, db);
        if (v == arity || m < best) {
            v = i;
            best = m;
        }
    }
    if (v == arity) return monpart;  // no shared variable

    Poly ca = detail::content_in(pa, v);
    Poly cb = detail::content_in(pb, v);
    Poly ppa = *pa.exact_div(ca);
    Poly ppb = *pb.exact_div(cb);
    Poly cont_gcd = gcd(ca, cb);

    // Evaluation shortcut: a degree-0 univariate gcd at a point where both
    // leading v-coefficients survive proves coprimality in v, so the gcd is
    // carried entirely by the contents.
    {
        const unsigned da = ppa.degree_in(v), db = ppb.degree_in(v);
        static const long seeds[] = {2, 3, 5, 7, -3, 11, -7, 13};
        for (int attempt = 0; attempt < 4; ++attempt) {
            std::vector<Rational> pt(arity);
            for (std::size_t i = 0; i < arity; ++i)
                pt[i] = Rational(seeds[(i + static_cast<std::size_t>(attempt) * 3)
                                       % (sizeof(seeds) / sizeof(seeds[0]))]
                                 + static_cast<long>(attempt));
            auto ua = detail::eval_except(ppa, v, pt);
            auto ub = detail::eval_except(ppb, v, pt);
            if (ua.size() - 1 != da || ub.size() - 1 != db) continue;
            if (detail::univariate_gcd_degree(ua, ub) == 0)
                return (monpart * cont_gcd).primitive();
            break;
        }
    }

    std::vector<Poly> f = detail::collect(ppa, v);
    std::vector<Poly> g = detail::collect(ppb, v);
    if (f.size() < g.size()) std::swap(f, g);
    while (true) {
        std::vector<Poly> r = detail::prem(f, g);
        if (detail::vec_is_zero(r)) {
            Poly gg = detail::primitive_in(detail::assemble(g, v, arity), v);
            return (monpart * (cont_gcd * gg)).primitive();
        }
        if (r.size() == 1) return (monpart * cont_gcd).primitive();
        Poly rr = detail::primitive_in(detail::assemble(r, v, arity), v);
        f = std::move(g);
        g = detail::collect(rr, v);
        if (f.size() < g.size()) std::swap(f, g);
    }
}

/// Least common multiple, primitive.
inline Poly lcm(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly::zero(a.arity());
    Poly g = gcd(a, b);
    return (*a.exact_div(g) * b).primitive();
}

}  // namespace wdvv
