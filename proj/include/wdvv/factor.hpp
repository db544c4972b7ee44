#pragma once

#include <optional>
#include <vector>

#include "wdvv/poly_gcd.hpp"
#include "wdvv/ring.hpp"

namespace wdvv {

/// p = content * prod factors[k].power^.. with pairwise-coprime squarefree
/// non-constant factors.
struct SquarefreeDecomposition {
    Rational content{1};
    std::vector<std::pair<Poly, unsigned>> factors;  // (squarefree part, multiplicity)
};

/// Char-0 squarefree decomposition via iterated gcd with all partial
/// derivatives (Musser chain).  Parameter relations are NOT applied here:
/// inputs are treated in the plain polynomial ring of their reduced
/// representatives.
inline SquarefreeDecomposition squarefree_decomposition(const Poly& p) {
    SquarefreeDecomposition out;
    if (p.is_zero()) {
        out.content = Rational(0);
        return out;
    }
    out.content = p.content();
    Poly cur = p.primitive();
    // g_k chain: g_0 = cur, g_{k+1} = gcd(g_k, all partials of g_k)
    std::vector<Poly> chain{cur};
    while (!chain.back().is_constant()) {
        const Poly& c = chain.back();
        Poly g = Poly::zero(p.arity());
        for (std::size_t v = 0; v < p.arity(); ++v) {
            if (!c.depends_on(v)) continue;
            g = gcd(g, c.diff(v));
            if (g.is_constant() && !g.is_zero()) break;
        }
        g = gcd(g, c);
        chain.push_back(g);
    }
    // rad_k = chain[k]/chain[k+1] = product of primes with multiplicity > k
    std::vector<Poly> rads;
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
        auto q = chain[k].exact_div(chain[k + 1]);
        rads.push_back(q->primitive());
    }
    // multiplicity-exactly-k part = rad_{k-1} / rad_k
    for (std::size_t k = 0; k < rads.size(); ++k) {
        Poly fk = (k + 1 < rads.size()) ? rads[k].exact_div(rads[k + 1])->primitive()
                                        : rads[k];
        if (!fk.is_constant()) out.factors.push_back({fk, static_cast<unsigned>(k + 1)});
    }
    // fix the content so that the product identity holds exactly
    Poly prod = Poly::constant(p.arity(), Rational(1));
    for (auto& [f, m] : out.factors) prod = prod * f.pow(m);
    Poly ratio = *p.exact_div(prod);
    out.content = ratio.constant_value();
    return out;
}

struct SquareRoot {
    Poly root;          // primitive polynomial with root^2 * cofactor ~ p
    Poly cofactor;      // parameter-only squarefree leftover
    Rational constant;  // rational leftover: p = constant * cofactor_sq_adjusted...
};

/// Polynomial square root up to a constant and parameter-only factor:
/// succeeds iff every odd-multiplicity squarefree factor is free of field
/// variables (squareness judged over Q(params)[fields]).  On success
/// p = constant * cofactor * root^2 exactly.
inline std::optional<SquareRoot> perfect_square_root(const Poly& p, const Ring& ring) {
    if (p.is_zero()) return std::nullopt;
    auto dec = squarefree_decomposition(p);
    SquareRoot out{Poly::constant(p.arity(), Rational(1)),
                   Poly::constant(p.arity(), Rational(1)), dec.content};
    for (auto& [f, m] : dec.factors) {
        bool field_dep = false;
        for (std::size_t v = 0; v < ring.field_count(); ++v)
            if (f.depends_on(v)) field_dep = true;
        if (m % 2 == 1) {
            if (field_dep) return std::nullopt;
            out.cofactor = out.cofactor * f;
        }
        if (m / 2 > 0) out.root = out.root * f.pow(m / 2);
    }
    out.root = out.root.primitive();
    // recompute the exact constant so p = constant * cofactor * root^2
    Poly prod = out.cofactor * out.root * out.root;
    Poly ratio = *p.exact_div(prod);
    out.constant = ratio.constant_value();
    return out;
}

/// Refines a list of polynomials into a pairwise-coprime "gcd-free basis";
/// every input is a product of powers of basis elements (times a constant).
inline std::vector<Poly> coprime_basis(std::vector<Poly> in) {
    std::vector<Poly> basis;
    for (auto& rawp : in) {
        if (rawp.is_zero() || rawp.is_constant()) continue;
        std::vector<Poly> queue{rawp.primitive()};
        while (!queue.empty()) {
            Poly p = queue.back();
            queue.pop_back();
            if (p.is_constant()) continue;
            bool split = false;
            for (std::size_t i = 0; i < basis.size(); ++i) {
                Poly g = gcd(p, basis[i]);
                if (g.is_constant()) continue;
                if (g == basis[i]) {
                    Poly q = *p.exact_div(g);
                    if (q.is_constant()) {
                        split = true;  // p already represented
                        break;
                    }
                    queue.push_back(q.primitive());
                    split = true;
                    break;
                }
                // proper split of an existing basis element
                Poly bq = *basis[i].exact_div(g);
                basis[i] = g;
                basis.push_back(bq.primitive());
                queue.push_back(p);
                split = true;
                break;
            }
            if (!split) basis.push_back(p);
        }
    }
    return basis;
}

}  // namespace wdvv
