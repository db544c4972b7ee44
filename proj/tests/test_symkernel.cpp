#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "wdvv/expr.hpp"
#include "wdvv/factor.hpp"
#include "wdvv/parser.hpp"
#include "wdvv/poly_gcd.hpp"

using namespace wdvv;

namespace {

RingPtr abc_ring() { return Ring::make({"a", "b", "c"}); }

RingPtr abc_mu_ring() {
    auto tmp = Ring::make({"a", "b", "c"}, {"mu"});
    Poly mu = Poly::variable(tmp->arity(), *tmp->index_of("mu"));
    return Ring::make({"a", "b", "c"}, {"mu"}, {}, {mu});
}

RingPtr abc_lambda_ring() {
    auto names = std::vector<std::string>{"a", "b", "c"};
    auto r0 = Ring::make(names, {"lambda"});
    return Ring::make(names, {"lambda"}, {{*r0->index_of("lambda"), 2, Rational(1)}});
}

RationalExpr E(const RingPtr& r, const std::string& s) { return parse_expr(s, r); }

std::mt19937_64 rng(20240901);

Rational rand_rational() {
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 5);
    return Rational(num(rng), den(rng));
}

Poly rand_poly(const RingPtr& ring) {
    std::uniform_int_distribution<int> nterms(1, 5), expo(0, 3);
    std::vector<Poly::Term> ts;
    for (int t = 0; t < nterms(rng); ++t) {
        Monomial m(ring->arity());
        for (std::size_t v = 0; v < ring->arity(); ++v) m.set_exp(v, expo(rng));
        ts.push_back({m, rand_rational()});
    }
    return Poly::from_terms(ring->arity(), std::move(ts));
}

std::vector<Rational> rand_point(std::size_t n) {
    std::vector<Rational> p;
    for (std::size_t i = 0; i < n; ++i) {
        Rational r = rand_rational();
        p.push_back(r.is_zero() ? Rational(1, 3) : r);
    }
    return p;
}

}  // namespace

TEST_CASE("rational basics") {
    Rational r(6, -4);
    CHECK(r == Rational(-3, 2));
    CHECK(r.den() == 2);
    CHECK((r * r) == Rational(9, 4));
    CHECK(Rational(2, 3).pow(3) == Rational(8, 27));
    CHECK_THROWS_AS(Rational(1, 2) / Rational(0), std::domain_error);
}

TEST_CASE("poly arithmetic canonical forms") {
    auto r = abc_ring();
    SUBCASE("additive inverse cancels exactly") {
        auto p = E(r, "b^2 - a*c");
        CHECK((p - p).is_zero());
    }
    SUBCASE("hand-expanded product") {
        auto rm = abc_mu_ring();
        auto lhs = E(rm, "(a + mu*c)*(1 - mu*b)");
        auto rhs = E(rm, "a - a*mu*b + mu*c - mu^2*b*c");
        CHECK(lhs == rhs);
        // cross-check by evaluation at 5 random rational points
        for (int i = 0; i < 5; ++i) {
            auto pt = rand_point(rm->arity());
            CHECK(lhs.eval(pt) == rhs.eval(pt));
        }
    }
    SUBCASE("variable-list mismatch is an error") {
        Poly p3(3), p4(4);
        CHECK_THROWS_AS(p3 + p4, std::invalid_argument);
    }
}

TEST_CASE("side relation lambda^2 = 1") {
    auto r = abc_lambda_ring();
    SUBCASE("lambda^2 * x reduces to x") {
        auto e = E(r, "lambda^2 * a + 0");
        CHECK(e == E(r, "a"));
    }
    SUBCASE("reduction is idempotent") {
        for (int i = 0; i < 50; ++i) {
            Poly p = r->reduce(rand_poly(r));
            CHECK(r->reduce(p) == p);
        }
    }
    SUBCASE("division by lambda uses the conjugate") {
        auto e = E(r, "a / lambda");
        CHECK(e == E(r, "a * lambda"));
    }
    SUBCASE("zero-divisor denominator is rejected") {
        CHECK_THROWS_AS(E(r, "a / (lambda + 1)"), DivisionByZero);
    }
}

TEST_CASE("diff: quotient rule examples") {
    auto r = abc_ring();
    CHECK(E(r, "b^2 - a*c").diff("a") == E(r, "-c"));
    CHECK(E(r, "(b*c + 1)/a").diff("a") == E(r, "-(b*c + 1)/a^2"));

    auto rm = abc_mu_ring();
    auto f = E(rm, "(a*c - b^2 + mu*c^2)/(mu*b - 1)");
    auto expect = E(rm, "(-2*b*(mu*b - 1) - mu*(a*c - b^2 + mu*c^2))/(mu*b - 1)^2");
    CHECK(f.diff("b") == expect);
    // numeric cross-check at mu = 2
    for (int i = 0; i < 5; ++i) {
        auto pt = rand_point(rm->arity());
        pt[3] = Rational(2);
        if (E(rm, "mu*b - 1").eval(pt).is_zero()) continue;
        CHECK(f.diff("b").eval(pt) == expect.eval(pt));
    }
}

TEST_CASE("poly properties: commutativity and Leibniz (100+ cases)") {
    auto r = abc_mu_ring();
    for (int i = 0; i < 120; ++i) {
        Poly p = rand_poly(r), q = rand_poly(r);
        CHECK(p + q == q + p);
        CHECK((p * q - q * p).is_zero());
        std::uniform_int_distribution<std::size_t> var(0, r->arity() - 1);
        std::size_t v = var(rng);
        CHECK((p * q).diff(v) == p.diff(v) * q + p * q.diff(v));
    }
}

TEST_CASE("canonicalization is semantics-preserving under evaluation") {
    auto r = abc_mu_ring();
    for (int i = 0; i < 100; ++i) {
        Poly pn = rand_poly(r), pd = rand_poly(r);
        if (pd.is_zero()) continue;
        RationalExpr e(r, pn, pd);
        auto pt = rand_point(r->arity());
        if (pd.eval(pt).is_zero() || e.den().eval(pt).is_zero()) continue;
        CHECK(e.eval(pt) == pn.eval(pt) / pd.eval(pt));
    }
}

TEST_CASE("gcd and exact division") {
    auto r = abc_ring();
    auto p1 = E(r, "a^2 - b^2").num();
    auto p2 = E(r, "a^2 + 2*a*b + b^2").num();
    Poly g = gcd(p1, p2);
    CHECK(g == E(r, "a + b").num());
    for (int i = 0; i < 40; ++i) {
        Poly x = rand_poly(r), y = rand_poly(r), z = rand_poly(r);
        if (x.is_zero() || y.is_zero() || z.is_zero()) continue;
        Poly gg = gcd(x * z, y * z);
        CHECK(gg.exact_div(z.primitive()).has_value());
    }
}

TEST_CASE("perfect square root") {
    auto r = abc_ring();
    SUBCASE("binomial square") {
        auto p = E(r, "a^2 - 2*a*b + b^2").num();
        auto sr = perfect_square_root(p, *r);
        REQUIRE(sr.has_value());
        CHECK(sr->root == E(r, "a - b").num());
    }
    SUBCASE("monomial") {
        auto p = E(r, "a^2*b^4").num();
        auto sr = perfect_square_root(p, *r);
        REQUIRE(sr.has_value());
        CHECK(sr->root == E(r, "a*b^2").num());
    }
    SUBCASE("non-squares fail") {
        CHECK_FALSE(perfect_square_root(E(r, "a*b").num(), *r).has_value());
        CHECK_FALSE(perfect_square_root(E(r, "a^2 + b").num(), *r).has_value());
    }
    SUBCASE("constant times square succeeds with the constant reported") {
        auto p = E(r, "-3*a^2").num();
        auto sr = perfect_square_root(p, *r);
        REQUIRE(sr.has_value());
        CHECK(sr->root == E(r, "a").num());
        CHECK(sr->constant == Rational(-3));
    }
    SUBCASE("random squares round-trip") {
        for (int i = 0; i < 30; ++i) {
            Poly q = rand_poly(r);
            if (q.is_zero()) continue;
            auto sr = perfect_square_root(q * q, *r);
            REQUIRE(sr.has_value());
            CHECK(sr->root == q.primitive());
        }
    }
}

TEST_CASE("squarefree decomposition reconstructs its input") {
    auto r = abc_ring();
    for (int i = 0; i < 25; ++i) {
        Poly x = rand_poly(r), y = rand_poly(r);
        if (x.is_zero() || y.is_zero()) continue;
        Poly p = x * x * y;
        auto dec = squarefree_decomposition(p);
        Poly prod = Poly::constant(r->arity(), dec.content);
        for (auto& [f, m] : dec.factors) prod = prod * f.pow(m);
        CHECK(prod == p);
    }
}

TEST_CASE("parser grammar") {
    auto r = abc_ring();
    CHECK(E(r, "2^3^2") == RationalExpr::constant(r, Rational(512)));
    CHECK(E(r, "-a^2") == -E(r, "a") * E(r, "a"));
    CHECK(E(r, "1/2 * a") == E(r, "a/2"));
    CHECK(E(r, "a - b - c") == E(r, "(a - b) - c"));
    CHECK(E(r, "a / b / c") == E(r, "a/(b*c)"));
    CHECK(E(r, " a\n + b ") == E(r, "a + b"));

    SUBCASE("errors carry positions") {
        try {
            E(r, "a + (b * ");
            FAIL("expected ParseError");
        } catch (const ParseError& pe) {
            CHECK(pe.line == 1);
            CHECK(pe.column >= 9);
        }
        CHECK_THROWS_AS(E(r, "x + 1"), ParseError);
        CHECK_THROWS_AS(E(r, "a^b"), ParseError);
        CHECK_THROWS_AS(E(r, "a^(-1)"), ParseError);
    }

    SUBCASE("printing round-trips") {
        auto rm = abc_mu_ring();
        for (int i = 0; i < 60; ++i) {
            Poly pn = rand_poly(rm), pd = rand_poly(rm);
            if (pd.is_zero()) continue;
            RationalExpr e(rm, pn, pd);
            CHECK(parse_expr(to_string(e), rm) == e);
        }
    }
}
