#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "wdvv/linear_solver.hpp"
#include "wdvv/parser.hpp"

using namespace wdvv;

namespace {

RingPtr plain_ring() { return Ring::make({}, {}); }

RingPtr mu_ring(bool declare) {
    auto r0 = Ring::make({}, {"mu"});
    Poly mu = Poly::variable(1, 0);
    Poly mu1 = mu - Poly::constant(1, Rational(1));
    std::vector<Poly> nv;
    if (declare) nv = {mu, mu1};
    return Ring::make({}, {"mu"}, {}, nv);
}

RationalExpr C(const RingPtr& r, long v) { return RationalExpr::constant(r, Rational(v)); }

}  // namespace

TEST_CASE("two equations, unique solution") {
    auto r = plain_ring();
    LinearSystem sys(r, 2);
    sys.add_row({{{0, C(r, 1)}, {1, C(r, 1)}}, C(r, 2)});   // x + y = 2
    sys.add_row({{{0, C(r, 1)}, {1, C(r, -1)}}, C(r, 0)});  // x - y = 0
    for (bool par : {false, true}) {
        auto sol = sys.solve(PivotPolicy::Strict, par);
        REQUIRE(sol.consistent);
        CHECK(sol.basis.empty());
        CHECK(sol.particular[0] == C(r, 1));
        CHECK(sol.particular[1] == C(r, 1));
        CHECK(sys.satisfied_by(sol.particular));
    }
}

TEST_CASE("trivial row leaves the space free") {
    auto r = plain_ring();
    LinearSystem sys(r, 1);
    sys.add_row({{}, C(r, 0)});  // 0 = 0
    auto sol = sys.solve();
    REQUIRE(sol.consistent);
    CHECK(sol.dimension() == 1);
}

TEST_CASE("inconsistent system") {
    auto r = plain_ring();
    LinearSystem sys(r, 1);
    sys.add_row({{{0, C(r, 1)}}, C(r, 1)});
    sys.add_row({{{0, C(r, 1)}}, C(r, 2)});
    CHECK_FALSE(sys.solve(PivotPolicy::Strict, false).consistent);
    CHECK_FALSE(sys.solve(PivotPolicy::Strict, true).consistent);
}

TEST_CASE("strict pivoting fails loudly on undeclared parameter divisions") {
    auto bad = mu_ring(false);
    {
        LinearSystem sys(bad, 1);
        // (mu - 1) x = 1
        sys.add_row({{{0, parse_expr("mu - 1", bad)}}, C(bad, 1)});
        CHECK_THROWS_AS(sys.solve(), CaseSplitRequired);
    }
    auto good = mu_ring(true);
    {
        LinearSystem sys(good, 1);
        sys.add_row({{{0, parse_expr("mu - 1", good)}}, C(good, 1)});
        auto sol = sys.solve();
        REQUIRE(sol.consistent);
        CHECK(sol.particular[0] == parse_expr("1/(mu - 1)", good));
        // generic-field mode never raises
        LinearSystem sys2(good, 1);
        sys2.add_row({{{0, parse_expr("mu - 1", good)}}, C(good, 1)});
        CHECK(sys2.solve(PivotPolicy::GenericField, false).consistent);
    }
}

TEST_CASE("parametric elimination with relation units") {
    // lambda^2 = 1: dividing by lambda multiplies by lambda
    auto r0 = Ring::make({}, {"lambda"});
    auto r = Ring::make({}, {"lambda"}, {{0, 2, Rational(1)}});
    LinearSystem sys(r, 1);
    sys.add_row({{{0, parse_expr("lambda", r)}}, C(r, 1)});
    auto sol = sys.solve();
    REQUIRE(sol.consistent);
    CHECK(sol.particular[0] == parse_expr("lambda", r));
}

TEST_CASE("random systems: serial == parallel, residuals vanish") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> coeff(-6, 6);
    auto r = plain_ring();
    for (int rep = 0; rep < 25; ++rep) {
        std::uniform_int_distribution<std::size_t> nd(1, 8);
        std::size_t n = nd(rng), m = nd(rng) + 2;
        LinearSystem sys(r, n);
        for (std::size_t i = 0; i < m; ++i) {
            SparseRow row;
            for (std::size_t j = 0; j < n; ++j) {
                long c = coeff(rng);
                if (c) row.lhs.emplace_back(j, C(r, c));
            }
            row.rhs = C(r, 0);  // homogeneous: always consistent
            sys.add_row(std::move(row));
        }
        auto a = sys.solve(PivotPolicy::Strict, false);
        auto b = sys.solve(PivotPolicy::Strict, true);
        REQUIRE(a.consistent);
        REQUIRE(b.consistent);
        CHECK(a.pivot_columns == b.pivot_columns);
        REQUIRE(a.basis.size() == b.basis.size());
        for (std::size_t k = 0; k < a.basis.size(); ++k)
            for (std::size_t j = 0; j < n; ++j) CHECK(a.basis[k][j] == b.basis[k][j]);
        for (auto& vec : a.basis) CHECK(sys.satisfied_by(vec));
    }
}

TEST_CASE("solution substituted into the rows leaves zero residuals") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> coeff(-5, 5);
    auto r = mu_ring(true);
    for (int rep = 0; rep < 15; ++rep) {
        LinearSystem sys(r, 3);
        std::vector<RationalExpr> truth{parse_expr("mu", r), C(r, 2), parse_expr("1 - mu", r)};
        for (int i = 0; i < 4; ++i) {
            SparseRow row;
            RationalExpr rhs(r);
            for (std::size_t j = 0; j < 3; ++j) {
                long c = coeff(rng);
                if (!c) continue;
                row.lhs.emplace_back(j, C(r, c));
                rhs += C(r, c) * truth[j];
            }
            row.rhs = rhs;
            sys.add_row(std::move(row));
        }
        auto sol = sys.solve(PivotPolicy::Strict, false);
        REQUIRE(sol.consistent);
        CHECK(sys.satisfied_by(sol.particular));
    }
}
