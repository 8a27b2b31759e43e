#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tracelab/grading.hpp"
#include "tracelab/trace_poly.hpp"

using namespace tracelab;

TEST_CASE("monomial algebra and degree") {
    auto m = TraceMonomial::u(2).times(TraceMonomial::v(1, 2)).times(TraceMonomial::v(3));
    CHECK(m.u_power == 2);
    CHECK(m.trace_factors.at(1) == 2);
    CHECK(m.trace_factors.at(3) == 1);
    CHECK(trace_degree(m) == 2 + 2 * 1 + 3);
    CHECK(monomial_to_string(m) == "u^2*v1^2*v3");
    CHECK(monomial_to_string(TraceMonomial::one()) == "1");
    CHECK(trace_degree(TraceMonomial::one()) == 0);
}

TEST_CASE("canonical order of the grade-2 block") {
    auto basis = grade_basis(2);
    REQUIRE(basis.size() == 4);
    CHECK(basis[0] == TraceMonomial::u(2));
    CHECK(basis[1] == TraceMonomial::u(1).times(TraceMonomial::v(1)));
    CHECK(basis[2] == TraceMonomial::v(2));
    CHECK(basis[3] == TraceMonomial::v(1, 2));
}

TEST_CASE("grade basis sizes match partition sums") {
    // |basis(k)| = sum_{k0=0}^{k} p(k - k0)
    for (int k = 0; k <= 8; ++k) {
        long expect = 0;
        for (int k0 = 0; k0 <= k; ++k0) expect += partition_count(k - k0);
        CHECK(static_cast<long>(grade_basis(k).size()) == expect);
        for (auto& m : grade_basis(k)) CHECK(trace_degree(m) == k);
    }
    // p(n) for n = 0..10
    long p[] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
    for (int n = 0; n <= 10; ++n) CHECK(partition_count(n) == p[n]);
}

TEST_CASE("polynomial arithmetic re-canonicalizes") {
    auto p = RationalPoly::u(1) + RationalPoly::v(1).scaled(Rational(2));
    auto q = RationalPoly::u(1) - RationalPoly::v(1).scaled(Rational(2));
    auto diff = p - p;
    CHECK(diff.is_zero());
    auto prod = p * q; // u^2 - 4 v1^2
    CHECK(prod.size() == 2);
    CHECK(prod.coeff(TraceMonomial::u(2)) == 1);
    CHECK(prod.coeff(TraceMonomial::v(1, 2)) == -4);
    CHECK(prod.coeff(TraceMonomial::u(1).times(TraceMonomial::v(1))) == 0);
    CHECK((-p + p).is_zero());
    CHECK(p.scaled(Rational(0)).is_zero());
}

TEST_CASE("multiplication respects the grading") {
    auto p = RationalPoly::u(2) * RationalPoly::v(3);
    CHECK(p.max_trace_degree() == 5);
    auto comps = (RationalPoly::u(1) + RationalPoly::v(2)).grade_components();
    REQUIRE(comps.size() == 2);
    CHECK(comps.at(1) == RationalPoly::u(1));
    CHECK(comps.at(2) == RationalPoly::v(2));
}

TEST_CASE("scalar detection and conversion") {
    CHECK(RationalPoly::v(2).is_scalar());
    CHECK_FALSE(RationalPoly::u(1).is_scalar());
    auto c = to_complex_poly(RationalPoly::u(1).scaled(Rational(1, 2)));
    CHECK(c.coeff(TraceMonomial::u(1)) == ComplexF(0.5, 0.0));
}

TEST_CASE("Cayley-Hamilton grade-2 element") {
    auto p = cayley_hamilton_u2<Rational>();
    CHECK(p.size() == 4);
    CHECK(p.max_trace_degree() == 2);
    CHECK(p.coeff(TraceMonomial::u(2)) == 1);
    CHECK(p.coeff(TraceMonomial::u(1).times(TraceMonomial::v(1))) == -2);
    CHECK(p.coeff(TraceMonomial::v(1, 2)) == 2);
    CHECK(p.coeff(TraceMonomial::v(2)) == -1);
}

TEST_CASE("TPoly integral and derivative are inverse") {
    TPoly p(std::vector<Rational>{Rational(1), Rational(-3), Rational(3, 2)});
    CHECK(p.integral().derivative() == p);
    CHECK(p.eval(Rational(2)) == Rational(1) - Rational(6) + Rational(6));
    CHECK(p.str() == "1 + -3*t + 3/2*t^2");
    CHECK((p - p).is_zero());
    CHECK(TPoly::t().degree() == 1);
}
