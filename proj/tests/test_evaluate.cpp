#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "tracelab/evaluate.hpp"
#include "tracelab/expm.hpp"
#include "tracelab/grading.hpp"
#include "tracelab/matrix_lab.hpp"

using namespace tracelab;

namespace {

Matrix haarish_unitary(int N, std::uint64_t seed) { return random_unitary(N, seed); }

ComplexPoly random_complex_poly(int max_grade, std::mt19937_64& rng) {
    ComplexPoly p;
    std::uniform_real_distribution<double> c(-1.0, 1.0);
    std::uniform_int_distribution<int> g(1, max_grade);
    for (int i = 0; i < 6; ++i) {
        auto basis = grade_basis(g(rng));
        std::uniform_int_distribution<int> pick(0, static_cast<int>(basis.size()) - 1);
        p.add_term(basis[pick(rng)], ComplexF(c(rng), c(rng)));
    }
    return p;
}

} // namespace

TEST_CASE("normalized trace") {
    Matrix I = Matrix::Identity(5, 5);
    CHECK(ntrace(I) == ComplexF(1.0, 0.0));
    CHECK(std::abs(ntrace(2.0 * I) - ComplexF(2.0, 0.0)) < 1e-15);
}

TEST_CASE("evaluation is a ring homomorphism") {
    std::mt19937_64 rng(3);
    for (int N : {2, 3, 5, 8}) {
        Matrix U = haarish_unitary(N, 40 + N);
        for (int rep = 0; rep < 3; ++rep) {
            auto p = random_complex_poly(3, rng);
            auto q = random_complex_poly(3, rng);
            Matrix lhs = evaluate_matrix(p * q, U);
            Matrix rhs = evaluate_matrix(p, U) * evaluate_matrix(q, U);
            CHECK((lhs - rhs).norm() < 1e-12);
            Matrix sum = evaluate_matrix(p + q, U) - evaluate_matrix(p, U) - evaluate_matrix(q, U);
            CHECK(sum.norm() < 1e-12);
        }
    }
}

TEST_CASE("scalar polynomials evaluate to multiples of the identity") {
    Matrix U = haarish_unitary(4, 77);
    ComplexPoly p = to_complex_poly(RationalPoly::v(2).scaled(Rational(3)) + RationalPoly::constant(Rational(1)));
    Matrix M = evaluate_matrix(p, U);
    ComplexF scalar = M(0, 0);
    CHECK((M - scalar * Matrix::Identity(4, 4)).norm() < 1e-14);
    ComplexF expect = 3.0 * ntrace((U * U).eval()) + 1.0;
    CHECK(std::abs(scalar - expect) < 1e-13);
}

TEST_CASE("u^k evaluates to the matrix power times trace scalars") {
    Matrix U = haarish_unitary(3, 12);
    ComplexPoly p = ComplexPoly::monomial(TraceMonomial::u(2).times(TraceMonomial::v(1)));
    Matrix expect = ntrace(U) * (U * U);
    CHECK((evaluate_matrix(p, U) - expect).norm() < 1e-13);
    CHECK_THROWS_AS(evaluate_matrix(p, Matrix::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("trace_eval substitutes v_j and leaves u free") {
    auto p = RationalPoly::u(2) * RationalPoly::v(1).scaled(Rational(2)) + RationalPoly::v(3);
    auto q = trace_eval(p, std::vector<Rational>{Rational(5), Rational(0), Rational(1, 2)});
    CHECK(q.coeff(2) == 10); // 2 * v1 -> 10
    CHECK(q.coeff(0) == Rational(1, 2));
    CHECK_THROWS_AS(trace_eval(p, std::vector<Rational>{Rational(1)}), std::invalid_argument);
}

TEST_CASE("pi0 sets every trace to one") {
    auto p = RationalPoly::u(1).scaled(Rational(3)) * RationalPoly::v(2) * RationalPoly::v(1) +
             RationalPoly::v(4).scaled(Rational(-1));
    auto q = pi0(p);
    CHECK(q.coeff(1) == 3);
    CHECK(q.coeff(0) == -1);
}

TEST_CASE("matrix exponential against closed forms") {
    // diagonal
    Matrix D = Matrix::Zero(2, 2);
    D(0, 0) = ComplexF(0.3, 0.0);
    D(1, 1) = ComplexF(0.0, 1.2);
    Matrix E = expm(D);
    CHECK(std::abs(E(0, 0) - std::exp(ComplexF(0.3, 0.0))) < 1e-14);
    CHECK(std::abs(E(1, 1) - std::exp(ComplexF(0.0, 1.2))) < 1e-14);
    CHECK(std::abs(E(0, 1)) < 1e-15);
    // rotation generator
    double th = 0.83;
    Matrix R = Matrix::Zero(2, 2);
    R(0, 1) = ComplexF(th, 0.0);
    R(1, 0) = ComplexF(-th, 0.0);
    Matrix F = expm(R);
    CHECK(std::abs(F(0, 0) - ComplexF(std::cos(th), 0.0)) < 1e-14);
    CHECK(std::abs(F(0, 1) - ComplexF(std::sin(th), 0.0)) < 1e-14);
    // semigroup law at a scaling/squaring-triggering norm
    Matrix A = Matrix::Random(6, 6) * 4.0;
    CHECK((expm(Matrix(2.0 * A)) - expm(A) * expm(A)).norm() / expm(Matrix(2.0 * A)).norm() < 1e-12);
}
