#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "tracelab/heat.hpp"
#include "tracelab/matrix_lab.hpp"
#include "tracelab/operators.hpp"

using namespace tracelab;

namespace {

Matrix random_matrix(int N, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    Matrix A(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) A(i, j) = ComplexF(g(rng), g(rng));
    return A;
}

double inner(int N, const Matrix& X, const Matrix& Y) {
    return N * (X.adjoint() * Y).trace().real();
}

} // namespace

TEST_CASE("orthonormal bases") {
    for (int N : {1, 2, 3, 4}) {
        auto bu = onb(Group::Unitary, N);
        auto bg = onb(Group::GeneralLinear, N);
        CHECK(static_cast<int>(bu.size()) == N * N);
        CHECK(static_cast<int>(bg.size()) == 2 * N * N);
        // u(N) elements are anti-hermitian
        for (auto& X : bu) CHECK((X.adjoint() + X).norm() < 1e-15);
        // Gram matrix of the scaled inner product is the identity
        for (size_t i = 0; i < bg.size(); ++i)
            for (size_t j = 0; j < bg.size(); ++j) {
                double g = inner(N, bg[i], bg[j]);
                CHECK(std::abs(g - (i == j ? 1.0 : 0.0)) < 1e-13);
            }
    }
}

TEST_CASE("summation identities over the u(N) basis") {
    for (int N : {2, 3, 5}) {
        Matrix A = random_matrix(N, 100 + N), B = random_matrix(N, 200 + N);
        auto res = verify_magic(N, A, B);
        for (double r : res) CHECK(r < 1e-12);
    }
}

TEST_CASE("finite-difference Laplacian at the identity") {
    // Delta u = (D_N u) = -u, so the FD Laplacian of p(U) = U at U = I is -I.
    for (int N : {2, 3}) {
        Matrix I = Matrix::Identity(N, N);
        Matrix lap = laplacian_fd(to_complex_poly(RationalPoly::u(1)), I, 1e-3);
        CHECK((lap + I).norm() < 1e-4);
    }
    CHECK_THROWS(laplacian_fd(to_complex_poly(RationalPoly::u(1)), Matrix::Identity(2, 2), 1.0));
}

TEST_CASE("Laplacian agrees with the symbolic generator on a random point") {
    int N = 3;
    Matrix U = random_unitary(N, 5);
    auto p = to_complex_poly(RationalPoly::u(2));
    Matrix lhs = laplacian_fd(p, U, 1e-3);
    Matrix rhs = evaluate_matrix(to_complex_poly(apply_DN(RationalPoly::u(2), N)), U);
    CHECK((lhs - rhs).norm() < 1e-4);
}

TEST_CASE("Brownian endpoints stay unitary; t = 0 is the identity") {
    BrownianConfig cfg;
    cfg.N = 4;
    cfg.t = 1.0;
    cfg.h = 0.005;
    cfg.seed = 9;
    Matrix U = bm_endpoint(cfg, 0);
    CHECK((U.adjoint() * U - Matrix::Identity(4, 4)).norm() < 1e-8);

    cfg.t = 0.0;
    CHECK(cfg.steps() == 0);
    CHECK((bm_endpoint(cfg, 0) - Matrix::Identity(4, 4)).norm() < 1e-14);
    cfg.group = Group::GeneralLinear;
    CHECK((bm_endpoint(cfg, 3) - Matrix::Identity(4, 4)).norm() < 1e-14);
}

TEST_CASE("runs are deterministic in (seed, path index)") {
    BrownianConfig cfg;
    cfg.N = 3;
    cfg.t = 0.5;
    cfg.h = 0.01;
    cfg.paths = 16;
    cfg.seed = 1234;
    std::vector<Observable> obs = {
        {"tr", [](const Matrix& U) { return ntrace(U); }},
        {"tr2", [](const Matrix& U) { return ntrace((U * U).eval()); }},
    };
    auto a = mc_run(cfg, obs);
    auto b = mc_run(cfg, obs);
    REQUIRE(a.size() == 2);
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].mean == b[i].mean); // bit-identical
        CHECK(a[i].variance == b[i].variance);
        CHECK(a[i].n == cfg.paths);
        CHECK(a[i].stderror == doctest::Approx(std::sqrt(a[i].variance / cfg.paths)));
    }
    // endpoints are a pure function of (seed, index)
    CHECK((bm_endpoint(cfg, 7) - sample_bm(cfg)[7]).norm() == 0.0);
    // a different seed moves the estimate
    cfg.seed = 99;
    CHECK(mc_run(cfg, obs)[0].mean != a[0].mean);
}

TEST_CASE("estimates of constants are exact") {
    BrownianConfig cfg;
    cfg.N = 2;
    cfg.t = 0.3;
    cfg.paths = 8;
    auto s = mc_estimate(cfg, ComplexPoly::constant(ComplexF(1.0, 0.0)));
    CHECK(s.mean == ComplexF(1.0, 0.0));
    CHECK(s.variance == 0.0);
}

TEST_CASE("mean of tr U matches the heat kernel moment") {
    BrownianConfig cfg;
    cfg.N = 2;
    cfg.t = 1.0;
    cfg.h = 0.005;
    cfg.paths = 4000;
    cfg.seed = 31;
    auto s = mc_estimate(cfg, to_complex_poly(RationalPoly::v(1)));
    // E[tr U] = e^{-t/2} at every N; tolerance = 4 sigma + O(h) bias headroom
    double expect = std::exp(-0.5);
    CHECK(std::abs(s.mean.real() - expect) < 4 * s.stderror + 0.01);
    CHECK(std::abs(s.mean.imag()) < 4 * s.stderror + 0.01);
}

TEST_CASE("L2 distance of a function from itself is zero") {
    BrownianConfig cfg;
    cfg.group = Group::GeneralLinear;
    cfg.N = 3;
    cfg.t = 1.0;
    cfg.h = 0.01;
    cfg.paths = 8;
    auto f = to_complex_poly(RationalPoly::u(2));
    auto s = mc_l2_distance(f, f, cfg);
    CHECK(s.mean == ComplexF(0.0, 0.0));
    CHECK(s.variance == 0.0);
    cfg.group = Group::Unitary;
    CHECK_THROWS(mc_l2_distance(f, f, cfg));
}

TEST_CASE("gl endpoints drift away from the unitary group") {
    BrownianConfig cfg;
    cfg.group = Group::GeneralLinear;
    cfg.N = 3;
    cfg.t = 2.0;
    cfg.h = 0.01;
    cfg.seed = 4;
    Matrix Z = bm_endpoint(cfg, 0);
    CHECK((Z.adjoint() * Z - Matrix::Identity(3, 3)).norm() > 1e-2);
}

TEST_CASE("random_unitary is unitary and seed-stable") {
    Matrix U = random_unitary(4, 11);
    CHECK((U.adjoint() * U - Matrix::Identity(4, 4)).norm() < 1e-8);
    CHECK((U - random_unitary(4, 11)).norm() == 0.0);
    CHECK((U - random_unitary(4, 12)).norm() > 1e-3);
}
