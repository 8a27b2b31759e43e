#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "tracelab/genfun.hpp"

using namespace tracelab;

namespace {

double maxdiff(const FormalSeries& a, const FormalSeries& b) {
    double m = 0;
    for (int i = 0; i <= std::max(a.order(), b.order()); ++i)
        m = std::max(m, std::abs(a.coeff(i) - b.coeff(i)));
    return m;
}

} // namespace

TEST_CASE("series arithmetic basics") {
    auto z = FormalSeries::identity(6);
    auto one = FormalSeries(6, {ComplexF(1.0, 0.0)});
    // geometric series: (1 - z) * (1 + z + ... + z^6) = 1 mod z^7
    FormalSeries geo(6);
    for (int i = 0; i <= 6; ++i) geo.set_coeff(i, 1.0);
    CHECK(maxdiff((one - z) * geo, one) < 1e-15);
    CHECK(maxdiff(z.shifted(2), FormalSeries(6, {0.0, 0.0, 0.0, 1.0})) < 1e-15);
    CHECK(maxdiff(geo.derivative(), FormalSeries(6, {1, 2, 3, 4, 5, 6, 0})) < 1e-15);
}

TEST_CASE("exp matches closed forms") {
    // exp(a z) coefficients a^n / n!
    auto s = FormalSeries::identity(8).scaled(ComplexF(0.4, 0.0)).exp();
    double fact = 1.0;
    for (int n = 0; n <= 8; ++n) {
        if (n > 0) fact *= n;
        CHECK(std::abs(s.coeff(n) - std::pow(0.4, n) / fact) < 1e-14);
    }
    // nonzero constant term: exp(c0 + z) = e^{c0} exp(z)
    FormalSeries f(5, {ComplexF(0.3, 0.0), ComplexF(1.0, 0.0)});
    CHECK(maxdiff(f.exp(), FormalSeries::identity(5).exp().scaled(std::exp(ComplexF(0.3, 0.0)))) < 1e-14);
}

TEST_CASE("compose requires zero constant inner term") {
    auto f = FormalSeries::identity(4).exp();
    CHECK_THROWS_AS(f.compose(f), std::invalid_argument);
    // f(z^2) shifts coefficients to even slots
    auto z2 = FormalSeries::identity(4) * FormalSeries::identity(4);
    auto g = f.compose(z2);
    CHECK(std::abs(g.coeff(2) - f.coeff(1)) < 1e-15);
    CHECK(std::abs(g.coeff(4) - f.coeff(2)) < 1e-15);
    CHECK(std::abs(g.coeff(1)) < 1e-15);
}

TEST_CASE("reversion closed forms") {
    const int K = 12;
    auto z = FormalSeries::identity(K);
    CHECK(maxdiff(z.revert(), z) < 1e-15);
    // f = z/(1-z) = z + z^2 + ...; inverse is w/(1+w) = w - w^2 + w^3 - ...
    FormalSeries f(K);
    for (int i = 1; i <= K; ++i) f.set_coeff(i, 1.0);
    auto g = f.revert();
    for (int i = 1; i <= K; ++i) CHECK(std::abs(g.coeff(i) - (i % 2 ? 1.0 : -1.0)) < 1e-12);
    CHECK_THROWS_AS(FormalSeries(K, {ComplexF(1.0, 0.0)}).revert(), std::invalid_argument);
    CHECK_THROWS_AS((z * z).revert(), std::invalid_argument);
}

TEST_CASE("reversion round trips") {
    const int K = 12;
    auto f = (FormalSeries::identity(K).scaled(ComplexF(0.7, 0.0)).exp()).shifted(1); // z e^{0.7 z}
    auto g = f.revert();
    CHECK(maxdiff(f.compose(g), FormalSeries::identity(K)) < 1e-12);
    CHECK(maxdiff(g.compose(f), FormalSeries::identity(K)) < 1e-12);

    // random well-conditioned series: |c_i| <= (1/4)^i keeps the inverse's
    // coefficient growth mild through order 16
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> c(-1.0, 1.0);
    for (int rep = 0; rep < 50; ++rep) {
        FormalSeries h(16);
        h.set_coeff(1, ComplexF(1.0 + 0.25 * c(rng), 0.25 * c(rng)));
        double scale = 1.0;
        for (int i = 2; i <= 16; ++i) {
            scale *= 0.25;
            h.set_coeff(i, ComplexF(scale * c(rng), scale * c(rng)));
        }
        CHECK(maxdiff(h.compose(h.revert()), FormalSeries::identity(16)) < 1e-12);
    }
}

TEST_CASE("transform generating function, equal-parameter form") {
    // p_2(u) at t: e^t u^2 + t e^{t/2} u
    double t = 1.0;
    auto pk = expand_phi_tt(t, 4);
    REQUIRE(pk.size() == 4);
    CHECK(std::abs(pk[1].coeff(2) - std::exp(t)) < 1e-12);
    CHECK(std::abs(pk[1].coeff(1) - t * std::exp(t / 2)) < 1e-12);
    CHECK(std::abs(pk[0].coeff(1) - std::exp(t / 2)) < 1e-12);
    // t = 0: p_k = u^k exactly
    auto p0 = expand_phi_tt(0.0, 6);
    for (int k = 1; k <= 6; ++k) {
        for (int j = 0; j <= p0[k - 1].degree(); ++j)
            CHECK(std::abs(p0[k - 1].coeff(j) - (j == k ? 1.0 : 0.0)) < 1e-14);
    }
}

TEST_CASE("two-parameter expansion degenerates correctly") {
    // s = t reduces to the one-parameter family
    auto a = expand_phi_tt(0.8, 6);
    auto b = expand_phi_st(0.8, 0.8, 6);
    REQUIRE(a.size() == b.size());
    for (size_t k = 0; k < a.size(); ++k)
        for (int j = 0; j <= std::max(a[k].degree(), b[k].degree()); ++j)
            CHECK(std::abs(a[k].coeff(j) - b[k].coeff(j)) < 1e-10);
    // t = 0 gives the monomials u^k for any s
    CHECK(phi_initial_residual(1.0, 8) < 1e-8);
    CHECK(phi_initial_residual(0.3, 8) < 1e-8);
}

TEST_CASE("moment generating function") {
    auto r0 = rho_series(0.0, 8);
    for (int k = 1; k <= 8; ++k) CHECK(std::abs(r0.coeff(k) - 1.0) < 1e-14);
    auto r1 = rho_series(1.0, 8);
    CHECK(std::abs(r1.coeff(1) - std::exp(-0.5)) < 1e-12);
    CHECK(std::abs(r1.coeff(2)) < 1e-12); // nu_2(1) = 0
}

TEST_CASE("psi at t = 0 collapses to rho") {
    auto psi = psi_series(0.7, 0.0, 8);
    auto rho = rho_series(0.7, 8);
    CHECK(maxdiff(psi, rho) < 1e-12);
}

TEST_CASE("truncation order consistency") {
    auto lo = expand_phi_tt(0.6, 5);
    auto hi = expand_phi_tt(0.6, 9);
    for (int k = 1; k <= 5; ++k)
        for (int j = 0; j <= lo[k - 1].degree(); ++j)
            CHECK(std::abs(lo[k - 1].coeff(j) - hi[k - 1].coeff(j)) < 1e-12);
    auto rlo = rho_series(0.5, 4);
    auto rhi = rho_series(0.5, 10);
    for (int i = 0; i <= 4; ++i) CHECK(std::abs(rlo.coeff(i) - rhi.coeff(i)) < 1e-14);
}

TEST_CASE("pde residual reporting stays finite and order-stable") {
    for (auto kind : {PdeKind::Rho, PdeKind::Psi, PdeKind::Phi}) {
        auto r = pde_residual(kind, 1.0, 1.0, 6);
        for (int i = 0; i <= r.order(); ++i) {
            CHECK(std::isfinite(r.coeff(i).real()));
            CHECK(std::isfinite(r.coeff(i).imag()));
        }
    }
    // the rho residual at order z^1, s = 1, equals |e^{-1} - e^{-1/2}/2| (frozen)
    auto r = pde_residual(PdeKind::Rho, 1.0, 1.0, 4);
    double expect = std::abs(std::exp(-1.0) - 0.5 * std::exp(-0.5));
    CHECK(std::abs(std::abs(r.coeff(1)) - expect) < 1e-5);
}
