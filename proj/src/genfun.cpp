#include "tracelab/genfun.hpp"

#include <cmath>
#include <stdexcept>

#include "tracelab/heat.hpp"

namespace tracelab {

namespace {

constexpr double kFdStep = 1e-4;

// (1+z)/(1-z) = 1 + 2(z + z^2 + ...) truncated.
FormalSeries cayley_kernel(int K) {
    FormalSeries g(K);
    g.set_coeff(0, 1.0);
    for (int i = 1; i <= K; ++i) g.set_coeff(i, 2.0);
    return g;
}

// z * psi * d/dz applied to a series with complex coefficients.
FormalSeries transport_term(const FormalSeries& psi, const FormalSeries& f) {
    return (psi * f.derivative()).shifted(1);
}

double upoly_max_abs(const UPoly& p) {
    double m = 0.0;
    for (int j = 0; j <= p.degree(); ++j) m = std::max(m, std::abs(p.coeff(j)));
    return m;
}

} // namespace

FormalSeries cayley_exp_series(double a, int K) {
    return cayley_kernel(K).scaled(a).exp();
}

std::vector<UPoly> expand_phi_tt(double t, int K) {
    if (t < 0) throw std::invalid_argument("expand_phi_tt: t must be >= 0");
    FormalSeries E = cayley_exp_series(0.5 * t, K);
    std::vector<UPoly> p(K + 1, UPoly('u'));
    FormalSeries En(K);
    En.set_coeff(0, 1.0);
    for (int n = 1; n <= K; ++n) {
        En = En * E;
        for (int k = n; k <= K; ++k) p[k].set_coeff(n, En.coeff(k - n));
    }
    return {p.begin() + 1, p.end()};
}

std::vector<UPoly> expand_phi_st(double s, double t, int K) {
    // w(z) = z e^{a(1+z)/(1-z)}, a = (s-t)/2; invert, then expand
    // (1 - u z E_s(z))^{-1} - 1 in powers of w.
    FormalSeries w = cayley_exp_series(0.5 * (s - t), K).shifted(1);
    FormalSeries zofw = w.revert();
    FormalSeries B = cayley_exp_series(0.5 * s, K).shifted(1).compose(zofw); // (z E_s)(z(w))
    std::vector<UPoly> p(K + 1, UPoly('u'));
    FormalSeries Bn(K);
    Bn.set_coeff(0, 1.0);
    for (int n = 1; n <= K; ++n) {
        Bn = Bn * B;
        for (int k = n; k <= K; ++k) p[k].set_coeff(n, Bn.coeff(k));
    }
    return {p.begin() + 1, p.end()};
}

FormalSeries rho_series(double s, int K) {
    FormalSeries r(K);
    for (int k = 1; k <= K; ++k) r.set_coeff(k, biane_moment(k).eval_at(s));
    return r;
}

FormalSeries psi_series(double s, double t, int K) {
    auto p = expand_phi_st(s, t, K);
    std::vector<double> nu(K + 1, 1.0);
    for (int j = 1; j <= K; ++j) nu[j] = biane_moment(j).eval_at(s);
    FormalSeries out(K);
    for (int k = 1; k <= K; ++k) {
        ComplexF acc(0.0, 0.0);
        for (int j = 0; j <= p[k - 1].degree(); ++j) acc += p[k - 1].coeff(j) * nu[j];
        out.set_coeff(k, acc);
    }
    return out;
}

FormalSeries pde_residual(PdeKind which, double s, double t, int K) {
    const double h = kFdStep;
    FormalSeries res(K - 1);
    switch (which) {
    case PdeKind::Rho: {
        // d rho/ds + s rho d rho/dz
        FormalSeries rho = rho_series(s, K);
        FormalSeries drho = (rho_series(s + h, K) - rho_series(s - h, K)).scaled(1.0 / (2 * h));
        FormalSeries full = drho + (rho * rho.derivative()).scaled(s);
        for (int i = 0; i <= K - 1; ++i) res.set_coeff(i, full.coeff(i));
        return res;
    }
    case PdeKind::Psi: {
        // d psi/dt - z psi d psi/dz
        FormalSeries psi = psi_series(s, t, K);
        FormalSeries dpsi = (psi_series(s, t + h, K) - psi_series(s, t - h, K)).scaled(1.0 / (2 * h));
        FormalSeries full = dpsi - transport_term(psi, psi);
        for (int i = 0; i <= K - 1; ++i) res.set_coeff(i, full.coeff(i));
        return res;
    }
    case PdeKind::Phi: {
        // d phi/dt - z psi d phi/dz, per u-power; report max |coeff| per z-order.
        FormalSeries psi = psi_series(s, t, K);
        auto phi0 = expand_phi_st(s, t, K);
        auto phip = expand_phi_st(s, t + h, K);
        auto phim = expand_phi_st(s, t - h, K);
        int max_u = K;
        std::vector<UPoly> resid(K + 1, UPoly('u'));
        for (int j = 0; j <= max_u; ++j) {
            // series in z of the u^j coefficient
            FormalSeries fj(K), dfj(K);
            for (int k = 1; k <= K; ++k) {
                fj.set_coeff(k, phi0[k - 1].coeff(j));
                dfj.set_coeff(k, (phip[k - 1].coeff(j) - phim[k - 1].coeff(j)) / (2 * h));
            }
            FormalSeries full = dfj - transport_term(psi, fj);
            for (int k = 0; k <= K; ++k) resid[k].set_coeff(j, full.coeff(k));
        }
        for (int k = 0; k <= K - 1; ++k) res.set_coeff(k, upoly_max_abs(resid[k]));
        return res;
    }
    }
    throw std::logic_error("pde_residual: unknown kind");
}

double phi_initial_residual(double s, int K) {
    auto p = expand_phi_st(s, 0.0, K);
    double m = 0.0;
    for (int k = 1; k <= K; ++k)
        for (int j = 0; j <= std::max(p[k - 1].degree(), k); ++j) {
            ComplexF expect = (j == k) ? ComplexF(1.0, 0.0) : ComplexF(0.0, 0.0);
            m = std::max(m, std::abs(p[k - 1].coeff(j) - expect));
        }
    return m;
}

} // namespace tracelab
