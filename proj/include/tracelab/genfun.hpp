#pragma once

#include <vector>

#include "tracelab/series.hpp"
#include "tracelab/single_var_poly.hpp"
#include "tracelab/trace_poly.hpp"

namespace tracelab {

using UPoly = SingleVarPoly<ComplexF>; // polynomial in u, complex coefficients

// e^{a(1+z)/(1-z)} truncated at order K (constant term e^a).
FormalSeries cayley_exp_series(double a, int K);

// Coefficients p_1..p_k of phi^{t,u}(t,z) = (1 - u z E(z))^{-1} - 1,
// E(z) = e^{(t/2)(1+z)/(1-z)}: p_k(u) = sum_n ([z^{k-n}] E^n) u^n.
std::vector<UPoly> expand_phi_tt(double t, int K);

// Two-parameter coefficients p_1..p_K via series reversion of
// w(z) = z e^{((s-t)/2)(1+z)/(1-z)}.
std::vector<UPoly> expand_phi_st(double s, double t, int K);

// rho(s,z) = sum_k nu_k(s) z^k through order K.
FormalSeries rho_series(double s, int K);

// psi^s(t,z) = sum_k (sum_j c_{k,j} nu_j(s)) z^k with p_k = sum_j c_{k,j} u^j.
FormalSeries psi_series(double s, double t, int K);

enum class PdeKind { Rho, Psi, Phi };

// Residual of the stated transport PDE through order K-1, time derivative by
// centered finite difference (step 1e-4). Diagnostic only: reports, never
// asserts. For Phi each z-order's u-polynomial residual is collapsed to its
// largest coefficient magnitude.
FormalSeries pde_residual(PdeKind which, double s, double t, int K);

// Max coefficient deviation of p_k^{s,0} from u^k, k <= K (initial condition
// phi^{s,u}(0,z) = uz/(1-uz)).
double phi_initial_residual(double s, int K);

} // namespace tracelab
