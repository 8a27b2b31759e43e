#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "tracelab/single_var_poly.hpp"
#include "tracelab/trace_poly.hpp"

namespace tracelab {

using Matrix = Eigen::MatrixXcd;

// Normalized trace tr(A) = (1/N) sum A_jj.
inline ComplexF ntrace(const Matrix& A) { return A.trace() / static_cast<double>(A.rows()); }

// Substitute u = U, v_j = tr(U^j). A scalar polynomial evaluates to (scalar)*I.
inline Matrix evaluate_matrix(const ComplexPoly& p, const Matrix& U) {
    if (U.rows() != U.cols()) throw std::invalid_argument("evaluate_matrix: matrix not square");
    const int n = static_cast<int>(U.rows());
    int max_u = 0, max_v = 0;
    for (auto& [m, c] : p.terms()) {
        max_u = std::max(max_u, m.u_power);
        if (!m.trace_factors.empty()) max_v = std::max(max_v, m.trace_factors.rbegin()->first);
    }
    // Powers U^0..U^max(max_u, max_v), then traces.
    int max_pow = std::max(max_u, max_v);
    std::vector<Matrix> pw;
    pw.reserve(max_pow + 1);
    pw.push_back(Matrix::Identity(n, n));
    for (int i = 1; i <= max_pow; ++i) pw.push_back(pw.back() * U);
    std::vector<ComplexF> tr(max_v + 1, ComplexF(1.0, 0.0));
    for (int j = 1; j <= max_v; ++j) tr[j] = ntrace(pw[j]);

    Matrix out = Matrix::Zero(n, n);
    for (auto& [m, c] : p.terms()) {
        ComplexF scalar = c;
        for (auto& [l, mult] : m.trace_factors)
            for (int i = 0; i < mult; ++i) scalar *= tr[l];
        out += scalar * pw[m.u_power];
    }
    return out;
}

// Substitute v_j := values[j-1], leaving u free. Missing values throw.
template <class R>
SingleVarPoly<R> trace_eval(const TracePolynomial<R>& p, const std::vector<R>& values) {
    SingleVarPoly<R> out('u');
    for (auto& [m, c] : p.terms()) {
        R coeff = c;
        for (auto& [l, mult] : m.trace_factors) {
            if (l > static_cast<int>(values.size()))
                throw std::invalid_argument("trace_eval: no substitution value for v" + std::to_string(l));
            for (int i = 0; i < mult; ++i) coeff = coeff * values[l - 1];
        }
        out.set_coeff(m.u_power, out.coeff(m.u_power) + coeff);
    }
    return out;
}

// The map pi_0: evaluate every v_j to 1.
template <class R>
SingleVarPoly<R> pi0(const TracePolynomial<R>& p) {
    int max_v = 0;
    for (auto& [m, c] : p.terms())
        if (!m.trace_factors.empty()) max_v = std::max(max_v, m.trace_factors.rbegin()->first);
    return trace_eval(p, std::vector<R>(max_v, ring<R>::one()));
}

} // namespace tracelab
