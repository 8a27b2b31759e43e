#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "tracelab/grading.hpp"
#include "tracelab/trace_poly.hpp"

namespace tracelab {

// The intertwining operators on C[u, v]. Everything here acts term by term:
// the action on a monomial is closed-form, so no differentiation engine is
// needed and every result is exact in the coefficient ring.
//
//   D(u^k) = -k u^k - 2 sum_{m=1}^{k-1} m u^m v_{k-m}
//   D(v_k) = -k v_k - 2 sum_{m=1}^{k-1} m v_m v_{k-m}
// with D a derivation across scalar factors.  L merges pairs of factors:
// two traces v_a, v_b into v_{a+b} (weight 2ab), or u^k with v_l into
// u^{k+l} (weight 2kl).  The finite-N operator is D_N = D - L/N^2.

enum class OpTag { D, L, DN, DTilde, T };

namespace detail {

// D applied to the lone factor u^k, as a polynomial.
template <class R>
TracePolynomial<R> d_of_u_power(int k) {
    TracePolynomial<R> r;
    if (k == 0) return r;
    r.add_term(TraceMonomial::u(k), ring<R>::from_rational(Rational(-k)));
    for (int m = 1; m < k; ++m)
        r.add_term(TraceMonomial::u(m).times(TraceMonomial::v(k - m)),
                   ring<R>::from_rational(Rational(-2 * m)));
    return r;
}

template <class R>
TracePolynomial<R> d_of_v(int l) {
    TracePolynomial<R> r;
    r.add_term(TraceMonomial::v(l), ring<R>::from_rational(Rational(-l)));
    for (int m = 1; m < l; ++m)
        r.add_term(TraceMonomial::v(m).times(TraceMonomial::v(l - m)),
                   ring<R>::from_rational(Rational(-2 * m)));
    return r;
}

template <class R>
TracePolynomial<R> apply_D_monomial(const TraceMonomial& mono) {
    TracePolynomial<R> out;
    // u^k factor.
    if (mono.u_power > 0) {
        TraceMonomial rest = mono;
        rest.u_power = 0;
        out += d_of_u_power<R>(mono.u_power) * TracePolynomial<R>::monomial(rest);
    }
    // Each trace factor, with multiplicity.
    for (auto& [l, mult] : mono.trace_factors) {
        TraceMonomial rest = mono;
        if (--rest.trace_factors[l] == 0) rest.trace_factors.erase(l);
        out += (d_of_v<R>(l) * TracePolynomial<R>::monomial(rest)).scaled(Rational(mult));
    }
    return out;
}

template <class R>
TracePolynomial<R> apply_L_monomial(const TraceMonomial& mono) {
    TracePolynomial<R> out;
    const auto& tf = mono.trace_factors;
    // Merge two trace factors v_a, v_b -> v_{a+b}.
    for (auto ia = tf.begin(); ia != tf.end(); ++ia) {
        // Same power, distinct instances: C(m,2) pairs.
        if (ia->second >= 2) {
            TraceMonomial m2 = mono;
            m2.trace_factors[ia->first] -= 2;
            if (m2.trace_factors[ia->first] == 0) m2.trace_factors.erase(ia->first);
            m2.trace_factors[2 * ia->first]++;
            long pairs = static_cast<long>(ia->second) * (ia->second - 1) / 2;
            out.add_term(m2, ring<R>::from_rational(
                                 Rational(2) * Rational(ia->first) * Rational(ia->first) * Rational(pairs)));
        }
        for (auto ib = std::next(ia); ib != tf.end(); ++ib) {
            TraceMonomial m2 = mono;
            m2.trace_factors[ia->first]--;
            if (m2.trace_factors[ia->first] == 0) m2.trace_factors.erase(ia->first);
            m2.trace_factors[ib->first]--;
            if (m2.trace_factors[ib->first] == 0) m2.trace_factors.erase(ib->first);
            m2.trace_factors[ia->first + ib->first]++;
            long pairs = static_cast<long>(ia->second) * ib->second;
            out.add_term(m2, ring<R>::from_rational(Rational(2) * Rational(ia->first) *
                                                    Rational(ib->first) * Rational(pairs)));
        }
    }
    // Merge u^k with a trace factor v_l -> u^{k+l}.
    if (mono.u_power > 0) {
        for (auto& [l, mult] : tf) {
            TraceMonomial m2 = mono;
            if (--m2.trace_factors[l] == 0) m2.trace_factors.erase(l);
            m2.u_power += l;
            out.add_term(m2, ring<R>::from_rational(Rational(2) * Rational(mono.u_power) *
                                                    Rational(l) * Rational(mult)));
        }
    }
    return out;
}

} // namespace detail

template <class R>
TracePolynomial<R> apply_D(const TracePolynomial<R>& p) {
    TracePolynomial<R> out;
    for (auto& [m, c] : p.terms()) out += detail::apply_D_monomial<R>(m).scaled(c);
    return out;
}

template <class R>
TracePolynomial<R> apply_L(const TracePolynomial<R>& p) {
    TracePolynomial<R> out;
    for (auto& [m, c] : p.terms()) out += detail::apply_L_monomial<R>(m).scaled(c);
    return out;
}

template <class R>
TracePolynomial<R> apply_DN(const TracePolynomial<R>& p, int N) {
    if (N <= 0) throw std::invalid_argument("apply_DN: N must be positive");
    return apply_D(p) + apply_L(p).scaled(Rational(-1, static_cast<long>(N) * N));
}

// Grading operator: multiplies each monomial by its trace degree.
template <class R>
TracePolynomial<R> apply_T(const TracePolynomial<R>& p) {
    TracePolynomial<R> out;
    for (auto& [m, c] : p.terms())
        out.add_term(m, c * ring<R>::from_rational(Rational(trace_degree(m))));
    return out;
}

// DTilde = D + T: drops the diagonal -deg term, raises the trace-factor count
// by one on every monomial, hence nilpotent on each graded block.
template <class R>
TracePolynomial<R> apply_D_tilde(const TracePolynomial<R>& p) {
    return apply_D(p) + apply_T(p);
}

template <class R>
TracePolynomial<R> apply_operator(OpTag tag, const TracePolynomial<R>& p,
                                  std::optional<int> N = std::nullopt) {
    switch (tag) {
        case OpTag::D: return apply_D(p);
        case OpTag::L: return apply_L(p);
        case OpTag::DN:
            if (!N) throw std::invalid_argument("operator D_N requires N");
            return apply_DN(p, *N);
        case OpTag::DTilde: return apply_D_tilde(p);
        case OpTag::T: return apply_T(p);
    }
    throw std::logic_error("unreachable");
}

// Coordinates of a homogeneous polynomial in a graded basis.
template <class R>
std::vector<R> coordinates(const TracePolynomial<R>& p, const std::vector<TraceMonomial>& basis) {
    std::vector<R> out;
    out.reserve(basis.size());
    size_t found = 0;
    for (auto& m : basis) {
        R c = p.coeff(m);
        if (!ring<R>::is_zero(c)) ++found;
        out.push_back(std::move(c));
    }
    if (found != p.size())
        throw std::logic_error("coordinates: polynomial has terms outside the basis grade");
    return out;
}

// An operator restricted to one graded block, materialized as a dense matrix.
// Column j holds the coordinates of op(basis[j]).
template <class R>
struct GradedOperatorMatrix {
    OpTag tag;
    int grade = 0;
    std::optional<int> N;
    std::vector<TraceMonomial> basis;
    std::vector<std::vector<R>> entries; // entries[row][col]

    size_t dim() const { return basis.size(); }

    std::vector<R> apply(const std::vector<R>& coords) const {
        std::vector<R> out(dim(), ring<R>::zero());
        for (size_t i = 0; i < dim(); ++i)
            for (size_t j = 0; j < dim(); ++j) out[i] = out[i] + entries[i][j] * coords[j];
        return out;
    }
};

template <class R>
GradedOperatorMatrix<R> operator_matrix(OpTag tag, int grade, std::optional<int> N = std::nullopt) {
    GradedOperatorMatrix<R> M;
    M.tag = tag;
    M.grade = grade;
    M.N = N;
    M.basis = grade_basis(grade);
    size_t n = M.basis.size();
    M.entries.assign(n, std::vector<R>(n, ring<R>::zero()));
    for (size_t j = 0; j < n; ++j) {
        auto img = apply_operator(tag, TracePolynomial<R>::monomial(M.basis[j]), N);
        auto col = coordinates(img, M.basis); // throws if a term escapes the grade
        for (size_t i = 0; i < n; ++i) M.entries[i][j] = std::move(col[i]);
    }
    return M;
}

} // namespace tracelab
