#pragma once

#include <complex>

#include "tracelab/rational.hpp"
#include "tracelab/tpoly.hpp"

namespace tracelab {

// Coefficient-ring glue. The symbolic paths run over Rational or TPoly and stay
// exact; ComplexFloat is the only lossy instance and is entered explicitly.
template <class R>
struct ring;

template <>
struct ring<Rational> {
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static Rational from_rational(const Rational& q) { return q; }
    static bool is_zero(const Rational& x) { return x == 0; }
};

template <>
struct ring<TPoly> {
    static TPoly zero() { return TPoly(); }
    static TPoly one() { return TPoly(Rational(1)); }
    static TPoly from_rational(const Rational& q) { return TPoly(q); }
    static bool is_zero(const TPoly& x) { return x.is_zero(); }
};

template <>
struct ring<std::complex<double>> {
    static std::complex<double> zero() { return {0.0, 0.0}; }
    static std::complex<double> one() { return {1.0, 0.0}; }
    static std::complex<double> from_rational(const Rational& q) { return {to_double(q), 0.0}; }
    static bool is_zero(const std::complex<double>& x) { return x == std::complex<double>(0.0, 0.0); }
};

using ComplexF = std::complex<double>;

} // namespace tracelab
