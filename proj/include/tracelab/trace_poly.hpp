#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <type_traits>

#include "tracelab/monomial.hpp"
#include "tracelab/ring.hpp"

namespace tracelab {

// Finitely supported map TraceMonomial -> nonzero coefficient in R.
// All operations re-canonicalize; the zero polynomial has an empty term map.
template <class R>
class TracePolynomial {
public:
    using Terms = std::map<TraceMonomial, R, MonomialOrder>;

    TracePolynomial() = default;

    static TracePolynomial monomial(TraceMonomial m, R coeff = ring<R>::one()) {
        TracePolynomial p;
        p.add_term(std::move(m), std::move(coeff));
        return p;
    }
    static TracePolynomial constant(R c) { return monomial(TraceMonomial::one(), std::move(c)); }
    static TracePolynomial u(int k) { return monomial(TraceMonomial::u(k)); }
    static TracePolynomial v(int l) { return monomial(TraceMonomial::v(l)); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    // True when independent of u (a "scalar" trace polynomial).
    bool is_scalar() const {
        for (auto& [m, c] : terms_)
            if (m.u_power != 0) return false;
        return true;
    }

    R coeff(const TraceMonomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? ring<R>::zero() : it->second;
    }

    void add_term(const TraceMonomial& m, const R& c) {
        if (ring<R>::is_zero(c)) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second = it->second + c;
            if (ring<R>::is_zero(it->second)) terms_.erase(it);
        }
    }

    TracePolynomial operator+(const TracePolynomial& o) const {
        TracePolynomial r = *this;
        for (auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }
    TracePolynomial operator-(const TracePolynomial& o) const {
        TracePolynomial r = *this;
        for (auto& [m, c] : o.terms_) r.add_term(m, ring<R>::zero() - c);
        return r;
    }
    TracePolynomial operator-() const {
        TracePolynomial r;
        for (auto& [m, c] : terms_) r.terms_.emplace(m, ring<R>::zero() - c);
        return r;
    }
    TracePolynomial operator*(const TracePolynomial& o) const {
        TracePolynomial r;
        for (auto& [ma, ca] : terms_)
            for (auto& [mb, cb] : o.terms_) r.add_term(ma.times(mb), ca * cb);
        return r;
    }
    TracePolynomial& operator+=(const TracePolynomial& o) {
        for (auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }

    TracePolynomial scaled(const R& s) const {
        TracePolynomial r;
        if (ring<R>::is_zero(s)) return r;
        for (auto& [m, c] : terms_) r.add_term(m, c * s);
        return r;
    }
    TracePolynomial scaled(const Rational& q) const
        requires(!std::is_same_v<R, Rational>)
    {
        return scaled(ring<R>::from_rational(q));
    }

    bool operator==(const TracePolynomial& o) const { return terms_ == o.terms_; }
    bool operator!=(const TracePolynomial& o) const { return !(*this == o); }

    // Split into homogeneous components keyed by trace degree.
    std::map<int, TracePolynomial> grade_components() const {
        std::map<int, TracePolynomial> out;
        for (auto& [m, c] : terms_) out[trace_degree(m)].add_term(m, c);
        return out;
    }

    int max_trace_degree() const {
        int d = 0;
        for (auto& [m, c] : terms_) d = std::max(d, trace_degree(m));
        return d;
    }

    template <class R2, class Fn>
    TracePolynomial<R2> convert(Fn&& fn) const {
        TracePolynomial<R2> r;
        for (auto& [m, c] : terms_) r.add_term(m, fn(c));
        return r;
    }

    template <class CoeffStr>
    std::string str(CoeffStr&& cs) const {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto& [m, c] : terms_) {
            if (!out.empty()) out += " + ";
            out += "(" + cs(c) + ")*" + monomial_to_string(m);
        }
        return out;
    }

private:
    Terms terms_;
};

using RationalPoly = TracePolynomial<Rational>;
using TPolyPoly = TracePolynomial<TPoly>;
using ComplexPoly = TracePolynomial<ComplexF>;

inline ComplexPoly to_complex_poly(const RationalPoly& p) {
    return p.convert<ComplexF>([](const Rational& q) { return ComplexF(to_double(q), 0.0); });
}

// The grade-2 polynomial u^2 - 2 u v1 + 2 v1^2 - v2, identically zero as a
// function on U(2) by Cayley-Hamilton but nonzero on U(N) for N > 2.
template <class R = Rational>
TracePolynomial<R> cayley_hamilton_u2() {
    TracePolynomial<R> p;
    p.add_term(TraceMonomial::u(2), ring<R>::from_rational(Rational(1)));
    p.add_term(TraceMonomial::u(1).times(TraceMonomial::v(1)), ring<R>::from_rational(Rational(-2)));
    p.add_term(TraceMonomial::v(1, 2), ring<R>::from_rational(Rational(2)));
    p.add_term(TraceMonomial::v(2), ring<R>::from_rational(Rational(-1)));
    return p;
}

} // namespace tracelab
