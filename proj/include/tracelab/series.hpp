#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace tracelab {

// Truncated formal power series c0 + c1 z + ... + cK z^K over complex doubles.
// All operations are exact modulo z^{K+1}; both operands of a binary op must
// share the truncation order.
class FormalSeries {
public:
    using C = std::complex<double>;

    FormalSeries() = default;
    explicit FormalSeries(int order) : c_(order + 1, C(0.0)) {}
    FormalSeries(int order, std::vector<C> coeffs) : c_(std::move(coeffs)) {
        c_.resize(order + 1, C(0.0));
    }

    static FormalSeries identity(int order) { // the series z
        FormalSeries s(order);
        if (order >= 1) s.c_[1] = 1.0;
        return s;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    C coeff(int i) const { return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : C(0.0); }
    void set_coeff(int i, C v) { c_.at(i) = v; }
    const std::vector<C>& coeffs() const { return c_; }

    FormalSeries operator+(const FormalSeries& o) const {
        FormalSeries r = *this;
        for (int i = 0; i <= order(); ++i) r.c_[i] += o.coeff(i);
        return r;
    }
    FormalSeries operator-(const FormalSeries& o) const {
        FormalSeries r = *this;
        for (int i = 0; i <= order(); ++i) r.c_[i] -= o.coeff(i);
        return r;
    }
    FormalSeries operator*(const FormalSeries& o) const {
        FormalSeries r(order());
        for (int i = 0; i <= order(); ++i) {
            if (c_[i] == C(0.0)) continue;
            for (int j = 0; i + j <= order(); ++j) r.c_[i + j] += c_[i] * o.coeff(j);
        }
        return r;
    }
    FormalSeries scaled(C s) const {
        FormalSeries r = *this;
        for (auto& x : r.c_) x *= s;
        return r;
    }

    // Multiply by z^n (shift up), truncating.
    FormalSeries shifted(int n) const {
        FormalSeries r(order());
        for (int i = 0; i + n <= order(); ++i) r.c_[i + n] = c_[i];
        return r;
    }

    FormalSeries derivative() const { // d/dz, order drops by one; kept at same length
        FormalSeries r(order());
        for (int i = 1; i <= order(); ++i) r.c_[i - 1] = static_cast<double>(i) * c_[i];
        return r;
    }

    // this(g(z)) for g with zero constant term.
    FormalSeries compose(const FormalSeries& g) const {
        if (g.coeff(0) != C(0.0))
            throw std::invalid_argument("compose: inner series must have zero constant term");
        FormalSeries acc(order());
        for (int i = order(); i >= 0; --i) {
            acc = acc * g;
            acc.c_[0] += c_[i];
        }
        return acc;
    }

    // Compositional inverse: f(revert(f)) = z + O(z^{K+1}).
    // Requires f(0) = 0, f'(0) != 0. Fixed-point iteration gains one order per pass.
    FormalSeries revert() const {
        if (coeff(0) != C(0.0)) throw std::invalid_argument("revert: nonzero constant term");
        C c1 = coeff(1);
        if (c1 == C(0.0)) throw std::invalid_argument("revert: zero linear coefficient");
        int K = order();
        FormalSeries g = identity(K).scaled(1.0 / c1);
        FormalSeries tail = *this; // f minus linear part
        tail.c_[1] = 0.0;
        for (int pass = 0; pass < K; ++pass) {
            FormalSeries corr = tail.compose(g);
            FormalSeries next = (identity(K) - corr).scaled(1.0 / c1);
            g = next;
        }
        return g;
    }

    // exp of the series; handles a nonzero constant term via exp(c0)*exp(rest).
    FormalSeries exp() const {
        int K = order();
        FormalSeries rest = *this;
        C c0 = rest.c_[0];
        rest.c_[0] = 0.0;
        FormalSeries acc(K);
        acc.c_[0] = 1.0;
        FormalSeries pw(K);
        pw.c_[0] = 1.0;
        double fact = 1.0;
        for (int n = 1; n <= K; ++n) {
            pw = pw * rest;
            fact *= n;
            for (int i = 0; i <= K; ++i) acc.c_[i] += pw.c_[i] / fact;
        }
        return acc.scaled(std::exp(c0));
    }

private:
    std::vector<C> c_;
};

} // namespace tracelab
