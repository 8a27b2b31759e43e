#pragma once

#include <string>
#include <vector>

#include "tracelab/ring.hpp"

namespace tracelab {

// Dense single-variable polynomial c0 + c1 x + ... + cd x^d over R.
// The variable tag is cosmetic ('u' on the group side, 'z' on the complex side).
template <class R>
struct SingleVarPoly {
    char var = 'u';
    std::vector<R> c;

    SingleVarPoly() = default;
    explicit SingleVarPoly(char v) : var(v) {}
    SingleVarPoly(char v, std::vector<R> coeffs) : var(v), c(std::move(coeffs)) { trim(); }

    static SingleVarPoly power(char v, int k) {
        SingleVarPoly p(v);
        p.c.assign(k + 1, ring<R>::zero());
        p.c[k] = ring<R>::one();
        return p;
    }

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }

    R coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c.size())) return ring<R>::zero();
        return c[i];
    }
    void set_coeff(int i, R val) {
        if (i >= static_cast<int>(c.size())) c.resize(i + 1, ring<R>::zero());
        c[i] = std::move(val);
        trim();
    }

    SingleVarPoly operator+(const SingleVarPoly& o) const {
        SingleVarPoly r(var);
        r.c.assign(std::max(c.size(), o.c.size()), ring<R>::zero());
        for (size_t i = 0; i < c.size(); ++i) r.c[i] = r.c[i] + c[i];
        for (size_t i = 0; i < o.c.size(); ++i) r.c[i] = r.c[i] + o.c[i];
        r.trim();
        return r;
    }
    SingleVarPoly operator-(const SingleVarPoly& o) const {
        SingleVarPoly r(var);
        r.c.assign(std::max(c.size(), o.c.size()), ring<R>::zero());
        for (size_t i = 0; i < c.size(); ++i) r.c[i] = r.c[i] + c[i];
        for (size_t i = 0; i < o.c.size(); ++i) r.c[i] = r.c[i] - o.c[i];
        r.trim();
        return r;
    }
    SingleVarPoly operator*(const SingleVarPoly& o) const {
        SingleVarPoly r(var);
        if (c.empty() || o.c.empty()) return r;
        r.c.assign(c.size() + o.c.size() - 1, ring<R>::zero());
        for (size_t i = 0; i < c.size(); ++i)
            for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] = r.c[i + j] + c[i] * o.c[j];
        r.trim();
        return r;
    }
    SingleVarPoly scaled(const R& s) const {
        SingleVarPoly r(var);
        if (ring<R>::is_zero(s)) return r;
        r.c = c;
        for (auto& x : r.c) x = x * s;
        r.trim();
        return r;
    }

    template <class X>
    X eval(const X& x) const {
        X acc{};
        for (size_t i = c.size(); i-- > 0;) acc = acc * x + X(c[i]);
        return acc;
    }

    bool operator==(const SingleVarPoly& o) const { return c == o.c; }

    void trim() {
        while (!c.empty() && ring<R>::is_zero(c.back())) c.pop_back();
    }
};

} // namespace tracelab
