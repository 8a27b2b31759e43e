#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "tracelab/rational.hpp"

namespace tracelab {

// Dense univariate polynomial in t with exact rational coefficients.
// Supports the formal integral from 0, so d/dt (integral(p)) == p holds exactly.
class TPoly {
public:
    TPoly() = default;
    explicit TPoly(Rational constant) {
        if (constant != 0) c_.push_back(std::move(constant));
    }
    explicit TPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static TPoly t() { return TPoly(std::vector<Rational>{Rational(0), Rational(1)}); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    Rational coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return Rational(0);
        return c_[i];
    }
    const std::vector<Rational>& coeffs() const { return c_; }

    TPoly operator+(const TPoly& o) const {
        std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
        for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
        for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
        return TPoly(std::move(r));
    }
    TPoly operator-(const TPoly& o) const {
        std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
        for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
        for (size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
        return TPoly(std::move(r));
    }
    TPoly operator-() const {
        std::vector<Rational> r(c_);
        for (auto& x : r) x = -x;
        return TPoly(std::move(r));
    }
    TPoly operator*(const TPoly& o) const {
        if (c_.empty() || o.c_.empty()) return TPoly();
        std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
        for (size_t i = 0; i < c_.size(); ++i)
            for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
        return TPoly(std::move(r));
    }
    TPoly& operator+=(const TPoly& o) { return *this = *this + o; }
    TPoly& operator-=(const TPoly& o) { return *this = *this - o; }
    TPoly& operator*=(const TPoly& o) { return *this = *this * o; }

    TPoly scaled(const Rational& s) const {
        if (s == 0) return TPoly();
        std::vector<Rational> r(c_);
        for (auto& x : r) x *= s;
        return TPoly(std::move(r));
    }

    // Formal integral from 0: t^i -> t^{i+1}/(i+1).
    TPoly integral() const {
        if (c_.empty()) return TPoly();
        std::vector<Rational> r(c_.size() + 1, Rational(0));
        for (size_t i = 0; i < c_.size(); ++i) r[i + 1] = c_[i] / Rational(i + 1);
        return TPoly(std::move(r));
    }

    TPoly derivative() const {
        if (c_.size() <= 1) return TPoly();
        std::vector<Rational> r(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rational(i);
        return TPoly(std::move(r));
    }

    double eval(double t) const {
        double acc = 0;
        for (size_t i = c_.size(); i-- > 0;) acc = acc * t + to_double(c_[i]);
        return acc;
    }
    Rational eval(const Rational& t) const {
        Rational acc = 0;
        for (size_t i = c_.size(); i-- > 0;) acc = acc * t + c_[i];
        return acc;
    }

    bool operator==(const TPoly& o) const { return c_ == o.c_; }
    bool operator!=(const TPoly& o) const { return c_ != o.c_; }

    std::string str() const {
        if (c_.empty()) return "0";
        std::string out;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            if (!out.empty()) out += " + ";
            out += rational_to_string(c_[i]);
            if (i == 1) out += "*t";
            else if (i > 1) out += "*t^" + std::to_string(i);
        }
        return out.empty() ? "0" : out;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

} // namespace tracelab
