#pragma once

#include <map>
#include <mutex>
#include <vector>

#include "tracelab/operators.hpp"
#include "tracelab/single_var_poly.hpp"
#include "tracelab/trace_poly.hpp"

namespace tracelab {

// Exact value of the limit heat semigroup: sum_k e^{-k t/2} * body_k(t, u, v),
// one component per trace degree, every term of body_k of degree exactly k.
struct SemigroupValue {
    struct Component {
        int grade = 0;
        TPolyPoly body;
    };
    std::vector<Component> components; // grades distinct, sorted ascending

    // Setting t = 0 must give back the input polynomial.
    RationalPoly at_zero() const;
};

// Memo table for e^{t DTilde/2}(u^k) and e^{t DTilde/2}(v_k).
// Read-mostly; values are immutable once inserted.
class HeatCache {
public:
    const TPolyPoly& Eu(int k);
    const TPolyPoly& Ev(int k);

    std::map<int, TPolyPoly> snapshot_u() const;
    std::map<int, TPolyPoly> snapshot_v() const;
    void seed(char kind, int k, TPolyPoly value);

private:
    const TPolyPoly& get(char kind, int k);
    std::map<int, TPolyPoly> u_, v_;
    mutable std::mutex mu_;
};

// The process-wide memo used by the high-level entry points below.
HeatCache& heat_cache();

// e^{t D/2} p, exact and symbolic in t, via the grade recursion extended to
// general monomials by multiplicativity across scalar factors.
SemigroupValue heat_limit(const RationalPoly& p, HeatCache& cache = heat_cache());

// e^{t DTilde/2} restricted to grade k as a matrix over TPoly: the finite sum
// sum_{n<=k} (t/2)^n DTilde^n / n!. Throws if DTilde^{k+1} != 0 on the block.
GradedOperatorMatrix<TPoly> nilpotent_exp_oracle(int k);

// Finite-N heat operator e^{t D_N/2} p by per-grade matrix exponentials.
// Grades above kMaxFiniteGrade (block dimension ~270) are refused.
inline constexpr int kMaxFiniteGrade = 12;
ComplexPoly heat_finite_N(const ComplexPoly& p, double t, int N);

// q_t with its exponential prefactors kept symbolic:
// sum over components k of e^{-k t/2} * poly_k(z), poly_k over TPoly.
struct HallPolynomial {
    struct Component {
        int grade = 0;
        SingleVarPoly<TPoly> poly; // in z
    };
    std::vector<Component> components;

    SingleVarPoly<ComplexF> eval_at(double t) const;
};

HallPolynomial free_hall_transform(const SingleVarPoly<Rational>& p, HeatCache& cache = heat_cache());

// Inverse transform, exact: coefficient of u^k is e^{+k t/2} * body_k(t).
struct InverseHallPolynomial {
    struct Term {
        int u_power = 0;
        TPoly body;
    };
    std::vector<Term> terms;

    SingleVarPoly<ComplexF> eval_at(double t) const;
};

InverseHallPolynomial inverse_free_hall(const SingleVarPoly<Rational>& q, HeatCache& cache = heat_cache());

// k-th moment of Biane's measure: nu_k(t) = e^{-k t/2} * body(t).
struct MomentEntry {
    int k = 0;
    TPoly body;

    double eval_at(double t) const;
};

MomentEntry biane_moment(int k, HeatCache& cache = heat_cache());

// E_{rho_t^N}[p] for scalar p, via the finite-N heat operator at the identity.
ComplexF expect_finite(const ComplexPoly& p, double t, int N);

// Var(tr U^k) = E[v_k^2] - E[v_k]^2 under rho_t^N (holomorphic-moment variance).
double variance_finite(int k, double t, int N);

} // namespace tracelab
