#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tracelab/evaluate.hpp"

namespace tracelab {

enum class Group { Unitary, GeneralLinear };

// Orthonormal basis for the scaled inner product <X,Y> = N Re Trace(X* Y).
// u(N): i E_jj/sqrt(N); (E_jk - E_kj)/sqrt(2N); i(E_jk + E_kj)/sqrt(2N).
// gl(N;C): the u(N) basis together with i times each element.
std::vector<Matrix> onb(Group group, int N);

// Residuals of the four summation identities over the u(N) basis:
//   || sum X_j^2 + I ||, || sum X_j A X_j + tr(A) I ||,
//   || sum tr(X_j A) X_j + A/N^2 ||, | sum tr(X_j A) tr(X_j B) + tr(AB)/N^2 |.
std::array<double, 4> verify_magic(int N, const Matrix& A, const Matrix& B);

// Finite-difference Laplacian sum_j [p(U e^{hX_j}) - 2 p(U) + p(U e^{-hX_j})]/h^2
// over the u(N) basis, with exact matrix exponentials of h X_j.
Matrix laplacian_fd(const ComplexPoly& p, const Matrix& U, double h);

struct BrownianConfig {
    Group group = Group::Unitary;
    int N = 2;
    double t = 1.0;
    double h = 0.005;
    int paths = 1;
    std::uint64_t seed = 0;

    int steps() const;
};

struct SampleStats {
    std::string name;
    int n = 0;
    ComplexF mean{0.0, 0.0};
    double variance = 0.0;
    double stderror = 0.0; // sqrt(variance / n)
};

struct Observable {
    std::string name;
    std::function<ComplexF(const Matrix&)> eval;
};

// Simulates cfg.paths Brownian paths (U_{m+1} = U_m exp(sqrt(h) xi_m), weak
// order 1) and evaluates all observables on each endpoint. Per-path RNG is
// derived from (seed, path index); reduction runs in fixed index order, so the
// result is bit-identical regardless of worker count.
std::vector<SampleStats> mc_run(const BrownianConfig& cfg, const std::vector<Observable>& obs);

// Endpoint of path `index` under cfg; what mc_run evaluates observables on.
Matrix bm_endpoint(const BrownianConfig& cfg, int index);

// Materialized endpoints for all paths (small path counts; tests).
std::vector<Matrix> sample_bm(const BrownianConfig& cfg);

// Sample mean/variance of tr(p(U)) over endpoints (normalized trace; a scalar
// trace polynomial evaluates to its scalar value).
SampleStats mc_estimate(const BrownianConfig& cfg, const ComplexPoly& p);

// MC estimate of int tr((f-g)(Z)* (f-g)(Z)) dmu_t^N; cfg.group must be gl.
SampleStats mc_l2_distance(const ComplexPoly& f, const ComplexPoly& g, const BrownianConfig& cfg);

// A not-Haar random unitary: endpoint of one Brownian path at t = 4.
Matrix random_unitary(int N, std::uint64_t seed);

} // namespace tracelab
