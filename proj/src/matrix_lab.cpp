#include "tracelab/matrix_lab.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "tracelab/expm.hpp"

namespace tracelab {

namespace {

constexpr int kRenormEvery = 100; // QR re-orthonormalization cadence (unitary paths)

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// xoshiro256++ with a ziggurat normal sampler; fast enough that RNG is a minor
// fraction of the per-step cost even at N = 32.
struct Rng {
    std::uint64_t s[4];

    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& v : s) v = x = splitmix64(x);
    }

    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t next() {
        std::uint64_t r = rotl(s[0] + s[3], 23) + s[0];
        std::uint64_t t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = rotl(s[3], 45);
        return r;
    }

    double uniform() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

    double normal();
};

// Marsaglia-Tsang ziggurat tables, 128 layers, 51-bit mantissa scaling.
struct ZigguratTables {
    std::uint64_t kn[128];
    double wn[128], fn[128];

    ZigguratTables() {
        const double m = 2251799813685248.0; // 2^51
        const double vn = 9.91256303526217e-3;
        const double r = 3.442619855899;
        double dn = r, tn = r;
        double q = vn / std::exp(-0.5 * dn * dn);
        kn[0] = static_cast<std::uint64_t>((dn / q) * m);
        kn[1] = 0;
        wn[0] = q / m;
        wn[127] = dn / m;
        fn[0] = 1.0;
        fn[127] = std::exp(-0.5 * dn * dn);
        for (int i = 126; i >= 1; --i) {
            dn = std::sqrt(-2.0 * std::log(vn / dn + std::exp(-0.5 * dn * dn)));
            kn[i + 1] = static_cast<std::uint64_t>((dn / tn) * m);
            tn = dn;
            fn[i] = std::exp(-0.5 * dn * dn);
            wn[i] = dn / m;
        }
    }
};

const ZigguratTables g_zig; // namespace-scope: no per-call init guard on the hot path

double Rng::normal() {
    const auto& z = g_zig;
    const double r = 3.442619855899;
    for (;;) {
        std::uint64_t u = next();
        int idx = static_cast<int>(u & 127);
        std::int64_t hz = static_cast<std::int64_t>(u) >> 12; // signed, |hz| < 2^51
        std::uint64_t ahz = static_cast<std::uint64_t>(hz < 0 ? -hz : hz);
        if (ahz < z.kn[idx]) return static_cast<double>(hz) * z.wn[idx];
        if (idx == 0) { // tail
            double x, y;
            do {
                x = -std::log(uniform()) / r;
                y = -std::log(uniform());
            } while (y + y < x * x);
            return hz > 0 ? r + x : -(r + x);
        }
        double x = static_cast<double>(hz) * z.wn[idx];
        if (z.fn[idx] + uniform() * (z.fn[idx - 1] - z.fn[idx]) < std::exp(-0.5 * x * x))
            return x;
    }
}

// Fill A with sqrt(h) times a standard Gaussian element of the group's Lie
// algebra. u(N): diag i g/sqrt(N); (j,k)/(k,j) pair (a+ib), (-a+ib) over
// sqrt(2N). gl(N;C) = u(N) + i u(N) works out to iid (x+iy)/sqrt(N) entries.
void draw_increment(Group group, double sqrt_h, Matrix& A, Rng& rng) {
    const int N = static_cast<int>(A.rows());
    if (group == Group::Unitary) {
        const double cd = sqrt_h / std::sqrt(static_cast<double>(N));
        const double co = sqrt_h / std::sqrt(2.0 * N);
        for (int j = 0; j < N; ++j) A(j, j) = ComplexF(0.0, cd * rng.normal());
        for (int j = 0; j < N; ++j)
            for (int k = j + 1; k < N; ++k) {
                double a = rng.normal(), b = rng.normal();
                A(j, k) = ComplexF(co * a, co * b);
                A(k, j) = ComplexF(-co * a, co * b);
            }
    } else {
        const double c = sqrt_h / std::sqrt(static_cast<double>(N));
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k) A(j, k) = ComplexF(c * rng.normal(), c * rng.normal());
    }
}

void renormalize_unitary(Matrix& Z) {
    Eigen::HouseholderQR<Matrix> qr(Z);
    Matrix Q = qr.householderQ();
    Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phase ambiguity so Q R = Z with R_jj > 0 absorbed into Q.
    for (int j = 0; j < Q.cols(); ++j) {
        ComplexF d = R(j, j);
        double a = std::abs(d);
        if (a > 0) Q.col(j) *= d / a;
    }
    Z = Q;
}

struct PathWorkspace {
    Matrix Z, A, A2, inner, B, tmp;

    explicit PathWorkspace(int N)
        : Z(N, N), A(N, N), A2(N, N), inner(N, N), B(N, N), tmp(N, N) {}
};

// One path of U_{m+1} = U_m exp(sqrt(h) xi_m), the exponential by a 4th-order
// Taylor polynomial: per-step error O(h^{5/2}), below the scheme's O(h) weak
// bias at h = t/200 and far cheaper than a full expm.
void run_path(const BrownianConfig& cfg, std::uint64_t path_seed, PathWorkspace& w) {
    const int N = cfg.N;
    const int steps = cfg.steps();
    const double h = steps > 0 ? cfg.t / steps : 0.0;
    const double sqrt_h = std::sqrt(h);
    Rng rng(path_seed);
    w.Z.setIdentity();
    for (int m = 0; m < steps; ++m) {
        draw_increment(cfg.group, sqrt_h, w.A, rng);
        w.A2.noalias() = w.A * w.A;
        w.inner = w.A2 * (1.0 / 24.0);
        w.inner += w.A * (1.0 / 6.0);
        w.inner.diagonal().array() += 0.5;
        w.B.noalias() = w.A2 * w.inner;
        w.B += w.A;
        w.tmp.noalias() = w.Z * w.B;
        w.Z += w.tmp;
        if (cfg.group == Group::Unitary && (m + 1) % kRenormEvery == 0)
            renormalize_unitary(w.Z);
    }
    if (cfg.group == Group::Unitary && steps > 0) renormalize_unitary(w.Z);
}

std::uint64_t path_seed(const BrownianConfig& cfg, int index) {
    return splitmix64(cfg.seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(index + 1));
}

void validate(const BrownianConfig& cfg) {
    if (cfg.N < 1) throw std::invalid_argument("BrownianConfig: N must be >= 1");
    if (cfg.h <= 0) throw std::invalid_argument("BrownianConfig: h must be > 0");
    if (cfg.t < 0) throw std::invalid_argument("BrownianConfig: t must be >= 0");
    if (cfg.paths < 1) throw std::invalid_argument("BrownianConfig: paths must be >= 1");
}

} // namespace

int BrownianConfig::steps() const { return t > 0 ? static_cast<int>(std::ceil(t / h)) : 0; }

std::vector<Matrix> onb(Group group, int N) {
    if (N < 1) throw std::invalid_argument("onb: N must be >= 1");
    std::vector<Matrix> basis;
    basis.reserve(static_cast<size_t>(group == Group::Unitary ? N * N : 2 * N * N));
    const double cd = 1.0 / std::sqrt(static_cast<double>(N));
    const double co = 1.0 / std::sqrt(2.0 * N);
    for (int j = 0; j < N; ++j) {
        Matrix X = Matrix::Zero(N, N);
        X(j, j) = ComplexF(0.0, cd);
        basis.push_back(std::move(X));
    }
    for (int j = 0; j < N; ++j)
        for (int k = j + 1; k < N; ++k) {
            Matrix X = Matrix::Zero(N, N);
            X(j, k) = ComplexF(co, 0.0);
            X(k, j) = ComplexF(-co, 0.0);
            basis.push_back(std::move(X));
            Matrix Y = Matrix::Zero(N, N);
            Y(j, k) = ComplexF(0.0, co);
            Y(k, j) = ComplexF(0.0, co);
            basis.push_back(std::move(Y));
        }
    if (group == Group::GeneralLinear) {
        const size_t n = basis.size();
        for (size_t i = 0; i < n; ++i) basis.push_back(ComplexF(0.0, 1.0) * basis[i]);
    }
    return basis;
}

std::array<double, 4> verify_magic(int N, const Matrix& A, const Matrix& B) {
    if (A.rows() != N || A.cols() != N || B.rows() != N || B.cols() != N)
        throw std::invalid_argument("verify_magic: dimension mismatch");
    auto basis = onb(Group::Unitary, N);
    Matrix I = Matrix::Identity(N, N);
    Matrix s1 = Matrix::Zero(N, N), s2 = Matrix::Zero(N, N), s3 = Matrix::Zero(N, N);
    ComplexF s4(0.0, 0.0);
    for (const auto& X : basis) {
        s1 += X * X;
        s2 += X * A * X;
        s3 += ntrace(X * A) * X;
        s4 += ntrace(X * A) * ntrace(X * B);
    }
    const double invN2 = 1.0 / (static_cast<double>(N) * N);
    return {(s1 + I).norm(), (s2 + ntrace(A) * I).norm(), (s3 + invN2 * A).norm(),
            std::abs(s4 + invN2 * ntrace(A * B))};
}

Matrix laplacian_fd(const ComplexPoly& p, const Matrix& U, double h) {
    if (h < 1e-5 || h > 1e-2) throw std::invalid_argument("laplacian_fd: h out of [1e-5, 1e-2]");
    const int N = static_cast<int>(U.rows());
    auto basis = onb(Group::Unitary, N);
    Matrix center = evaluate_matrix(p, U);
    Matrix acc = Matrix::Zero(N, N);
    for (const auto& X : basis) {
        Matrix E = expm(Matrix(h * X));
        acc += evaluate_matrix(p, U * E) - 2.0 * center + evaluate_matrix(p, Matrix(U * E.inverse()));
    }
    return acc / (h * h);
}

Matrix bm_endpoint(const BrownianConfig& cfg, int index) {
    validate(cfg);
    PathWorkspace w(cfg.N);
    run_path(cfg, path_seed(cfg, index), w);
    return w.Z;
}

std::vector<Matrix> sample_bm(const BrownianConfig& cfg) {
    validate(cfg);
    std::vector<Matrix> out;
    out.reserve(cfg.paths);
    PathWorkspace w(cfg.N);
    for (int i = 0; i < cfg.paths; ++i) {
        run_path(cfg, path_seed(cfg, i), w);
        out.push_back(w.Z);
    }
    return out;
}

std::vector<SampleStats> mc_run(const BrownianConfig& cfg, const std::vector<Observable>& obs) {
    validate(cfg);
    const int P = cfg.paths;
    const size_t M = obs.size();
    // Per-path values stored by index, reduced in index order afterwards:
    // the result does not depend on how paths are assigned to workers.
    std::vector<std::vector<ComplexF>> values(M, std::vector<ComplexF>(P));

    unsigned hw = std::thread::hardware_concurrency();
    int workers = static_cast<int>(std::min<unsigned>(hw ? hw : 1, static_cast<unsigned>(P)));
    std::atomic<int> next_path{0};
    auto work = [&] {
        PathWorkspace w(cfg.N);
        for (;;) {
            int i = next_path.fetch_add(1);
            if (i >= P) break;
            run_path(cfg, path_seed(cfg, i), w);
            for (size_t m = 0; m < M; ++m) values[m][i] = obs[m].eval(w.Z);
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    std::vector<SampleStats> stats(M);
    for (size_t m = 0; m < M; ++m) {
        ComplexF sum(0.0, 0.0);
        for (int i = 0; i < P; ++i) sum += values[m][i];
        ComplexF mean = sum / static_cast<double>(P);
        double var = 0.0;
        for (int i = 0; i < P; ++i) var += std::norm(values[m][i] - mean);
        var = (P > 1) ? var / (P - 1) : 0.0;
        stats[m] = {obs[m].name, P, mean, var, std::sqrt(var / P)};
    }
    return stats;
}

SampleStats mc_estimate(const BrownianConfig& cfg, const ComplexPoly& p) {
    Observable o{"tr(p)", [&p](const Matrix& Z) { return ntrace(evaluate_matrix(p, Z)); }};
    return mc_run(cfg, {o})[0];
}

SampleStats mc_l2_distance(const ComplexPoly& f, const ComplexPoly& g, const BrownianConfig& cfg) {
    if (cfg.group != Group::GeneralLinear)
        throw std::invalid_argument("mc_l2_distance: config must target gl(N;C)");
    ComplexPoly diff = f - g;
    Observable o{"l2_distance_sq", [&diff](const Matrix& Z) {
                     Matrix D = evaluate_matrix(diff, Z);
                     return ComplexF(ntrace(D.adjoint() * D).real(), 0.0);
                 }};
    return mc_run(cfg, {o})[0];
}

Matrix random_unitary(int N, std::uint64_t seed) {
    BrownianConfig cfg;
    cfg.group = Group::Unitary;
    cfg.N = N;
    cfg.t = 4.0;
    cfg.h = 0.02;
    cfg.paths = 1;
    cfg.seed = seed;
    return bm_endpoint(cfg, 0);
}

} // namespace tracelab
