#include "tracelab/heat.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "tracelab/evaluate.hpp"
#include "tracelab/expm.hpp"

namespace tracelab {

namespace {

TPolyPoly integrate_terms(const TPolyPoly& p) {
    TPolyPoly out;
    for (auto& [m, c] : p.terms()) out.add_term(m, c.integral());
    return out;
}

} // namespace

RationalPoly SemigroupValue::at_zero() const {
    RationalPoly out;
    for (auto& comp : components)
        for (auto& [m, c] : comp.body.terms()) out.add_term(m, c.coeff(0));
    return out;
}

HeatCache& heat_cache() {
    static HeatCache cache;
    return cache;
}

const TPolyPoly& HeatCache::Eu(int k) { return get('u', k); }
const TPolyPoly& HeatCache::Ev(int k) { return get('v', k); }

std::map<int, TPolyPoly> HeatCache::snapshot_u() const {
    std::lock_guard lock(mu_);
    return u_;
}
std::map<int, TPolyPoly> HeatCache::snapshot_v() const {
    std::lock_guard lock(mu_);
    return v_;
}

void HeatCache::seed(char kind, int k, TPolyPoly value) {
    std::lock_guard lock(mu_);
    auto& table = (kind == 'u') ? u_ : v_;
    table.emplace(k, std::move(value));
}

// Theorem-style recursion: with E = e^{t DTilde/2},
//   E(u^k) = u^k - sum_{m=1}^{k-1} m Int_0^t E(u^m) E(v_{k-m}) ds
//   E(v_k) = v_k - sum_{m=1}^{k-1} m Int_0^t E(v_m) E(v_{k-m}) ds
const TPolyPoly& HeatCache::get(char kind, int k) {
    if (k < 0) throw std::invalid_argument("heat cache: negative power");
    {
        std::lock_guard lock(mu_);
        auto& table = (kind == 'u') ? u_ : v_;
        auto it = table.find(k);
        if (it != table.end()) return it->second;
    }
    // Compute outside the lock; the recursion only descends to smaller k.
    TPolyPoly value;
    if (kind == 'u' && k == 0) {
        value = TPolyPoly::constant(TPoly(Rational(1)));
    } else if (kind == 'v' && k == 0) {
        // v_0 stands for tr(I) = 1.
        value = TPolyPoly::constant(TPoly(Rational(1)));
    } else {
        TraceMonomial lead = (kind == 'u') ? TraceMonomial::u(k) : TraceMonomial::v(k);
        value = TPolyPoly::monomial(lead, TPoly(Rational(1)));
        for (int m = 1; m < k; ++m) {
            const TPolyPoly left = (kind == 'u') ? get('u', m) : get('v', m);
            const TPolyPoly right = get('v', k - m);
            value += integrate_terms(left * right).scaled(TPoly(Rational(-m)));
        }
    }
    std::lock_guard lock(mu_);
    auto& table = (kind == 'u') ? u_ : v_;
    return table.emplace(k, std::move(value)).first->second;
}

SemigroupValue heat_limit(const RationalPoly& p, HeatCache& cache) {
    std::map<int, TPolyPoly> per_grade;
    for (auto& [mono, coeff] : p.terms()) {
        TPolyPoly body = cache.Eu(mono.u_power);
        for (auto& [l, mult] : mono.trace_factors)
            for (int i = 0; i < mult; ++i) body = body * cache.Ev(l);
        per_grade[trace_degree(mono)] += body.scaled(TPoly(coeff));
    }
    SemigroupValue out;
    for (auto& [g, body] : per_grade)
        if (!body.is_zero()) out.components.push_back({g, std::move(body)});
    return out;
}

GradedOperatorMatrix<TPoly> nilpotent_exp_oracle(int k) {
    auto Dt = operator_matrix<Rational>(OpTag::DTilde, k);
    const size_t n = Dt.dim();

    GradedOperatorMatrix<TPoly> out;
    out.tag = OpTag::DTilde;
    out.grade = k;
    out.basis = Dt.basis;
    out.entries.assign(n, std::vector<TPoly>(n, TPoly()));

    // Accumulate sum_n (t/2)^n M^n / n!; M is nilpotent of index <= k+1.
    std::vector<std::vector<Rational>> pw(n, std::vector<Rational>(n, Rational(0)));
    for (size_t i = 0; i < n; ++i) pw[i][i] = 1;
    Rational factor(1); // 1 / (2^n n!)
    for (int step = 0;; ++step) {
        bool nonzero = false;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                if (pw[i][j] != 0) {
                    nonzero = true;
                    std::vector<Rational> c(out.entries[i][j].coeffs());
                    c.resize(std::max<size_t>(c.size(), step + 1), Rational(0));
                    c[step] += pw[i][j] * factor;
                    out.entries[i][j] = TPoly(std::move(c));
                }
        if (!nonzero) break;
        if (step == k + 1)
            throw std::logic_error("nilpotent_exp_oracle: DTilde^(k+1) != 0 on grade block");
        // pw <- pw * M
        std::vector<std::vector<Rational>> nxt(n, std::vector<Rational>(n, Rational(0)));
        for (size_t i = 0; i < n; ++i)
            for (size_t l = 0; l < n; ++l) {
                if (pw[i][l] == 0) continue;
                for (size_t j = 0; j < n; ++j)
                    if (Dt.entries[l][j] != 0) nxt[i][j] += pw[i][l] * Dt.entries[l][j];
            }
        pw = std::move(nxt);
        factor /= Rational(2 * (step + 1));
    }
    return out;
}

ComplexPoly heat_finite_N(const ComplexPoly& p, double t, int N) {
    if (t < 0) throw std::invalid_argument("heat_finite_N: t must be >= 0");
    if (N <= 0) throw std::invalid_argument("heat_finite_N: N must be positive");
    ComplexPoly out;
    for (auto& [grade, comp] : p.grade_components()) {
        if (grade > kMaxFiniteGrade)
            throw std::invalid_argument("heat_finite_N: grade " + std::to_string(grade) +
                                        " exceeds block-size cap");
        auto M = operator_matrix<Rational>(OpTag::DN, grade, N);
        const int n = static_cast<int>(M.dim());
        Eigen::MatrixXd A(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) A(i, j) = to_double(M.entries[i][j]);
        Eigen::MatrixXd E = expm(Eigen::MatrixXd(0.5 * t * A));
        auto coords = coordinates(comp, M.basis);
        for (int i = 0; i < n; ++i) {
            ComplexF acc(0.0, 0.0);
            for (int j = 0; j < n; ++j) acc += E(i, j) * coords[j];
            out.add_term(M.basis[i], acc);
        }
    }
    return out;
}

SingleVarPoly<ComplexF> HallPolynomial::eval_at(double t) const {
    SingleVarPoly<ComplexF> out('z');
    for (auto& comp : components) {
        double pre = std::exp(-0.5 * comp.grade * t);
        for (int i = 0; i <= comp.poly.degree(); ++i)
            out.set_coeff(i, out.coeff(i) + pre * comp.poly.coeff(i).eval(t));
    }
    return out;
}

HallPolynomial free_hall_transform(const SingleVarPoly<Rational>& p, HeatCache& cache) {
    RationalPoly tp;
    for (int k = 0; k <= p.degree(); ++k)
        tp.add_term(TraceMonomial::u(k), p.coeff(k));
    SemigroupValue sg = heat_limit(tp, cache);
    HallPolynomial out;
    for (auto& comp : sg.components) {
        auto zpoly = pi0(comp.body);
        zpoly.var = 'z';
        out.components.push_back({comp.grade, std::move(zpoly)});
    }
    return out;
}

SingleVarPoly<ComplexF> InverseHallPolynomial::eval_at(double t) const {
    SingleVarPoly<ComplexF> out('u');
    for (auto& term : terms)
        out.set_coeff(term.u_power,
                      out.coeff(term.u_power) + std::exp(0.5 * term.u_power * t) * term.body.eval(t));
    return out;
}

// Back-substitution on the degree-triangular system. The forward transform of
// u^d is a single grade-d component with monic z^d leading coefficient, so the
// remainder stays a TPoly-coefficient polynomial in z at every step.
InverseHallPolynomial inverse_free_hall(const SingleVarPoly<Rational>& q, HeatCache& cache) {
    std::vector<TPoly> rem(q.degree() + 1);
    for (int i = 0; i <= q.degree(); ++i) rem[i] = TPoly(q.coeff(i));

    InverseHallPolynomial out;
    for (int d = q.degree(); d >= 1; --d) {
        if (rem[d].is_zero()) continue;
        TPoly body = rem[d];
        auto fwd = free_hall_transform(SingleVarPoly<Rational>::power('u', d), cache);
        // fwd has exactly one component, at grade d, with prefactor e^{-d t/2}.
        const auto& fz = fwd.components.at(0).poly;
        for (int i = 0; i <= fz.degree(); ++i) rem[i] -= body * fz.coeff(i);
        out.terms.push_back({d, std::move(body)});
    }
    if (!rem.empty() && !rem[0].is_zero()) out.terms.push_back({0, rem[0]});
    std::reverse(out.terms.begin(), out.terms.end());
    return out;
}

double MomentEntry::eval_at(double t) const { return std::exp(-0.5 * k * t) * body.eval(t); }

MomentEntry biane_moment(int k, HeatCache& cache) {
    if (k < 1) throw std::invalid_argument("biane_moment: k must be >= 1");
    const TPolyPoly& ev = cache.Ev(k);
    TPoly body;
    for (auto& [m, c] : ev.terms()) {
        if (m.u_power != 0) throw std::logic_error("biane_moment: nonscalar term in E(v_k)");
        body += c; // all v_j evaluated at 1
    }
    return {k, body};
}

ComplexF expect_finite(const ComplexPoly& p, double t, int N) {
    if (!p.is_scalar()) throw std::invalid_argument("expect_finite: polynomial must be scalar");
    ComplexPoly evolved = heat_finite_N(p, t, N);
    ComplexF acc(0.0, 0.0);
    for (auto& [m, c] : evolved.terms()) acc += c; // u = 1, v_j = 1
    return acc;
}

double variance_finite(int k, double t, int N) {
    ComplexPoly vk = ComplexPoly::v(k);
    ComplexF mean = expect_finite(vk, t, N);
    ComplexF second = expect_finite(vk * vk, t, N);
    return (second - mean * mean).real();
}

} // namespace tracelab
