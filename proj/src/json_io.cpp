#include "tracelab/json_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace tracelab {

namespace {

TraceMonomial monomial_from_json(const json& j) {
    TraceMonomial m;
    m.u_power = j.at("u").get<int>();
    if (j.contains("traces"))
        for (auto& [key, val] : j.at("traces").items()) {
            int l = std::stoi(key);
            int mult = val.get<int>();
            if (l < 1 || mult < 1) throw std::invalid_argument("bad trace factor in JSON");
            m.trace_factors[l] = mult;
        }
    return m;
}

template <class R, class CoeffToJson>
json poly_to_json_impl(const TracePolynomial<R>& p, CoeffToJson f) {
    json terms = json::array();
    for (auto& [m, c] : p.terms()) {
        json traces = json::object();
        for (auto& [l, mult] : m.trace_factors) traces[std::to_string(l)] = mult;
        terms.push_back({{"u", m.u_power}, {"traces", traces}, {"coeff", f(c)}});
    }
    return {{"terms", terms}};
}

template <class R, class CoeffFromJson>
TracePolynomial<R> poly_from_json_impl(const json& j, CoeffFromJson f) {
    TracePolynomial<R> out;
    for (auto& term : j.at("terms"))
        out.add_term(monomial_from_json(term), f(term.at("coeff")));
    return out;
}

std::string fmt_double(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

} // namespace

json rational_to_json(const Rational& r) { return rational_to_string(r); }

Rational rational_from_json(const json& j) { return parse_rational(j.get<std::string>()); }

json tpoly_to_json(const TPoly& p) {
    json c = json::array();
    for (int i = 0; i <= p.degree(); ++i) c.push_back(rational_to_string(p.coeff(i)));
    return {{"tpoly", c}};
}

TPoly tpoly_from_json(const json& j) {
    std::vector<Rational> c;
    for (auto& x : j.at("tpoly")) c.push_back(parse_rational(x.get<std::string>()));
    return TPoly(std::move(c));
}

json trace_poly_to_json(const RationalPoly& p) {
    return poly_to_json_impl(p, [](const Rational& c) { return rational_to_json(c); });
}

json trace_poly_to_json(const TPolyPoly& p) {
    return poly_to_json_impl(p, [](const TPoly& c) { return tpoly_to_json(c); });
}

RationalPoly rational_poly_from_json(const json& j) {
    return poly_from_json_impl<Rational>(j, [](const json& c) { return rational_from_json(c); });
}

TPolyPoly tpoly_poly_from_json(const json& j) {
    return poly_from_json_impl<TPoly>(j, [](const json& c) { return tpoly_from_json(c); });
}

json semigroup_to_json(const SemigroupValue& v) {
    json grades = json::array();
    for (auto& comp : v.components)
        grades.push_back({{"k", comp.grade},
                          {"decay", rational_to_string(Rational(comp.grade, 2))},
                          {"body", trace_poly_to_json(comp.body)}});
    return {{"grades", grades}};
}

SemigroupValue semigroup_from_json(const json& j) {
    SemigroupValue out;
    for (auto& g : j.at("grades")) {
        int k = g.at("k").get<int>();
        if (rational_from_json(g.at("decay")) != Rational(k, 2))
            throw std::invalid_argument("semigroup JSON: decay inconsistent with grade");
        out.components.push_back({k, tpoly_poly_from_json(g.at("body"))});
    }
    return out;
}

void write_operator_matrix_csv(std::ostream& os, const GradedOperatorMatrix<Rational>& M) {
    os << "label";
    for (auto& m : M.basis) os << "," << monomial_to_string(m);
    os << "\n";
    for (size_t i = 0; i < M.dim(); ++i) {
        os << monomial_to_string(M.basis[i]);
        for (size_t j = 0; j < M.dim(); ++j) os << "," << rational_to_string(M.entries[i][j]);
        os << "\n";
    }
}

void write_genfun_csv(std::ostream& os, const std::vector<UPoly>& pk) {
    os << "k,j,coeff_re,coeff_im\n";
    for (size_t i = 0; i < pk.size(); ++i)
        for (int j = 0; j <= pk[i].degree(); ++j) {
            ComplexF c = pk[i].coeff(j);
            if (c == ComplexF(0.0, 0.0)) continue;
            os << (i + 1) << "," << j << "," << fmt_double(c.real()) << "," << fmt_double(c.imag())
               << "\n";
        }
}

void write_mc_csv(std::ostream& os, const std::vector<McCsvRow>& rows) {
    os << "experiment,group,N,t,k,n_paths,h,mean_re,mean_im,variance,stderr,seed\n";
    for (auto& r : rows)
        os << r.experiment << "," << r.group << "," << r.N << "," << fmt_double(r.t) << "," << r.k
           << "," << r.stats.n << "," << fmt_double(r.h) << "," << fmt_double(r.stats.mean.real())
           << "," << fmt_double(r.stats.mean.imag()) << "," << fmt_double(r.stats.variance) << ","
           << fmt_double(r.stats.stderror) << "," << r.seed << "\n";
}

json manifest_to_json(const RunManifest& m) {
    return {{"command", m.command},
            {"flags", m.flags},
            {"seed", m.seed},
            {"version", m.version},
            {"wall_time_s", m.wall_time_s}};
}

void write_manifest(const std::string& output_path, const RunManifest& m) {
    std::ofstream os(output_path + ".manifest.json");
    os << manifest_to_json(m).dump(2) << "\n";
}

} // namespace tracelab
