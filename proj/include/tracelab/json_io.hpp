#pragma once

#include <nlohmann/json.hpp>
#include <ostream>
#include <string>
#include <vector>

#include "tracelab/genfun.hpp"
#include "tracelab/heat.hpp"
#include "tracelab/matrix_lab.hpp"
#include "tracelab/operators.hpp"
#include "tracelab/single_var_poly.hpp"
#include "tracelab/trace_poly.hpp"

namespace tracelab {

using nlohmann::json;

// Interchange format (also used by the cache):
//   TracePolynomial  {"terms":[{"u":k,"traces":{"l":m,...},"coeff":<c>}]}
//   Rational         "p/q" (or "p" when q = 1)
//   TPoly            {"tpoly":["c0","c1",...]}
//   SemigroupValue   {"grades":[{"k":k,"decay":"k/2","body":<TracePolynomial>}]}
json rational_to_json(const Rational& r);
Rational rational_from_json(const json& j);

json tpoly_to_json(const TPoly& p);
TPoly tpoly_from_json(const json& j);

json trace_poly_to_json(const RationalPoly& p);
json trace_poly_to_json(const TPolyPoly& p);
RationalPoly rational_poly_from_json(const json& j);
TPolyPoly tpoly_poly_from_json(const json& j);

json semigroup_to_json(const SemigroupValue& v);
SemigroupValue semigroup_from_json(const json& j);

// CSV emitters; schemas are pinned by golden-file tests.
void write_operator_matrix_csv(std::ostream& os, const GradedOperatorMatrix<Rational>& M);
void write_genfun_csv(std::ostream& os, const std::vector<UPoly>& pk); // k,j,coeff_re,coeff_im

struct McCsvRow {
    std::string experiment;
    std::string group; // "u" or "gl"
    int N = 0;
    double t = 0.0;
    int k = 0;
    SampleStats stats;
    double h = 0.0;
    std::uint64_t seed = 0;
};
void write_mc_csv(std::ostream& os, const std::vector<McCsvRow>& rows);

struct RunManifest {
    std::string command;
    std::vector<std::string> flags;
    std::uint64_t seed = 0;
    std::string version;
    double wall_time_s = 0.0;
};
json manifest_to_json(const RunManifest& m);
// Writes <output_path>.manifest.json next to an emitted file.
void write_manifest(const std::string& output_path, const RunManifest& m);

} // namespace tracelab
