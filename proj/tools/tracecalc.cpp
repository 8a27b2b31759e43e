#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "tracelab/acceptance.hpp"
#include "tracelab/cache.hpp"
#include "tracelab/genfun.hpp"
#include "tracelab/heat.hpp"
#include "tracelab/json_io.hpp"
#include "tracelab/matrix_lab.hpp"

namespace {

using namespace tracelab;

constexpr const char* kVersion = "tracecalc 1.0.0";
constexpr int kExitParse = 2;
constexpr int kExitGrade = 3;

struct ParseFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct GradeFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Time parameter: exact rational by default, floats only behind --float.
struct TimeValue {
    Rational exact;
    double value = 0.0;
    bool is_exact = true;
};

TimeValue parse_time(const std::string& s, bool allow_float) {
    TimeValue t;
    try {
        t.exact = parse_rational(s);
        t.value = to_double(t.exact);
        return t;
    } catch (const std::invalid_argument&) {
        if (!allow_float) throw ParseFailure("--t \"" + s + "\" is not rational; pass --float to accept a float");
        try {
            size_t pos = 0;
            t.value = std::stod(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
        } catch (...) {
            throw ParseFailure("cannot parse --t value: " + s);
        }
        t.is_exact = false;
        return t;
    }
}

void check_grades(const RationalPoly& p) {
    for (auto& [m, c] : p.terms())
        if (trace_degree(m) > kMaxFiniteGrade)
            throw GradeFailure("trace degree " + std::to_string(trace_degree(m)) +
                               " exceeds the supported finite-N grade cap (" +
                               std::to_string(kMaxFiniteGrade) + ")");
}

std::string zpoly_str(const SingleVarPoly<TPoly>& p) {
    std::string out;
    for (int i = p.degree(); i >= 0; --i) {
        if (p.coeff(i).is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += "(" + p.coeff(i).str() + ")";
        if (i == 1) out += "*z";
        else if (i > 1) out += "*z^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
}

std::string complex_str(ComplexF c) {
    std::ostringstream os;
    os << std::setprecision(15) << c.real();
    if (c.imag() != 0.0) os << (c.imag() > 0 ? "+" : "") << std::setprecision(15) << c.imag() << "i";
    return os.str();
}

struct OutputSink {
    std::string path; // empty = stdout
    RunManifest manifest;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void write(const std::string& text) {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream os(path);
        if (!os) throw std::runtime_error("cannot open output file: " + path);
        os << text;
        manifest.wall_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        write_manifest(path, manifest);
    }
};

RunManifest make_manifest(const std::string& command, const std::vector<std::string>& flags,
                          std::uint64_t seed) {
    RunManifest m;
    m.command = command;
    m.flags = flags;
    m.seed = seed;
    m.version = kVersion;
    return m;
}

// ---- transform --------------------------------------------------------------

int cmd_transform(int power, const std::string& poly_json, const TimeValue& t,
                  std::optional<int> N, OutputSink& sink) {
    std::ostringstream text;
    json out_json;
    if (N) {
        RationalPoly p;
        if (power >= 0) p = RationalPoly::u(power);
        else {
            try {
                p = rational_poly_from_json(json::parse(poly_json));
            } catch (const std::exception& e) {
                throw ParseFailure(std::string("bad --poly JSON: ") + e.what());
            }
        }
        check_grades(p);
        ComplexPoly r = heat_finite_N(to_complex_poly(p), t.value, *N);
        text << "finite-N heat transform, N=" << *N << ", t=" << t.value << "\n";
        json terms = json::array();
        for (auto& [m, c] : r.terms()) {
            text << "  " << complex_str(c) << " * " << monomial_to_string(m) << "\n";
            json traces = json::object();
            for (auto& [l, mult] : m.trace_factors) traces[std::to_string(l)] = mult;
            terms.push_back({{"u", m.u_power},
                             {"traces", traces},
                             {"coeff_re", c.real()},
                             {"coeff_im", c.imag()}});
        }
        out_json = {{"N", *N}, {"t", t.value}, {"terms", terms}};
    } else if (power >= 0) {
        // Single power: emit q_t as a z-polynomial with its decay factors.
        auto q = free_hall_transform(SingleVarPoly<Rational>::power('u', power));
        text << "q_t for u^" << power << " (z = spectral variable):\n";
        json comps = json::array();
        for (auto& comp : q.components) {
            text << "  e^{-(" << rational_to_string(Rational(comp.grade, 2)) << ")t} * ( "
                 << zpoly_str(comp.poly) << " )\n";
            json zc = json::array();
            for (int i = 0; i <= comp.poly.degree(); ++i) zc.push_back(tpoly_to_json(comp.poly.coeff(i)));
            comps.push_back({{"grade", comp.grade},
                             {"decay", rational_to_string(Rational(comp.grade, 2))},
                             {"z_coeffs", zc}});
        }
        out_json = {{"power", power}, {"components", comps}};
        auto num = q.eval_at(t.value);
        text << "at t=" << (t.is_exact ? rational_to_string(t.exact) : std::to_string(t.value))
             << ": ";
        for (int i = num.degree(); i >= 0; --i) {
            if (num.coeff(i) == ComplexF(0.0, 0.0)) continue;
            text << complex_str(num.coeff(i)) << (i > 0 ? "*z^" + std::to_string(i) + " " : " ");
        }
        text << "\n";
    } else {
        RationalPoly p;
        try {
            p = rational_poly_from_json(json::parse(poly_json));
        } catch (const std::exception& e) {
            throw ParseFailure(std::string("bad --poly JSON: ") + e.what());
        }
        SemigroupValue sv = heat_limit(p);
        text << "large-N heat semigroup value:\n";
        for (auto& comp : sv.components)
            text << "  e^{-(" << rational_to_string(Rational(comp.grade, 2)) << ")t} * ( "
                 << comp.body.str([](const TPoly& c) { return c.str(); }) << " )\n";
        out_json = semigroup_to_json(sv);
    }
    text << "\n" << out_json.dump(2) << "\n";
    sink.write(text.str());
    return 0;
}

// ---- moments ----------------------------------------------------------------

int cmd_moments(int kmax, const TimeValue& t, const std::string& N_str, OutputSink& sink) {
    std::ostringstream text;
    if (N_str == "inf") {
        text << "moments of the limiting distribution, nu_k(t) = e^{-kt/2} * body(t)\n";
        for (int k = 1; k <= kmax; ++k) {
            auto m = biane_moment(k);
            text << "  nu_" << k << ": e^{-(" << rational_to_string(Rational(k, 2)) << ")t} * ( "
                 << m.body.str() << " )";
            text << "  = " << std::setprecision(15) << m.eval_at(t.value) << " at t=" << t.value
                 << "\n";
        }
    } else {
        int N = 0;
        try {
            N = std::stoi(N_str);
            if (N < 1) throw std::invalid_argument(N_str);
        } catch (...) {
            throw ParseFailure("--N must be a positive integer or \"inf\"");
        }
        text << "finite-N expectations E[tr U^k] under the heat kernel, N=" << N << ", t=" << t.value
             << "\n";
        for (int k = 1; k <= kmax; ++k) {
            if (k > kMaxFiniteGrade)
                throw GradeFailure("k=" + std::to_string(k) + " exceeds the finite-N grade cap");
            text << "  k=" << k << ": " << complex_str(expect_finite(ComplexPoly::v(k), t.value, N))
                 << "\n";
        }
    }
    sink.write(text.str());
    return 0;
}

// ---- inverse ----------------------------------------------------------------

int cmd_inverse(int power, const TimeValue& t, OutputSink& sink) {
    std::ostringstream text;
    auto inv = inverse_free_hall(SingleVarPoly<Rational>::power('z', power));
    text << "inverse transform of z^" << power << ":\n";
    for (auto& term : inv.terms) {
        text << "  e^{+(" << rational_to_string(Rational(term.u_power, 2)) << ")t} * ( "
             << term.body.str() << " )";
        if (term.u_power == 1) text << " * u";
        else if (term.u_power > 1) text << " * u^" << term.u_power;
        text << "\n";
    }
    auto num = inv.eval_at(t.value);
    text << "at t=" << t.value << ": ";
    for (int i = num.degree(); i >= 0; --i) {
        if (num.coeff(i) == ComplexF(0.0, 0.0)) continue;
        text << complex_str(num.coeff(i)) << (i > 0 ? "*u^" + std::to_string(i) + " " : " ");
    }
    text << "\n";
    sink.write(text.str());
    return 0;
}

// ---- genfun -----------------------------------------------------------------

int cmd_genfun(double s, double t, int K, OutputSink& sink) {
    auto pk = expand_phi_st(s, t, K);
    std::ostringstream csv;
    write_genfun_csv(csv, pk);
    sink.write(csv.str());

    // PDE residual diagnostics go to stderr; they report and never fail.
    auto report = [&](const char* name, PdeKind kind) {
        auto r = pde_residual(kind, s, t, K);
        std::cerr << "pde residual [" << name << "]:";
        for (int i = 0; i <= r.order(); ++i) {
            double a = std::abs(r.coeff(i));
            std::cerr << " z^" << i << "=" << std::setprecision(3) << a;
            if (a > 1e-6) std::cerr << "(!)";
        }
        std::cerr << "\n";
    };
    report("rho", PdeKind::Rho);
    report("psi", PdeKind::Psi);
    report("phi", PdeKind::Phi);
    return 0;
}

// ---- mc ---------------------------------------------------------------------

int cmd_mc(const std::string& experiment, const std::string& group, int N, const TimeValue& t,
           int k, int paths, double h, std::uint64_t seed, OutputSink& sink) {
    BrownianConfig cfg;
    cfg.group = (group == "gl") ? Group::GeneralLinear : Group::Unitary;
    cfg.N = N;
    cfg.t = t.value;
    cfg.h = h;
    cfg.paths = paths;
    cfg.seed = seed;

    McCsvRow row;
    row.experiment = experiment;
    row.group = group;
    row.N = N;
    row.t = t.value;
    row.k = k;
    row.h = h;
    row.seed = seed;

    if (experiment == "trace") {
        row.stats = mc_estimate(cfg, ComplexPoly::v(k));
    } else if (experiment == "l2") {
        if (cfg.group != Group::GeneralLinear)
            throw ParseFailure("--experiment l2 requires --group gl");
        if (k > kMaxFiniteGrade) throw GradeFailure("k exceeds the finite-N grade cap");
        ComplexPoly f = heat_finite_N(ComplexPoly::u(k), t.value, N);
        auto qt = free_hall_transform(SingleVarPoly<Rational>::power('u', k)).eval_at(t.value);
        ComplexPoly g;
        for (int i = 0; i <= qt.degree(); ++i)
            g.add_term(TraceMonomial::u(i), qt.coeff(i));
        row.stats = mc_l2_distance(f, g, cfg);
    } else {
        throw ParseFailure("unknown --experiment (use trace or l2)");
    }
    std::ostringstream csv;
    write_mc_csv(csv, {row});
    sink.write(csv.str());
    return 0;
}

// ---- verify / selftest ------------------------------------------------------

int cmd_verify(const std::string& suite, std::uint64_t seed) {
    AcceptanceOptions opt;
    opt.seed = seed;
    std::string id;
    if (suite == "magic") id = "AC-5";
    else if (suite == "laplacian") id = "AC-6";
    else if (suite == "oracle") id = "AC-3";
    else if (suite == "concentration") id = "AC-8";
    else throw ParseFailure("unknown --suite (use magic, laplacian, oracle, concentration)");
    return run_criterion(id, opt, std::cout).pass ? 0 : 1;
}

int cmd_selftest(bool skip_mc, std::uint64_t seed, int paths) {
    AcceptanceOptions opt;
    opt.skip_mc = skip_mc;
    opt.seed = seed;
    opt.mc_paths = paths;
    auto results = run_acceptance(opt, std::cout);
    bool ok = all_passed(results);
    std::cout << (ok ? "all acceptance criteria passed" : "ACCEPTANCE FAILURES PRESENT") << "\n";
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact and numerical calculator for the large-N heat transform on trace polynomials"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    // transform
    auto* tr = app.add_subcommand("transform", "heat transform of a trace polynomial");
    int tr_power = -1;
    std::string tr_poly, tr_t = "0", tr_out;
    bool tr_float = false, tr_limit = false;
    int tr_N = 0;
    tr->add_option("--power", tr_power, "transform u^k");
    tr->add_option("--poly", tr_poly, "trace polynomial as JSON");
    tr->add_option("--t", tr_t, "time (rational \"p/q\"; floats need --float)");
    tr->add_flag("--float", tr_float, "accept a floating-point --t");
    tr->add_option("--N", tr_N, "finite matrix dimension");
    tr->add_flag("--limit", tr_limit, "large-N limit (exact)");
    tr->add_option("--out", tr_out, "output file (manifest written alongside)");

    // moments
    auto* mo = app.add_subcommand("moments", "moments of the heat kernel distribution");
    int mo_kmax = 4;
    std::string mo_t = "1", mo_N = "inf", mo_out;
    bool mo_float = false;
    mo->add_option("--kmax", mo_kmax, "largest moment");
    mo->add_option("--t", mo_t, "time");
    mo->add_flag("--float", mo_float, "accept a floating-point --t");
    mo->add_option("--N", mo_N, "matrix dimension or \"inf\"");
    mo->add_option("--out", mo_out, "output file");

    // inverse
    auto* in = app.add_subcommand("inverse", "inverse transform of z^k");
    int in_power = 1;
    std::string in_t = "1", in_out;
    bool in_float = false;
    in->add_option("--power", in_power, "power of z");
    in->add_option("--t", in_t, "time");
    in->add_flag("--float", in_float, "accept a floating-point --t");
    in->add_option("--out", in_out, "output file");

    // genfun
    auto* gf = app.add_subcommand("genfun", "generating-function coefficient tables");
    double gf_s = 1.0, gf_t = 1.0;
    int gf_K = 8;
    std::string gf_out;
    gf->add_option("--s", gf_s, "first time parameter");
    gf->add_option("--t", gf_t, "second time parameter");
    gf->add_option("--order", gf_K, "truncation order");
    gf->add_option("--out", gf_out, "output CSV file");

    // mc
    auto* mc = app.add_subcommand("mc", "Monte Carlo experiments on Brownian paths");
    std::string mc_exp = "trace", mc_group = "u", mc_t = "1", mc_out;
    int mc_N = 4, mc_k = 1, mc_paths = 10000;
    double mc_h = 0.005;
    bool mc_float = false;
    std::uint64_t mc_seed = 0;
    mc->add_option("--experiment", mc_exp, "trace | l2");
    mc->add_option("--group", mc_group, "u | gl");
    mc->add_option("--N", mc_N, "matrix dimension");
    mc->add_option("--t", mc_t, "time");
    mc->add_flag("--float", mc_float, "accept a floating-point --t");
    mc->add_option("--k", mc_k, "trace power");
    mc->add_option("--paths", mc_paths, "number of paths");
    mc->add_option("--step", mc_h, "time step");
    mc->add_option("--seed", mc_seed, "master RNG seed (default 0)");
    mc->add_option("--out", mc_out, "output CSV file");

    // verify
    auto* vf = app.add_subcommand("verify", "run one verification suite");
    std::string vf_suite;
    std::uint64_t vf_seed = 0;
    vf->add_option("--suite", vf_suite, "magic | laplacian | oracle | concentration")->required();
    vf->add_option("--seed", vf_seed, "master RNG seed (default 0)");

    // selftest
    auto* st = app.add_subcommand("selftest", "full acceptance suite");
    bool st_skip_mc = false;
    std::uint64_t st_seed = 0;
    int st_paths = 100000;
    st->add_flag("--skip-mc", st_skip_mc, "skip the Monte Carlo criterion");
    st->add_option("--seed", st_seed, "master RNG seed (default 0)");
    st->add_option("--paths", st_paths, "paths per N in the MC criterion");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    // Warm the symbolic memo from disk; a corrupt or stale file is ignored and
    // everything is recomputed.
    load_cache(heat_cache());

    std::vector<std::string> flags(argv + 1, argv + argc);
    int rc = 0;
    try {
        if (*tr) {
            if ((tr_power < 0) == tr_poly.empty())
                throw ParseFailure("pass exactly one of --power or --poly");
            if (tr_limit == (tr_N > 0))
                throw ParseFailure("pass exactly one of --limit or --N");
            OutputSink sink{tr_out, make_manifest("transform", flags, 0)};
            rc = cmd_transform(tr_power, tr_poly, parse_time(tr_t, tr_float),
                               tr_limit ? std::nullopt : std::optional<int>(tr_N), sink);
        } else if (*mo) {
            OutputSink sink{mo_out, make_manifest("moments", flags, 0)};
            rc = cmd_moments(mo_kmax, parse_time(mo_t, mo_float), mo_N, sink);
        } else if (*in) {
            OutputSink sink{in_out, make_manifest("inverse", flags, 0)};
            rc = cmd_inverse(in_power, parse_time(in_t, in_float), sink);
        } else if (*gf) {
            OutputSink sink{gf_out, make_manifest("genfun", flags, 0)};
            rc = cmd_genfun(gf_s, gf_t, gf_K, sink);
        } else if (*mc) {
            OutputSink sink{mc_out, make_manifest("mc", flags, mc_seed)};
            rc = cmd_mc(mc_exp, mc_group, mc_N, parse_time(mc_t, mc_float), mc_k, mc_paths, mc_h,
                        mc_seed, sink);
        } else if (*vf) {
            rc = cmd_verify(vf_suite, vf_seed);
        } else if (*st) {
            rc = cmd_selftest(st_skip_mc, st_seed, st_paths);
        }
    } catch (const ParseFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const GradeFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitGrade;
    } catch (const std::invalid_argument& e) {
        // Library-level grade refusals surface here.
        std::string msg = e.what();
        std::cerr << "error: " << msg << "\n";
        return msg.find("grade") != std::string::npos ? kExitGrade : kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    save_cache(heat_cache());
    return rc;
}
