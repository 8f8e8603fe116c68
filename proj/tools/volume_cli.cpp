// Command-line surface of the toolkit: form evaluation, reduction, identity
// suites, Fourier coefficients, fundamental-domain integrals, finite fibers
// and the exact volume report. All outputs are JSON; exit code 0 on success,
// 2 when a verification suite fails, 1 on usage errors.

#include <cmath>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "siegel/fiber.hpp"
#include "siegel/forms.hpp"
#include "siegel/quadrature.hpp"
#include "siegel/symplectic.hpp"
#include "siegel/volume.hpp"

using json = nlohmann::json;
using namespace siegel;

namespace {

constexpr int kExitVerification = 2;

std::string real_str(const Real& v, int digits = 40) {
    std::ostringstream os;
    os.precision(digits);
    os << v;
    return os.str();
}

json complex_json(const Complex& z) { return json{{"re", real_str(z.real())}, {"im", real_str(z.imag())}}; }

json config_json(const PrecisionConfig& cfg) {
    return json{{"working_digits", cfg.working_digits},
                {"series_tolerance", cfg.series_tolerance},
                {"quadrature_tolerance", cfg.quadrature_tolerance}};
}

// tau input: degree 1 {"x": r, "y": r}; degree 2 {"x": [[..]], "y": [[..]]}.
struct TauInput {
    int degree;
    SiegelPoint1<Real> p1{Real(0), Real(1)};
    SiegelPoint2<Real> p2;
};

TauInput parse_tau(const std::string& text) {
    const json j = json::parse(text);
    if (!j.contains("x") || !j.contains("y")) throw std::invalid_argument("tau JSON needs fields x and y");
    TauInput out{};
    if (j["x"].is_number()) {
        out.degree = 1;
        out.p1 = SiegelPoint1<Real>(Real(j["x"].get<double>()), Real(j["y"].get<double>()));
        return out;
    }
    out.degree = 2;
    Matrix2<Real> x, y;
    const auto& jx = j["x"];
    const auto& jy = j["y"];
    const Real x12((jx[0][1].get<double>() + jx[1][0].get<double>()) / 2);
    const Real y12((jy[0][1].get<double>() + jy[1][0].get<double>()) / 2);
    x << Real(jx[0][0].get<double>()), x12, x12, Real(jx[1][1].get<double>());
    y << Real(jy[0][0].get<double>()), y12, y12, Real(jy[1][1].get<double>());
    out.p2 = SiegelPoint2<Real>(x, y);
    return out;
}

void emit(const json& j) { std::cout << j.dump(2) << std::endl; }

int run_eval(const std::string& form, const std::string& tau_text) {
    PrecisionConfig cfg;
    const FormName name = parse_form_name(form);
    const TauInput tau = parse_tau(tau_text);
    json out;
    const Complex v = (tau.degree == 1) ? eval1(name, tau.p1, cfg) : eval2(name, tau.p2, cfg);
    const Real pet = (tau.degree == 1) ? petersson_norm(name, tau.p1, cfg) : petersson_norm(name, tau.p2, cfg);
    out["value"] = complex_json(v);
    out["petersson_norm"] = real_str(pet);
    out["error_estimate"] = cfg.series_tolerance;
    out["provenance"] = "theta lattice sum, tail below series_tolerance";
    out["config"] = config_json(cfg);
    emit(out);
    return 0;
}

int run_reduce(const std::string& tau_text) {
    const TauInput tau = parse_tau(tau_text);
    json out;
    if (tau.degree == 1) {
        const auto r = reduce1(SiegelPoint1<double>(static_cast<double>(tau.p1.x), static_cast<double>(tau.p1.y)));
        out["value"] = {{"x", r.point.x}, {"y", r.point.y}};
        out["transformation"] = {r.transformation.a, r.transformation.b, r.transformation.c, r.transformation.d};
        out["steps"] = r.steps;
    } else {
        Matrix2<double> x, y;
        for (int i = 0; i < 2; ++i)
            for (int k = 0; k < 2; ++k) {
                x(i, k) = static_cast<double>(tau.p2.x(i, k));
                y(i, k) = static_cast<double>(tau.p2.y(i, k));
            }
        const auto r = reduce2(SiegelPoint2<double>(x, y));
        out["value"] = {{"x", {{r.point.x(0, 0), r.point.x(0, 1)}, {r.point.x(0, 1), r.point.x(1, 1)}}},
                        {"y", {{r.point.y(0, 0), r.point.y(0, 1)}, {r.point.y(0, 1), r.point.y(1, 1)}}}};
        json m = json::array();
        for (int i = 0; i < 4; ++i) {
            json row = json::array();
            for (int k = 0; k < 4; ++k) row.push_back(r.transformation.m(i, k));
            m.push_back(row);
        }
        out["transformation"] = m;
        out["steps"] = r.steps;
    }
    out["error_estimate"] = 0.0;
    out["provenance"] = "fundamental-domain reduction";
    out["config"] = json::object();
    emit(out);
    return 0;
}

int run_identities() {
    PrecisionConfig cfg;
    std::mt19937_64 rng(20260810);
    std::uniform_real_distribution<double> ux(-0.5, 0.5), uy(0.7, 2.2), uo(0.0, 0.4);
    bool ok = true;
    json out;

    double worst_split = 0, worst_chi10 = 0;
    for (int i = 0; i < 100; ++i) {
        const SiegelPoint1<Real> a(Real(ux(rng)), Real(uy(rng)));
        const SiegelPoint1<Real> b(Real(ux(rng)), Real(uy(rng)));
        const auto d = SiegelPoint2<Real>::diagonal(a, b);
        const auto th = theta_vector(d, cfg);
        static const QuadrupleComplementSystem qs = enumerate_quadruple_complements();
        const auto& ts = calibrated_triples();
        for (FormName f : {FormName::E4, FormName::E6}) {
            const Complex l = eval2_from_thetas<Real>(f, th, ts, qs);
            const Complex r = eval1(f, a, cfg) * eval1(f, b, cfg);
            worst_split = std::max(worst_split, static_cast<double>(abs(l - r) / abs(r)));
        }
        const Complex c12 = eval2_from_thetas<Real>(FormName::Chi12, th, ts, qs);
        const Complex dd = Real(12) * eval1(FormName::Delta, a, cfg) * eval1(FormName::Delta, b, cfg);
        worst_split = std::max(worst_split, static_cast<double>(abs(c12 - dd) / abs(dd)));
        worst_chi10 = std::max(worst_chi10,
                               static_cast<double>(abs(eval2_from_thetas<Real>(FormName::Chi10, th, ts, qs))));
    }
    out["splitting"] = {{"max_relative_residual", worst_split}, {"chi10_on_diagonal", worst_chi10}};
    ok = ok && worst_split < 1e-9 && worst_chi10 == 0.0;

    double worst_igusa = 0;
    for (int i = 0; i < 100; ++i) {
        const SiegelPoint1<Real> t(Real(ux(rng)), Real(uy(rng)));
        const Complex e4 = eval1(FormName::E4, t, cfg);
        const Complex e6 = eval1(FormName::E6, t, cfg);
        const Complex de = eval1(FormName::Delta, t, cfg);
        const Real scale = abs(e4 * e4 * e4) + abs(e6 * e6) + abs(Real(1728) * de);
        worst_igusa = std::max(worst_igusa, static_cast<double>(abs(e4 * e4 * e4 - e6 * e6 - Real(1728) * de) / scale));
    }
    out["igusa_relation"] = {{"max_relative_residual", worst_igusa}};
    ok = ok && worst_igusa < 1e-9;

    double worst_boundary = 0;
    for (int i = 0; i < 20; ++i) {
        Matrix2<Real> x, y;
        const double x12 = ux(rng), x22 = ux(rng), y12 = uo(rng), y22 = uy(rng);
        x << Real(0.07), Real(x12), Real(x12), Real(x22);
        y << Real(30), Real(y12), Real(y12), Real(y22);
        const SiegelPoint2<Real> t(x, y);
        const SiegelPoint1<Real> t2{Real(x22), Real(y22)};
        for (FormName f : {FormName::E4, FormName::E6})
            worst_boundary =
                std::max(worst_boundary, static_cast<double>(abs(eval2(f, t, cfg) - eval1(f, t2, cfg))));
    }
    out["boundary_restriction"] = {{"max_absolute_residual", worst_boundary}};
    ok = ok && worst_boundary < 1e-15;

    double worst_delta = 0;
    for (int i = 0; i < 20; ++i) {
        const SiegelPoint1<Real> t(Real(ux(rng)), Real(uy(rng)));
        const Complex a = eval1(FormName::Delta, t, cfg);
        const Complex b = delta_q_product(t, cfg);
        worst_delta = std::max(worst_delta, static_cast<double>(abs(a - b) / abs(a)));
    }
    out["delta_two_routes"] = {{"max_relative_residual", worst_delta}};
    ok = ok && worst_delta < 1e-20;

    out["value"] = ok ? "pass" : "fail";
    out["error_estimate"] = 0.0;
    out["provenance"] = "identity suites at 50-digit working precision";
    out["config"] = config_json(cfg);
    emit(out);
    return ok ? 0 : kExitVerification;
}

int run_fourier(const std::string& form, int n, int l, int m) {
    PrecisionConfig cfg;
    const FormName name = parse_form_name(form);
    Matrix2<Real> y;
    y << Real(1), Real("0.05"), Real("0.05"), Real(1);
    const int grid = std::max(8, 2 * std::max({std::abs(n), std::abs(l), std::abs(m)}) + 2);
    const Complex c = fourier_coefficient(name, n, l, m, y, grid, cfg);
    const long nearest = std::lround(static_cast<double>(c.real()));
    json out;
    out["value"] = complex_json(c);
    out["nearest_integer"] = nearest;
    out["integer_residual"] = static_cast<double>(abs(c - Complex(Real(nearest), 0)));
    out["error_estimate"] = 1e-30;
    out["provenance"] = "exact trigonometric quadrature on the x-torus, grid " + std::to_string(grid);
    out["config"] = config_json(cfg);
    emit(out);
    return 0;
}

IntegrationConfig integration_config(double tol, double cutoff, const std::string& mode, std::uint64_t seed,
                                     std::uint64_t samples) {
    IntegrationConfig cfg;
    cfg.target_tolerance = tol;
    cfg.cusp_cutoff = cutoff;
    cfg.rng_seed = seed;
    cfg.mc_samples = samples;
    if (mode == "monte_carlo" || mode == "monte-carlo")
        cfg.mode = QuadratureMode::MonteCarlo;
    else if (mode != "adaptive")
        throw CLI::ValidationError("--mode must be adaptive or monte_carlo");
    cfg.validate();
    return cfg;
}

json integral_json(const IntegralResult& r, const IntegrationConfig& cfg, const std::string& provenance) {
    return json{{"value", r.value},
                {"error_estimate", r.error_estimate},
                {"tail_contribution", r.tail_contribution},
                {"singular_contribution_bound", r.singular_contribution_bound},
                {"provenance", provenance},
                {"config",
                 {{"cusp_cutoff", cfg.cusp_cutoff},
                  {"target_tolerance", cfg.target_tolerance},
                  {"exclusion_radius", cfg.exclusion_radius},
                  {"mode", cfg.mode == QuadratureMode::Adaptive ? "adaptive" : "monte_carlo"},
                  {"rng_seed", cfg.rng_seed}}}};
}

int run_integrate(const std::string& which, const IntegrationConfig& cfg) {
    A1Integrand integrand;
    if (which == "one")
        integrand = constant_one_integrand();
    else if (which == "log-pet-e4")
        integrand = log_petersson_integrand(FormName::E4);
    else if (which == "log-pet-e6")
        integrand = log_petersson_integrand(FormName::E6);
    else
        throw CLI::ValidationError("integrand must be one, log-pet-e4 or log-pet-e6");
    const auto r = integrate_A1(integrand, cfg);
    emit(integral_json(r, cfg, std::string("integral of ") + which + " over the degree-1 fundamental domain"));
    return 0;
}

int run_rohrlich(const std::string& form, const IntegrationConfig& cfg) {
    PrecisionConfig pcfg;
    const FormName name = parse_form_name(form);
    const auto quad = integrate_A1(log_petersson_integrand(name), cfg);
    const double rhs = rohrlich_rhs(name, pcfg);
    const double diff = std::abs(quad.value - rhs);
    const bool ok = diff < std::max(1e-4, 10 * quad.error_estimate);
    json out = integral_json(quad, cfg, "Rohrlich-type identity check");
    out["rhs_exact"] = rhs;
    out["abs_difference"] = diff;
    out["value"] = ok ? "pass" : "fail";
    out["quadrature_value"] = quad.value;
    emit(out);
    return ok ? 0 : kExitVerification;
}

int run_fiber(int p, bool plain) {
    const auto sols = enumerate_solutions(p);
    if (plain) {
        for (const auto& s : sols) std::cout << format_solution(s) << "\n";
        return 0;
    }
    json out;
    json arr = json::array();
    for (const auto& s : sols)
        arr.push_back({{"point", format_solution(s)}, {"vanishing_theta_count", s.vanishing_theta_count}});
    out["value"] = arr;
    out["count"] = sols.size();
    out["degenerate_stratum_count"] = boundary_stratum(sols).size();
    out["error_estimate"] = 0.0;
    out["provenance"] = "exhaustive projective scan of the five-polynomial system mod p";
    out["config"] = {{"prime", p}};
    emit(out);
    return 0;
}

int run_volume() {
    PrecisionConfig cfg;
    const VolumeReport r = assemble(cfg);
    std::cout << report_to_json(r, cfg) << std::endl;
    return 0;
}

int run_tables(const std::string& sign_path, const std::string& cand_path, const std::string& poly_prefix) {
    json out;
    if (!sign_path.empty()) {
        save_sign_table(sign_path, calibrated_triples());
        out["sign_table"] = sign_path;
    }
    if (!cand_path.empty()) {
        save_candidates(cand_path, default_candidates());
        out["candidates"] = cand_path;
    }
    if (!poly_prefix.empty()) {
        save_polynomial(poly_prefix + "_e6.txt", reconstructed(ReconstructTarget::E6_y));
        save_polynomial(poly_prefix + "_chi12.txt", reconstructed(ReconstructTarget::Chi12_y));
        out["polynomials"] = {poly_prefix + "_e6.txt", poly_prefix + "_chi12.txt"};
    }
    out["value"] = "written";
    out["error_estimate"] = 0.0;
    out["provenance"] = "derived tables";
    out["config"] = json::object();
    emit(out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Siegel modular forms toolkit: arithmetic volume of the degree-2 moduli space"};
    app.require_subcommand(1);

    std::string form, tau_text, integrand, mode = "adaptive";
    double tolerance = 1e-5, cutoff = 20.0;
    std::uint64_t seed = 1, samples = 2'000'000;
    int n = 0, l = 0, m = 0, prime = 3;
    bool plain = false;
    std::string sign_path, cand_path, poly_prefix;

    auto* c_eval = app.add_subcommand("eval", "evaluate a form at a point");
    c_eval->add_option("form", form)->required();
    c_eval->add_option("tau", tau_text, "tau as JSON")->required();

    auto* c_red = app.add_subcommand("reduce", "reduce a point into the fundamental domain");
    c_red->add_option("tau", tau_text, "tau as JSON")->required();

    app.add_subcommand("identities", "run the splitting/Igusa/boundary suites");

    auto* c_fou = app.add_subcommand("fourier", "Fourier coefficient c(n,l,m) of a degree-2 form");
    c_fou->add_option("form", form)->required();
    c_fou->add_option("n", n)->required();
    c_fou->add_option("l", l)->required();
    c_fou->add_option("m", m)->required();

    auto* c_int = app.add_subcommand("integrate", "integrate over the degree-1 fundamental domain");
    c_int->add_option("integrand", integrand, "one | log-pet-e4 | log-pet-e6")->required();

    auto* c_roh = app.add_subcommand("rohrlich", "verify the Rohrlich-type identity for E4 or E6");
    c_roh->add_option("form", form)->required();

    auto* c_fib = app.add_subcommand("fiber", "finite-fiber solutions of the projective system");
    c_fib->add_option("--prime", prime)->required();
    c_fib->add_flag("--plain", plain, "emit plain 'p: (...)' lines only");

    app.add_subcommand("volume", "exact assembly of the arithmetic volume constant");

    auto* c_tab = app.add_subcommand("tables", "write derived tables to disk");
    c_tab->add_option("--sign-table", sign_path);
    c_tab->add_option("--candidates", cand_path);
    c_tab->add_option("--polynomials", poly_prefix, "path prefix for the reconstructed polynomials");

    for (auto* c : {c_int, c_roh}) {
        c->add_option("--tolerance", tolerance);
        c->add_option("--cusp-cutoff", cutoff);
        c->add_option("--mode", mode, "adaptive | monte_carlo");
        c->add_option("--seed", seed);
        c->add_option("--samples", samples);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand("eval")) return run_eval(form, tau_text);
        if (app.got_subcommand("reduce")) return run_reduce(tau_text);
        if (app.got_subcommand("identities")) return run_identities();
        if (app.got_subcommand("fourier")) return run_fourier(form, n, l, m);
        if (app.got_subcommand("integrate"))
            return run_integrate(integrand, integration_config(tolerance, cutoff, mode, seed, samples));
        if (app.got_subcommand("rohrlich"))
            return run_rohrlich(form, integration_config(tolerance, cutoff, mode, seed, samples));
        if (app.got_subcommand("fiber")) return run_fiber(prime, plain);
        if (app.got_subcommand("volume")) return run_volume();
        if (app.got_subcommand("tables")) return run_tables(sign_path, cand_path, poly_prefix);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
