#include "siegel/quadrature.hpp"

#include <cmath>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "siegel/numerics.hpp"

namespace siegel {

namespace {

constexpr double kPi = 3.14159265358979323846;

double arc_y(double x) { return std::sqrt(std::max(0.0, 1.0 - x * x)); }

PrecisionConfig double_eval_config() {
    PrecisionConfig cfg;
    cfg.working_digits = 15;
    cfg.series_tolerance = 1e-15;
    return cfg;
}

double lower_boundary(double x, const A1Integrand& integrand, double delta) {
    double yl = arc_y(x);
    for (const auto& sp : integrand.singular_points) {
        const double dx = x - sp[0];
        if (std::abs(dx) < delta) yl = std::max(yl, sp[1] + std::sqrt(delta * delta - dx * dx));
    }
    return yl;
}

// Excluded-mass bound per singular point: the integrand behaves like
// log r + O(1) near a simple zero, so the clipped disk carries at most
// ~ delta^2 (|log delta| + C)/8 of measure-weighted integrand.
double singular_bound(const A1Integrand& integrand, double delta) {
    const double c_point = 14.0;
    return static_cast<double>(integrand.singular_points.size()) * delta * delta *
           (std::abs(std::log(delta)) + c_point) / 8.0;
}

double tail_value(const A1Integrand& integrand, double Y) {
    if (integrand.weight == 0) return 1.0 / (4 * kPi * Y);
    return integrand.weight / (8 * kPi) * (std::log(4 * kPi * Y) + 1) / Y;
}

double tail_error(const A1Integrand& integrand, double Y) {
    if (integrand.weight == 0) return 0.0;
    // log|f| = O(e^{-2 pi y}) past the cutoff for f(i inf) = 1.
    return 1000.0 * std::exp(-2 * kPi * Y) / (4 * kPi * Y * Y);
}

IntegralResult integrate_adaptive(const A1Integrand& integrand, const IntegrationConfig& cfg) {
    using gk = boost::math::quadrature::gauss_kronrod<double, 15>;
    const double Y = cfg.cusp_cutoff;
    const double delta = cfg.exclusion_radius;
    const double inner_tol = std::min(1e-9, cfg.target_tolerance / 100);
    double max_inner_err = 0;
    auto inner = [&](double x) {
        auto fy = [&](double y) { return integrand.f(x, y) / (4 * kPi * y * y); };
        double err = 0;
        const double v = gk::integrate(fy, lower_boundary(x, integrand, delta), Y,
                                       static_cast<unsigned>(cfg.max_refinement_depth), inner_tol, &err);
        max_inner_err = std::max(max_inner_err, err);
        return v;
    };
    double outer_err = 0;
    const double v = gk::integrate(inner, -0.5, 0.5, static_cast<unsigned>(cfg.max_refinement_depth),
                                   cfg.target_tolerance / 4, &outer_err);
    IntegralResult out;
    out.tail_contribution = tail_value(integrand, Y);
    out.singular_contribution_bound = singular_bound(integrand, delta);
    out.value = v + out.tail_contribution;
    out.error_estimate = outer_err + max_inner_err + tail_error(integrand, Y) + out.singular_contribution_bound;
    if (!std::isfinite(out.value)) throw std::runtime_error("integrate_A1: non-finite value");
    return out;
}

IntegralResult integrate_monte_carlo(const A1Integrand& integrand, const IntegrationConfig& cfg) {
    const double Y = cfg.cusp_cutoff;
    const std::uint64_t chunk = 1u << 16;
    const std::uint64_t nchunks = (cfg.mc_samples + chunk - 1) / chunk;
    double sum = 0, sumsq = 0;
    std::uint64_t n = 0;
    for (std::uint64_t c = 0; c < nchunks; ++c) {
        std::mt19937_64 rng(cfg.rng_seed + 0x9e3779b97f4a7c15ull * (c + 1));
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        double local = 0, localsq = 0;
        const std::uint64_t todo = std::min(chunk, cfg.mc_samples - c * chunk);
        for (std::uint64_t i = 0; i < todo; ++i) {
            const double x = uni(rng) - 0.5;
            const double u = uni(rng);
            const double c0 = arc_y(x);
            // y drawn from density 1/y^2 restricted to [c0, Y]
            const double y = 1.0 / ((1.0 - u) / c0 + u / Y);
            const double w = (1.0 / c0 - 1.0 / Y) / (4 * kPi);
            const double v = integrand.f(x, y) * w;
            local += v;
            localsq += v * v;
        }
        sum += local;
        sumsq += localsq;
        n += todo;
    }
    const double mean = sum / static_cast<double>(n);
    const double var = std::max(0.0, sumsq / static_cast<double>(n) - mean * mean);
    IntegralResult out;
    out.tail_contribution = tail_value(integrand, Y);
    out.value = mean + out.tail_contribution;
    out.error_estimate = 3 * std::sqrt(var / static_cast<double>(n)) + tail_error(integrand, Y);
    out.singular_contribution_bound = 0;  // no exclusion in this mode
    return out;
}

}  // namespace

A1Integrand constant_one_integrand() {
    A1Integrand out;
    out.f = [](double, double) { return 1.0; };
    out.weight = 0;
    out.label = "one";
    return out;
}

A1Integrand log_petersson_integrand(FormName name) {
    if (name != FormName::E4 && name != FormName::E6)
        throw std::invalid_argument("log_petersson_integrand: needs a form with f(i inf) = 1");
    A1Integrand out;
    const PrecisionConfig ecfg = double_eval_config();
    out.f = [name, ecfg](double x, double y) {
        return std::log(petersson_norm<double>(name, SiegelPoint1<double>(x, y), ecfg));
    };
    out.weight = form_spec(name, 1).weight;
    if (name == FormName::E6) {
        out.singular_points = {{0.0, 1.0}};
        out.label = "log_pet_E6";
    } else {
        const double s3 = std::sqrt(3.0) / 2;
        out.singular_points = {{-0.5, s3}, {0.5, s3}};
        out.label = "log_pet_E4";
    }
    return out;
}

IntegralResult integrate_A1(const A1Integrand& integrand, const IntegrationConfig& cfg) {
    cfg.validate();
    if (cfg.mode == QuadratureMode::MonteCarlo) return integrate_monte_carlo(integrand, cfg);
    return integrate_adaptive(integrand, cfg);
}

double rohrlich_formula(int weight, const std::vector<std::pair<double, double>>& divisor,
                        const PrecisionConfig& cfg) {
    const Real zm1 = Real(-1) / 12;
    const Real zp1 = zeta_prime_negative(1, cfg);
    Real acc = -Real(weight) * (zm1 / 2 + zp1);
    for (const auto& [ord, log_norm] : divisor) acc -= Real(ord) * Real(log_norm) / 12;
    return static_cast<double>(acc);
}

double rohrlich_rhs(FormName name, const PrecisionConfig& cfg) {
    if (name != FormName::E4 && name != FormName::E6)
        throw std::invalid_argument("rohrlich_rhs: needs a form with f(i inf) = 1 and known divisor");
    const EllipticPoint pt = (name == FormName::E6) ? EllipticPoint::I : EllipticPoint::Omega;
    const VanishingOrder ord = elliptic_vanishing_order(name, pt, cfg);
    SiegelPoint1<Real> tau0 = (pt == EllipticPoint::I)
                                  ? SiegelPoint1<Real>(Real(0), Real(1))
                                  : SiegelPoint1<Real>(Real(-1) / 2, sqrt(Real(3)) / 2);
    const double log_norm = static_cast<double>(log(petersson_norm(FormName::Delta, tau0, cfg)));
    const double orbifold = static_cast<double>(ord.function_order) / ord.stabilizer;
    return rohrlich_formula(form_spec(name, 1).weight, {{orbifold, log_norm}}, cfg);
}

TermBResult term_B_parts(const IntegrationConfig& cfg) {
    PrecisionConfig pcfg;
    TermBResult out;

    const IntegralResult i6 = integrate_A1(log_petersson_integrand(FormName::E6), cfg);
    out.humbert_part = i6;
    out.humbert_part.value = -8 * i6.value;
    out.humbert_part.error_estimate = 8 * i6.error_estimate;

    const IntegralResult i4 = integrate_A1(log_petersson_integrand(FormName::E4), cfg);
    const SiegelPoint1<Real> at_i(Real(0), Real(1));
    const double log_e4_i = static_cast<double>(log(petersson_norm(FormName::E4, at_i, pcfg)));
    out.e4_part = i4;
    out.e4_part.value = -6 * i4.value - 0.5 * log_e4_i;
    out.e4_part.error_estimate = 6 * i4.error_estimate;

    const SiegelPoint1<Real> omega(Real(-1) / 2, sqrt(Real(3)) / 2);
    const auto diag = SiegelPoint2<Real>::diagonal(at_i, omega);
    out.point_part = -static_cast<double>(log(petersson_norm(FormName::Chi12, diag, pcfg))) / 6;

    out.value = out.humbert_part.value + out.e4_part.value + out.point_part;
    out.error_estimate = out.humbert_part.error_estimate + out.e4_part.error_estimate;
    return out;
}

double term_B_numeric(const IntegrationConfig& cfg) { return term_B_parts(cfg).value; }

}  // namespace siegel
