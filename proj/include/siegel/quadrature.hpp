#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "siegel/forms.hpp"
#include "siegel/scalar.hpp"

namespace siegel {

enum class QuadratureMode { Adaptive, MonteCarlo };

struct IntegrationConfig {
    double cusp_cutoff = 20.0;         // Y
    double target_tolerance = 1e-5;
    int max_refinement_depth = 12;
    double exclusion_radius = 0.02;    // delta
    QuadratureMode mode = QuadratureMode::Adaptive;
    std::uint64_t rng_seed = 1;
    std::uint64_t mc_samples = 2'000'000;

    void validate() const {
        if (!(cusp_cutoff > 2)) throw std::invalid_argument("cusp_cutoff must be > 2");
        if (!(exclusion_radius > 0 && exclusion_radius < 0.1))
            throw std::invalid_argument("exclusion_radius must be in (0, 0.1)");
        if (!(target_tolerance > 0)) throw std::invalid_argument("target_tolerance must be positive");
        if (max_refinement_depth <= 0) throw std::invalid_argument("max_refinement_depth must be positive");
    }
};

struct IntegralResult {
    double value = 0;
    double error_estimate = 0;
    double tail_contribution = 0;
    double singular_contribution_bound = 0;
};

// Integrand over the standard SL2(Z) fundamental domain with respect to
// dmu = dx dy/(4 pi y^2). `weight` drives the closed-form cusp tail for
// log-Petersson integrands of forms with f(i infinity) = 1; weight 0 means
// the constant-volume tail 1/(4 pi Y).
struct A1Integrand {
    std::function<double(double x, double y)> f;
    int weight = 0;
    std::vector<std::array<double, 2>> singular_points;
    const char* label = "";
};

A1Integrand constant_one_integrand();
A1Integrand log_petersson_integrand(FormName name);  // E4 or E6

IntegralResult integrate_A1(const A1Integrand& integrand, const IntegrationConfig& cfg);

// Right-hand side of the Rohrlich-type identity,
//   -k (zeta(-1)/2 + zeta'(-1)) - (1/12) sum ord * log||Delta(tau_0)||,
// with divisor data as (orbifold order, log||Delta(tau_0)||) pairs.
double rohrlich_formula(int weight, const std::vector<std::pair<double, double>>& divisor,
                        const PrecisionConfig& cfg);

// Divisor data from elliptic_vanishing_order; only E4 and E6 have the
// f(i infinity) = 1 normalization the identity needs.
double rohrlich_rhs(FormName name, const PrecisionConfig& cfg);

struct TermBResult {
    IntegralResult humbert_part;    // -8 * int log||E6||
    IntegralResult e4_part;         // -6 * int log||E4|| - (1/2) log||E4(i)||
    double point_part = 0;          // -(1/6) log||chi12(diag(i, omega))||
    double value = 0;
    double error_estimate = 0;
};

TermBResult term_B_parts(const IntegrationConfig& cfg);
double term_B_numeric(const IntegrationConfig& cfg);

}  // namespace siegel
