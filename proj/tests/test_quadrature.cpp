#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "siegel/numerics.hpp"
#include "siegel/quadrature.hpp"

using namespace siegel;

namespace {

IntegrationConfig fast_config() {
    IntegrationConfig cfg;
    cfg.cusp_cutoff = 20;
    cfg.target_tolerance = 1e-5;
    cfg.max_refinement_depth = 15;
    cfg.exclusion_radius = 0.002;
    return cfg;
}

// Frozen from the closed-form oracle (zeta'(-1) and the Gamma(1/4) values):
//   int log||E6|| dmu = -6(zeta(-1)/2 + zeta'(-1)) - (1/24) log||Delta(i)||
//   int log||E4|| dmu = -4(zeta(-1)/2 + zeta'(-1)) - (1/36) log||Delta(omega)||
constexpr double kIntLogE6 = 0.8734428707093008596932372576425842005202;
constexpr double kIntLogE4 = 0.5787670796340244408829601342450245350741;
constexpr double kTermB = -16.56692677962446711022202185737279217288;

}  // namespace

TEST_CASE("volume of the fundamental domain is 1/12") {
    const auto r = integrate_A1(constant_one_integrand(), fast_config());
    CHECK(std::abs(r.value - 1.0 / 12) < 1e-6);
    CHECK(r.error_estimate < 1e-4);
    CHECK(r.tail_contribution > 0);
}

TEST_CASE("Rohrlich identity for E6 and E4 via adaptive quadrature") {
    PrecisionConfig pcfg;
    const auto cfg = fast_config();

    const auto r6 = integrate_A1(log_petersson_integrand(FormName::E6), cfg);
    CHECK(std::abs(r6.value - kIntLogE6) < 1e-4);
    CHECK(std::abs(r6.value - rohrlich_rhs(FormName::E6, pcfg)) < 1e-4);

    const auto r4 = integrate_A1(log_petersson_integrand(FormName::E4), cfg);
    CHECK(std::abs(r4.value - kIntLogE4) < 1e-4);
    CHECK(std::abs(r4.value - rohrlich_rhs(FormName::E4, pcfg)) < 1e-4);
}

TEST_CASE("rohrlich formula edge cases") {
    PrecisionConfig pcfg;
    // weight-0 constant with empty divisor integrates to zero
    CHECK(rohrlich_formula(0, {}, pcfg) == 0.0);
    CHECK_THROWS_AS(rohrlich_rhs(FormName::Chi10, pcfg), std::invalid_argument);
    // zeta-part k-scaling: 6*(I_E4-part) = 4*(I_E6-part) after removing the
    // point contributions
    PrecisionConfig cfg;
    const SiegelPoint1<Real> at_i(Real(0), Real(1));
    const SiegelPoint1<Real> omega(Real(-1) / 2, sqrt(Real(3)) / 2);
    const double log_di = static_cast<double>(log(petersson_norm(FormName::Delta, at_i, cfg)));
    const double log_dw = static_cast<double>(log(petersson_norm(FormName::Delta, omega, cfg)));
    const double zeta6 = rohrlich_rhs(FormName::E6, cfg) + log_di / 24;
    const double zeta4 = rohrlich_rhs(FormName::E4, cfg) + log_dw / 36;
    CHECK(std::abs(4 * zeta6 - 6 * zeta4) < 1e-12);
}

TEST_CASE("tolerance honesty") {
    auto cfg = fast_config();
    cfg.target_tolerance = 1e-4;
    auto tight = cfg;
    tight.target_tolerance = 5e-5;
    for (const auto& integrand :
         {constant_one_integrand(), log_petersson_integrand(FormName::E6), log_petersson_integrand(FormName::E4)}) {
        const auto a = integrate_A1(integrand, cfg);
        const auto b = integrate_A1(integrand, tight);
        CHECK(std::abs(a.value - b.value) < a.error_estimate);
    }
}

TEST_CASE("cusp tail: moving the cutoff from 10 to 40 is invisible") {
    auto c10 = fast_config();
    c10.cusp_cutoff = 10;
    auto c40 = fast_config();
    c40.cusp_cutoff = 40;
    const auto a = integrate_A1(log_petersson_integrand(FormName::E6), c10);
    const auto b = integrate_A1(log_petersson_integrand(FormName::E6), c40);
    CHECK(std::abs(a.value - b.value) < 1e-6);
}

TEST_CASE("adaptive and Monte Carlo modes agree") {
    auto acfg = fast_config();
    auto mcfg = fast_config();
    mcfg.mode = QuadratureMode::MonteCarlo;
    mcfg.mc_samples = 1'000'000;
    mcfg.rng_seed = 99;
    for (const auto& integrand : {constant_one_integrand(), log_petersson_integrand(FormName::E6)}) {
        const auto a = integrate_A1(integrand, acfg);
        const auto m = integrate_A1(integrand, mcfg);
        CHECK(std::abs(a.value - m.value) < a.error_estimate + m.error_estimate);
        CHECK(m.error_estimate < 0.01);
    }
    // fixed seed reproduces bit-identical results
    const auto m1 = integrate_A1(log_petersson_integrand(FormName::E6), mcfg);
    const auto m2 = integrate_A1(log_petersson_integrand(FormName::E6), mcfg);
    CHECK(m1.value == m2.value);
}

TEST_CASE("singularity exclusion robustness") {
    auto big = fast_config();
    big.exclusion_radius = 0.008;
    auto small = fast_config();
    small.exclusion_radius = 0.002;
    for (const auto& integrand : {log_petersson_integrand(FormName::E6), log_petersson_integrand(FormName::E4)}) {
        const auto a = integrate_A1(integrand, big);
        const auto b = integrate_A1(integrand, small);
        CHECK(std::abs(a.value - b.value) < a.singular_contribution_bound);
    }
}

TEST_CASE("term (B) assembles to the exact constant") {
    PrecisionConfig pcfg;
    const auto parts = term_B_parts(fast_config());

    // H-bar part alone equals -8 int log||E6||
    CHECK(std::abs(parts.humbert_part.value - (-8 * kIntLogE6)) < 1e-3);

    // exact combo value -3 - 6 Z1 - (4/3) log 2 - (2/3) log 3
    ConstantCombo exact;
    exact.set(BasisSymbol::One, Rational(-3));
    exact.set(BasisSymbol::Z1, Rational(-6));
    exact.set(BasisSymbol::Log2, Rational(-4, 3));
    exact.set(BasisSymbol::Log3, Rational(-2, 3));
    const double exact_value = static_cast<double>(combo_eval(exact, pcfg));
    CHECK(std::abs(exact_value - kTermB) < 1e-25);
    CHECK(std::abs(parts.value - exact_value) < 1e-3);
    CHECK(std::abs(term_B_numeric(fast_config()) - parts.value) == 0.0);
}

TEST_CASE("integration config invariants") {
    IntegrationConfig cfg;
    cfg.cusp_cutoff = 1.5;
    CHECK_THROWS(cfg.validate());
    cfg = IntegrationConfig{};
    cfg.exclusion_radius = 0.5;
    CHECK_THROWS(cfg.validate());
}
