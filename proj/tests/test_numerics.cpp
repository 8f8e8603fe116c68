#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "siegel/numerics.hpp"

using namespace siegel;

namespace {

// Independent oracle: direct summation to 1e6 terms with the integral and
// half-term tail corrections, in double precision (good to ~1e-12).
double zeta_direct(double s) {
    const int N = 1000000;
    double acc = 0;
    for (int n = N - 1; n >= 1; --n) acc += std::pow(n, -s);
    return acc + std::pow(N, 1 - s) / (s - 1) + 0.5 * std::pow(N, -s);
}

double zeta_prime_direct(double s) {
    const int N = 1000000;
    double acc = 0;
    for (int n = N - 1; n >= 2; --n) acc -= std::log(n) * std::pow(n, -s);
    const double lnN = std::log(N);
    acc += -lnN * std::pow(N, 1 - s) / (s - 1) - std::pow(N, 1 - s) / ((s - 1) * (s - 1));
    acc += -0.5 * lnN * std::pow(N, -s);
    return acc;
}

double to_d(const Real& v) { return static_cast<double>(v); }

Rational rat(long n, long d) { return Rational(n, d); }

}  // namespace

TEST_CASE("zeta at negative odd integers is exact") {
    CHECK(zeta_negative(1) == rat(-1, 12));
    CHECK(zeta_negative(3) == rat(1, 120));
    CHECK_THROWS_AS(zeta_negative(5), std::invalid_argument);

    // Oracle: functional equation at s = 2 resp. 4 with directly summed zeta.
    const double pi = 3.14159265358979323846;
    const double z2 = zeta_direct(2.0);
    const double zm1 = 0.5 * std::pow(pi, -2) * std::sin(-pi / 2) * 1.0 * z2;  // Gamma(2) = 1
    CHECK(std::abs(zm1 - (-1.0 / 12)) < 1e-12);
    const double z4 = zeta_direct(4.0);
    const double zm3 = std::pow(2, -3) * std::pow(pi, -4) * std::sin(-3 * pi / 2) * 6.0 * z4;  // Gamma(4) = 6
    CHECK(std::abs(zm3 - 1.0 / 120) < 1e-12);
}

TEST_CASE("Euler-Maclaurin zeta and derivative match the summation oracle") {
    PrecisionConfig cfg;
    const auto [z2, dz2] = zeta_and_derivative(Real(2), cfg);
    CHECK(std::abs(to_d(z2) - zeta_direct(2.0)) < 1e-12);
    CHECK(std::abs(to_d(dz2) - zeta_prime_direct(2.0)) < 1e-10);
    CHECK(std::abs(to_d(z2) - 1.644934066848226436) < 1e-14);

    const auto [z4, dz4] = zeta_and_derivative(Real(4), cfg);
    CHECK(std::abs(to_d(z4) - zeta_direct(4.0)) < 1e-12);
    CHECK(std::abs(to_d(dz4) - zeta_prime_direct(4.0)) < 1e-10);

    CHECK_THROWS_AS(zeta_and_derivative(Real(1), cfg), std::domain_error);
}

TEST_CASE("zeta' from Euler-Maclaurin matches central finite differences") {
    PrecisionConfig cfg;
    const Real h("1e-6");
    for (double s : {2.0, 3.0, 4.0}) {
        const auto [z, dz] = zeta_and_derivative(Real(s), cfg);
        const auto [zp, dzp] = zeta_and_derivative(Real(s) + h, cfg);
        const auto [zm, dzm] = zeta_and_derivative(Real(s) - h, cfg);
        const Real fd = (zp - zm) / (2 * h);
        CHECK(to_d(abs(dz - fd)) < 1e-7);  // 6+ digits
    }
}

TEST_CASE("zeta' at negative odd integers") {
    PrecisionConfig cfg;
    // Frozen from a 55-digit functional-equation oracle run.
    const Real zp1_ref("-0.165421143700450929213919660242780642764");
    const Real zp3_ref("0.005378576357774301144416974210413842895664");
    CHECK(to_d(abs(zeta_prime_negative(1, cfg) - zp1_ref)) < 1e-30);
    CHECK(to_d(abs(zeta_prime_negative(3, cfg) - zp3_ref)) < 1e-30);
    CHECK_THROWS_AS(zeta_prime_negative(5, cfg), std::invalid_argument);
}

TEST_CASE("zeta consistency through the functional equation") {
    PrecisionConfig cfg;
    const auto [z2, dz2] = zeta_and_derivative(Real(2), cfg);
    const Real pi = pi_v<Real>();
    const Real zm1 = Real(1) / 2 / (pi * pi) * Real(-1) * z2;  // sin(-pi/2) Gamma(2) = -1
    CHECK(to_d(abs(zm1 - Real(-1) / 12)) < 1e-12);
}

TEST_CASE("combo ring laws hold exactly") {
    PrecisionConfig cfg;
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(-40, 40), den(1, 12);
    for (int rep = 0; rep < 25; ++rep) {
        ConstantCombo x, y;
        for (int i = 0; i < 5; ++i) {
            x.set(static_cast<BasisSymbol>(i), rat(num(rng), den(rng)));
            y.set(static_cast<BasisSymbol>(i), rat(num(rng), den(rng)));
        }
        const Real ex = combo_eval(x, cfg), ey = combo_eval(y, cfg);
        CHECK(to_d(abs(combo_eval(x + y, cfg) - (ex + ey))) < 1e-38);
        const Rational q = rat(num(rng), den(rng));
        const ConstantCombo sx = q * x;
        for (int i = 0; i < 5; ++i)
            CHECK(sx.coeff(static_cast<BasisSymbol>(i)) == q * x.coeff(static_cast<BasisSymbol>(i)));
    }
}

TEST_CASE("combo evaluation examples") {
    PrecisionConfig cfg;
    CHECK(to_d(combo_eval(ConstantCombo{}, cfg)) == 0.0);
    ConstantCombo one;
    one.set(BasisSymbol::One, 1);
    CHECK(to_d(abs(combo_eval(one, cfg) - 1)) == 0.0);
    ConstantCombo z1;
    z1.set(BasisSymbol::Z1, 1);
    const Real ref("1.985053724405411150567035922913367713168");
    CHECK(to_d(abs(combo_eval(z1, cfg) - ref)) < 1e-30);
    // equality semantics: equal iff all five coefficients equal
    ConstantCombo a, b;
    a.set(BasisSymbol::Log2, rat(1, 3));
    b.set(BasisSymbol::Log2, rat(2, 6));
    CHECK(a == b);
    b.set(BasisSymbol::Log3, rat(1, 1000000));
    CHECK(a != b);
}

TEST_CASE("precision config invariants") {
    PrecisionConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.working_digits = 14;
    CHECK_THROWS(cfg.validate());
    cfg.working_digits = 50;
    cfg.series_tolerance = 2.0;
    CHECK_THROWS(cfg.validate());
}
