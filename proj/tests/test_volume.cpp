#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include "siegel/volume.hpp"

using namespace siegel;

namespace {

double to_d(const Real& v) { return static_cast<double>(v); }

}  // namespace

TEST_CASE("term (A): exact coefficients from Kudla's constant") {
    const ConstantCombo a = term_A();
    CHECK(a.coeff(BasisSymbol::One) == Rational(-8, 3));
    CHECK(a.coeff(BasisSymbol::Z1) == Rational(2));
    CHECK(a.coeff(BasisSymbol::Z3) == Rational(-4));   // 2880 z(-3) z(-1) * 2
    CHECK(a.coeff(BasisSymbol::Log2) == Rational(-12, 5));
    CHECK(a.coeff(BasisSymbol::Log3) == Rational(0));

    // numeric value equals -2 * (4/3 + 2 Z3 - Z1 + (6/5) log 2)
    PrecisionConfig cfg;
    const auto b = basis_values(cfg);
    const Real bracket = Real(4) / 3 + 2 * b[2] - b[1] + Real(6) / 5 * b[3];
    CHECK(to_d(abs(combo_eval(a, cfg) + 2 * bracket)) < 1e-35);
    CHECK(combo_eval(a, cfg) < 0);
}

TEST_CASE("term (B): exact coefficients") {
    const ConstantCombo b = term_B();
    CHECK(b.coeff(BasisSymbol::One) == Rational(-3));
    CHECK(b.coeff(BasisSymbol::Z1) == Rational(-6));
    CHECK(b.coeff(BasisSymbol::Z3) == Rational(0));
    CHECK(b.coeff(BasisSymbol::Log2) == Rational(-4, 3));
    CHECK(b.coeff(BasisSymbol::Log3) == Rational(-2, 3));
    PrecisionConfig cfg;
    const Real frozen("-16.56692677962446711022202185737279217288");
    CHECK(to_d(abs(combo_eval(b, cfg) - frozen)) < 1e-30);
}

TEST_CASE("exact assembly of the volume constant") {
    PrecisionConfig cfg;
    const VolumeReport r = assemble(cfg);

    CHECK(r.assembled.coeff(BasisSymbol::One) == Rational(-17, 8640));
    CHECK(r.assembled.coeff(BasisSymbol::Z1) == Rational(-1, 720));
    CHECK(r.assembled.coeff(BasisSymbol::Z3) == Rational(-1, 720));
    CHECK(r.assembled.coeff(BasisSymbol::Log2) == Rational(-7, 5400));
    CHECK(r.assembled.coeff(BasisSymbol::Log3) == Rational(-1, 4320));

    // grouping identity: the ONE coefficient reproduces the 17/6 grouping
    CHECK(r.assembled.coeff(BasisSymbol::One) == zeta_negative(3) * zeta_negative(1) * Rational(17, 6));
    // 4/3 + (-3)/(2880 z(-3) z(-1)) = 4/3 + 3/2 = 17/6
    CHECK(Rational(4, 3) + Rational(-3) / (Rational(2880) * zeta_negative(3) * zeta_negative(1)) ==
          Rational(17, 6));

    CHECK(r.c2_c3_computed.first == Rational(-7, 5400));
    CHECK(r.c2_c3_computed.second == Rational(-1, 4320));

    // the log coefficients differ from the stated -56/15 and -2/3; the zeta
    // part agrees
    REQUIRE(r.discrepancies.size() == 2);
    CHECK(r.discrepancies[0].symbol == BasisSymbol::Log2);
    CHECK(r.discrepancies[0].stated == Rational(-56, 15));
    CHECK(r.discrepancies[1].symbol == BasisSymbol::Log3);
    CHECK(r.discrepancies[1].stated == Rational(-2, 3));
    CHECK(r.theorem_stated.coeff(BasisSymbol::One) == r.assembled.coeff(BasisSymbol::One));
    CHECK(r.theorem_stated.coeff(BasisSymbol::Z1) == r.assembled.coeff(BasisSymbol::Z1));
    CHECK(r.theorem_stated.coeff(BasisSymbol::Z3) == r.assembled.coeff(BasisSymbol::Z3));

    // pure rational arithmetic: a second run is identical
    const VolumeReport r2 = assemble(cfg);
    CHECK(r2.assembled == r.assembled);
    CHECK(r2.term_A == r.term_A);
    CHECK(r2.term_B == r.term_B);
    CHECK(report_to_json(r2, cfg) == report_to_json(r, cfg));
}

TEST_CASE("degree-1 reference constant") {
    const ConstantCombo a1 = a1_volume_reference();
    CHECK(a1.coeff(BasisSymbol::One) == Rational(-1, 24));
    CHECK(a1.coeff(BasisSymbol::Z1) == Rational(-1, 12));
    PrecisionConfig cfg;
    const Real frozen("-0.2070878103671175958805863269094473094307");
    CHECK(to_d(abs(combo_eval(a1, cfg) - frozen)) < 1e-30);
}

TEST_CASE("report serialization carries the exact data") {
    PrecisionConfig cfg;
    const VolumeReport r = assemble(cfg);
    const auto j = nlohmann::json::parse(report_to_json(r, cfg));
    CHECK(j["assembled"]["ONE"] == "-17/8640");
    CHECK(j["assembled"]["Z1"] == "-1/720");
    CHECK(j["assembled"]["LOG2"] == "-7/5400");
    CHECK(j["theorem_stated"]["LOG2"] == "-56/15");
    CHECK(j["c2_c3_computed"][0] == "-7/5400");
    CHECK(j["c2_c3_computed"][1] == "-1/4320");
    CHECK(j["discrepancies"].size() == 2);
    CHECK(j["finite_part"] == "rational multiple of log 2 and log 3, undetermined");
    CHECK(j.contains("numeric_values"));
    CHECK(j["config"]["working_digits"] == 50);
}
