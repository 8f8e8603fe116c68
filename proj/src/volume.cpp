#include "siegel/volume.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

namespace siegel {

namespace {

// 2880 * zeta(-3) * zeta(-1) = 2880 * (1/120) * (-1/12) = -2.
const Rational kPrefactorA = Rational(2880) * zeta_negative(3) * zeta_negative(1);

ConstantCombo combo_of(Rational one, Rational z1, Rational z3, Rational log2, Rational log3) {
    ConstantCombo c;
    c.set(BasisSymbol::One, std::move(one));
    c.set(BasisSymbol::Z1, std::move(z1));
    c.set(BasisSymbol::Z3, std::move(z3));
    c.set(BasisSymbol::Log2, std::move(log2));
    c.set(BasisSymbol::Log3, std::move(log3));
    return c;
}

}  // namespace

ConstantCombo term_A() {
    return combo_of(kPrefactorA * Rational(4, 3), kPrefactorA * Rational(-1), kPrefactorA * Rational(2),
                    kPrefactorA * Rational(6, 5), Rational(0));
}

ConstantCombo term_B() {
    return combo_of(Rational(-3), Rational(-6), Rational(0), Rational(-4, 3), Rational(-2, 3));
}

ConstantCombo a1_volume_reference() {
    // zeta(-1) (Z1 + 1/2) = -(1/24) - (1/12) Z1
    return combo_of(zeta_negative(1) / 2, zeta_negative(1), Rational(0), Rational(0), Rational(0));
}

VolumeReport assemble(const PrecisionConfig& cfg) {
    VolumeReport r;
    r.term_A = term_A();
    r.term_B = term_B();
    r.assembled = (r.term_A + r.term_B) * Rational(1, 2880);

    const Rational zz = zeta_negative(3) * zeta_negative(1);  // -1/1440
    r.theorem_stated = combo_of(zz * Rational(17, 6), zz * Rational(2), zz * Rational(2), Rational(-56, 15),
                                Rational(-2, 3));

    r.numeric_term_A = combo_eval(r.term_A, cfg);
    r.numeric_term_B = combo_eval(r.term_B, cfg);
    r.numeric_assembled = combo_eval(r.assembled, cfg);
    r.numeric_theorem_stated = combo_eval(r.theorem_stated, cfg);
    r.c2_c3_computed = {r.assembled.coeff(BasisSymbol::Log2), r.assembled.coeff(BasisSymbol::Log3)};

    for (int i = 0; i < 5; ++i) {
        const auto s = static_cast<BasisSymbol>(i);
        if (r.assembled.coeff(s) != r.theorem_stated.coeff(s))
            r.discrepancies.push_back({s, r.assembled.coeff(s), r.theorem_stated.coeff(s)});
    }
    return r;
}

namespace {

nlohmann::json combo_json(const ConstantCombo& c) {
    nlohmann::json j;
    for (int i = 0; i < 5; ++i) {
        const auto s = static_cast<BasisSymbol>(i);
        j[basis_symbol_name(s)] = rational_to_string(c.coeff(s));
    }
    return j;
}

std::string real_str(const Real& v) {
    std::ostringstream os;
    os.precision(30);
    os << v;
    return os.str();
}

}  // namespace

std::string report_to_json(const VolumeReport& report, const PrecisionConfig& cfg) {
    nlohmann::json j;
    j["term_A"] = combo_json(report.term_A);
    j["term_B"] = combo_json(report.term_B);
    j["assembled"] = combo_json(report.assembled);
    j["theorem_stated"] = combo_json(report.theorem_stated);
    j["numeric_values"] = {
        {"term_A", real_str(report.numeric_term_A)},
        {"term_B", real_str(report.numeric_term_B)},
        {"assembled", real_str(report.numeric_assembled)},
        {"theorem_stated", real_str(report.numeric_theorem_stated)},
    };
    j["c2_c3_computed"] = {rational_to_string(report.c2_c3_computed.first),
                           rational_to_string(report.c2_c3_computed.second)};
    j["finite_part"] = "rational multiple of log 2 and log 3, undetermined";
    nlohmann::json d = nlohmann::json::array();
    for (const auto& disc : report.discrepancies) {
        d.push_back({{"symbol", basis_symbol_name(disc.symbol)},
                     {"assembled", rational_to_string(disc.assembled)},
                     {"stated", rational_to_string(disc.stated)}});
    }
    j["discrepancies"] = d;
    j["config"] = {{"working_digits", cfg.working_digits},
                   {"series_tolerance", cfg.series_tolerance},
                   {"quadrature_tolerance", cfg.quadrature_tolerance}};
    return j.dump(2);
}

}  // namespace siegel
