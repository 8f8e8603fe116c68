#pragma once

#include <string>
#include <vector>

#include "siegel/numerics.hpp"

namespace siegel {

// Exact combos for the two terms of the complex-fibre contribution and their
// assembly into the arithmetic volume constant.
ConstantCombo term_A();  // 2880 zeta(-3) zeta(-1) (4/3 + 2 Z3 - Z1 + (6/5) log 2)
ConstantCombo term_B();  // -3 - 6 Z1 - (4/3) log 2 - (2/3) log 3

// Degree-1 reference constant zeta(-1)(Z1 + 1/2).
ConstantCombo a1_volume_reference();

struct CoefficientDiscrepancy {
    BasisSymbol symbol;
    Rational assembled;
    Rational stated;
};

struct VolumeReport {
    ConstantCombo term_A;
    ConstantCombo term_B;
    ConstantCombo assembled;        // (term_A + term_B) / 2880
    ConstantCombo theorem_stated;   // zeta(-3)zeta(-1)(17/6 + 2 Z3 + 2 Z1) - (56/15)log2 - (2/3)log3
    Real numeric_term_A;
    Real numeric_term_B;
    Real numeric_assembled;
    Real numeric_theorem_stated;
    std::pair<Rational, Rational> c2_c3_computed;  // LOG2, LOG3 coefficients of assembled
    std::vector<CoefficientDiscrepancy> discrepancies;
};

VolumeReport assemble(const PrecisionConfig& cfg);

std::string report_to_json(const VolumeReport& report, const PrecisionConfig& cfg);

}  // namespace siegel
