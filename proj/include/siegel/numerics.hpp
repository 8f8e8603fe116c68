#pragma once

#include <array>
#include <string>
#include <utility>

#include "siegel/scalar.hpp"

namespace siegel {

// zeta(-n) for n in {1,3}, exact via the Bernoulli formula.
Rational zeta_negative(int n);

// (zeta(s), zeta'(s)) for real s > 1 by Euler-Maclaurin summation with a
// first-omitted-term tail check against cfg.series_tolerance.
std::pair<Real, Real> zeta_and_derivative(const Real& s, const PrecisionConfig& cfg);

// zeta'(-n) for n in {1,3}, from the differentiated functional equation
//   zeta'(-n) = zeta(-n) * (log(2 pi) - psi(1+n) - zeta'(1+n)/zeta(1+n)).
Real zeta_prime_negative(int n, const PrecisionConfig& cfg);

// Basis of the exact constant bookkeeping: 1, zeta'(-1)/zeta(-1),
// zeta'(-3)/zeta(-3), log 2, log 3.
enum class BasisSymbol { One = 0, Z1 = 1, Z3 = 2, Log2 = 3, Log3 = 4 };

inline const char* basis_symbol_name(BasisSymbol s) {
    switch (s) {
        case BasisSymbol::One: return "ONE";
        case BasisSymbol::Z1: return "Z1";
        case BasisSymbol::Z3: return "Z3";
        case BasisSymbol::Log2: return "LOG2";
        default: return "LOG3";
    }
}

// Exact rational linear combination over the five basis symbols. All ring
// operations are exact; combo_eval is the only lossy step.
class ConstantCombo {
  public:
    ConstantCombo() = default;

    const Rational& coeff(BasisSymbol s) const { return c_[static_cast<std::size_t>(s)]; }
    void set(BasisSymbol s, Rational v) { c_[static_cast<std::size_t>(s)] = std::move(v); }

    ConstantCombo& operator+=(const ConstantCombo& o) {
        for (std::size_t i = 0; i < 5; ++i) c_[i] += o.c_[i];
        return *this;
    }
    ConstantCombo& operator-=(const ConstantCombo& o) {
        for (std::size_t i = 0; i < 5; ++i) c_[i] -= o.c_[i];
        return *this;
    }
    ConstantCombo& operator*=(const Rational& q) {
        for (auto& v : c_) v *= q;
        return *this;
    }
    friend ConstantCombo operator+(ConstantCombo a, const ConstantCombo& b) { return a += b; }
    friend ConstantCombo operator-(ConstantCombo a, const ConstantCombo& b) { return a -= b; }
    friend ConstantCombo operator*(ConstantCombo a, const Rational& q) { return a *= q; }
    friend ConstantCombo operator*(const Rational& q, ConstantCombo a) { return a *= q; }
    friend bool operator==(const ConstantCombo&, const ConstantCombo&) = default;

    std::string to_string() const;

  private:
    std::array<Rational, 5> c_{};
};

// Numeric value of the five basis constants at working precision.
std::array<Real, 5> basis_values(const PrecisionConfig& cfg);

Real combo_eval(const ConstantCombo& c, const PrecisionConfig& cfg);

std::string rational_to_string(const Rational& q);

}  // namespace siegel
