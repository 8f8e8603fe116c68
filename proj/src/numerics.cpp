#include "siegel/numerics.hpp"

#include <sstream>
#include <stdexcept>
#include <vector>

#include <boost/math/special_functions/bernoulli.hpp>

namespace siegel {

Rational zeta_negative(int n) {
    // zeta(-n) = -B_{n+1}/(n+1); only the two arguments the assembly needs.
    if (n == 1) return Rational(-1, 12);
    if (n == 3) return Rational(1, 120);
    throw std::invalid_argument("unsupported zeta argument");
}

std::pair<Real, Real> zeta_and_derivative(const Real& s, const PrecisionConfig& cfg) {
    using std::exp;
    using std::log;
    using std::pow;
    if (!(s > 1)) throw std::domain_error("zeta_and_derivative: s must be > 1");

    const int N = std::max(24, cfg.working_digits);
    const int jcap = 40;
    Real z(0), dz(0);
    for (int n = 1; n < N; ++n) {
        const Real ln = log(Real(n));
        const Real t = exp(-s * ln);
        z += t;
        dz -= ln * t;
    }
    const Real lnN = log(Real(N));
    const Real Npow = exp(-s * lnN);  // N^{-s}
    // Integral term N^{1-s}/(s-1) and the boundary term N^{-s}/2.
    z += Npow * Real(N) / (s - 1) + Npow / 2;
    dz += -lnN * Npow * Real(N) / (s - 1) - Npow * Real(N) / ((s - 1) * (s - 1)) - lnN * Npow / 2;

    // Correction terms B_{2j}/(2j)! * (s)_{2j-1} * N^{-s-2j+1}, differentiated
    // by the product rule; stop once the first omitted term clears the target.
    Real poch = s;         // (s)(s+1)...(s+2j-2), starts at j=1 as s
    Real dpoch_sum(1 / s); // sum 1/(s+i) over the factors
    Real tol(cfg.series_tolerance);
    for (int j = 1; j <= jcap; ++j) {
        const Real b = boost::math::bernoulli_b2n<Real>(j);
        Real fact(1);
        for (int k = 2; k <= 2 * j; ++k) fact *= k;
        const Real npow = exp((-s - Real(2 * j - 1)) * lnN);
        const Real term = b / fact * poch * npow;
        z += term;
        dz += term * (dpoch_sum - lnN);
        if (abs(term) < tol && j >= 3) break;
        // extend Pochhammer by two factors for the next j
        poch *= (s + Real(2 * j - 1)) * (s + Real(2 * j));
        dpoch_sum += 1 / (s + Real(2 * j - 1)) + 1 / (s + Real(2 * j));
    }
    return {z, dz};
}

Real zeta_prime_negative(int n, const PrecisionConfig& cfg) {
    if (n != 1 && n != 3) throw std::invalid_argument("unsupported zeta argument");
    using std::log;
    const auto [z, dz] = zeta_and_derivative(Real(1 + n), cfg);
    // psi(1+n) = H_n - gamma at the integer arguments used here.
    Real harmonic(0);
    for (int k = 1; k <= n; ++k) harmonic += Real(1) / k;
    const Real psi = harmonic - boost::math::constants::euler<Real>();
    const Real bracket = log(Real(2)) + log(pi_v<Real>()) - psi - dz / z;
    const Rational zn = zeta_negative(n);
    return Real(numerator(zn)) / Real(denominator(zn)) * bracket;
}

std::array<Real, 5> basis_values(const PrecisionConfig& cfg) {
    using std::log;
    const Real z1 = zeta_prime_negative(1, cfg) / (Real(-1) / 12);
    const Real z3 = zeta_prime_negative(3, cfg) / (Real(1) / 120);
    return {Real(1), z1, z3, log(Real(2)), log(Real(3))};
}

Real combo_eval(const ConstantCombo& c, const PrecisionConfig& cfg) {
    const std::array<Real, 5> vals = basis_values(cfg);
    Real out(0);
    for (std::size_t i = 0; i < 5; ++i) {
        const Rational& q = c.coeff(static_cast<BasisSymbol>(i));
        if (q == 0) continue;
        out += Real(numerator(q)) / Real(denominator(q)) * vals[i];
    }
    return out;
}

std::string rational_to_string(const Rational& q) {
    std::ostringstream os;
    os << numerator(q);
    if (denominator(q) != 1) os << "/" << denominator(q);
    return os.str();
}

std::string ConstantCombo::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < 5; ++i) {
        const Rational& q = c_[i];
        if (q == 0) continue;
        if (!first) os << " + ";
        os << rational_to_string(q) << "*" << basis_symbol_name(static_cast<BasisSymbol>(i));
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace siegel
