#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "siegel/forms.hpp"
#include "siegel/scalar.hpp"
#include "siegel/theta.hpp"

namespace siegel {

// Integer polynomial in y0..y4 together with the exact rational scale tying
// it to the modular form it represents: P(y(tau)) = scale * eval(form, tau).
// Integer-primitive representatives force nontrivial scales (4 for E6,
// 2^15 for chi12, 4 for E4, 2^24 for chi10^2).
struct IntegerPolynomial5 {
    std::map<std::array<int, 5>, Int> coeffs;
    int degree = 0;
    Rational scale = 1;

    bool symmetric() const;  // invariant under S3 x S2 on (y0,y1,y2),(y3,y4)
    Int coefficient(const std::array<int, 5>& e) const;
    Complex eval(const std::array<Complex, 5>& y) const;
    long eval_mod(const std::array<int, 5>& point, int p) const;
};

// Fourth powers of the five theta combinations of the projective embedding.
std::array<Complex, 5> y_coordinates(const SiegelPoint2<Real>& tau, const PrecisionConfig& cfg);

// The ten linear forms whose product is 2^24 chi10^2, in the paper's factor
// order; each equals one even theta fourth power up to sign.
const std::array<std::array<int, 5>, 10>& chi10_linear_forms();

IntegerPolynomial5 quartic_polynomial();
IntegerPolynomial5 chi10_squared_polynomial();
IntegerPolynomial5 e4_polynomial();

enum class ReconstructTarget { E6_y, Chi12_y };

// Numeric reconstruction: least-squares fit over the normal-form monomial
// basis (monomials not divisible by lex-LT(quartic) = y0^2 y1^2) from seeded
// random evaluations, integer rounding with scale detection, then exact
// restoration of the coordinate symmetries by an integral quartic multiple.
IntegerPolynomial5 reconstruct_polynomial(ReconstructTarget target, const PrecisionConfig& cfg);

// Cached reconstructions (derived once per process).
const IntegerPolynomial5& reconstructed(ReconstructTarget target);

void save_polynomial(const std::string& path, const IntegerPolynomial5& poly);
IntegerPolynomial5 load_polynomial(const std::string& path);

struct ProjectivePointFp {
    int p = 3;
    std::array<int, 5> coords{};            // first nonzero coordinate is 1
    int vanishing_theta_count = 0;          // of the ten linear forms, mod p
    friend bool operator==(const ProjectivePointFp&, const ProjectivePointFp&) = default;
};

// Exhaustive scan of P^4(F_p) for common zeros of the quartic, chi10^2,
// E4_y, E6_y, chi12_y. Throws for p = 2 ("embedding not defined at 2"),
// for composite p and for p > 101.
std::vector<ProjectivePointFp> enumerate_solutions(int p);

// Solutions in the deeper degeneration stratum (at least two of the ten
// theta fourth powers vanish). At p = 3 the raw scan has 25 points: the
// six cusp-type points listed in the source material sit inside this
// stratum (vanishing count 4 each) but are singled out only by their
// symplectic orbit, which this toolkit does not compute.
std::vector<ProjectivePointFp> boundary_stratum(const std::vector<ProjectivePointFp>& sols);

std::string format_solution(const ProjectivePointFp& pt);

}  // namespace siegel
