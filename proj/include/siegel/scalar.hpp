#pragma once

#include <complex>
#include <stdexcept>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <Eigen/Dense>

namespace siegel {

namespace mp = boost::multiprecision;

// High-precision working scalars (~50 decimal digits). The whole evaluation
// core is templated on the real scalar, so the same code also runs on plain
// double where speed matters (quadrature, Monte Carlo).
using Real = mp::cpp_bin_float_50;
using Complex = mp::cpp_complex_50;
using Rational = mp::cpp_rational;
using Int = mp::cpp_int;

template <class R>
struct complex_for;
template <>
struct complex_for<double> {
    using type = std::complex<double>;
};
template <>
struct complex_for<Real> {
    using type = Complex;
};
template <class R>
using complex_t = typename complex_for<R>::type;

template <class R>
inline R pi_v() {
    return boost::math::constants::pi<R>();
}

template <class R>
using Matrix2 = Eigen::Matrix<R, 2, 2>;
template <class R>
using CMatrix2 = Eigen::Matrix<complex_t<R>, 2, 2>;

// Precision bookkeeping shared by every evaluation routine. Tolerances are
// truncation targets, not certified bounds.
struct PrecisionConfig {
    int working_digits = 50;
    double series_tolerance = 1e-40;
    double quadrature_tolerance = 1e-6;

    void validate() const {
        if (working_digits < 15) throw std::invalid_argument("working_digits must be >= 15");
        if (working_digits > 50)
            throw std::invalid_argument("working_digits above 50 are not supported by this build");
        if (!(series_tolerance > 0 && series_tolerance < 1))
            throw std::invalid_argument("series_tolerance must be in (0,1)");
        if (!(quadrature_tolerance > 0 && quadrature_tolerance < 1))
            throw std::invalid_argument("quadrature_tolerance must be in (0,1)");
    }
};

}  // namespace siegel
