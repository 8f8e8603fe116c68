#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "siegel/scalar.hpp"
#include "siegel/theta.hpp"

namespace siegel {

enum class FormName { E4, E6, Delta, Chi10, Chi12 };

struct FormSpec {
    FormName name;
    int degree;
    int weight;
};

// Only the (name, degree) pairs with a defining formula exist; weight comes
// with the pair.
FormSpec form_spec(FormName name, int degree);
FormName parse_form_name(const std::string& s);
const char* form_name_string(FormName name);

// Unordered triples of even degree-2 characteristics with even componentwise
// sum, indices into even_characteristics2() order, plus the +-1 signs that
// make the weight-6 sum modular.
struct TripleSystem {
    std::vector<std::array<int, 3>> triples;
    std::vector<int> signs;  // empty until calibrated
};

// 6-element complements of the syzygous quadruples.
struct QuadrupleComplementSystem {
    std::vector<std::array<int, 6>> sextets;
};

TripleSystem enumerate_syzygous_triples();
QuadrupleComplementSystem enumerate_quadruple_complements();

// Derives the sign assignment from the generator action on the ten theta
// fourth powers and verifies the splitting and invariance contract. Throws
// "sign calibration failed" when either step fails.
TripleSystem calibrate_e6_signs(const PrecisionConfig& cfg);

// Calibrated system, derived once per process.
const TripleSystem& calibrated_triples();

void save_sign_table(const std::string& path, const TripleSystem& ts);
TripleSystem load_sign_table(const std::string& path);

// All ten even theta constants at one point, in even_characteristics2() order.
template <class R>
std::array<complex_t<R>, 10> theta_vector(const SiegelPoint2<R>& t, const PrecisionConfig& cfg) {
    static const std::vector<Char2> evens = even_characteristics2();
    std::array<complex_t<R>, 10> out;
    for (std::size_t i = 0; i < 10; ++i) out[i] = theta2(evens[i], t, cfg);
    return out;
}

namespace detail {

template <class C>
C pow_int(C base, int e) {
    C out(1, 0);
    while (e > 0) {
        if (e & 1) out *= base;
        base *= base;
        e >>= 1;
    }
    return out;
}

template <class R>
R rpow_int(R base, int e) {
    R out(1);
    while (e > 0) {
        if (e & 1) out *= base;
        base *= base;
        e >>= 1;
    }
    return out;
}

}  // namespace detail

// Degree-1 forms from the three even theta constants.
template <class R>
complex_t<R> eval1(FormName name, const SiegelPoint1<R>& t, const PrecisionConfig& cfg) {
    using C = complex_t<R>;
    const C t00 = theta1(Char1{0, 0}, t, cfg);
    const C t01 = theta1(Char1{0, 1}, t, cfg);
    const C t10 = theta1(Char1{1, 0}, t, cfg);
    auto p4 = [](const C& z) { return detail::pow_int(z, 4); };
    switch (name) {
        case FormName::E4:
            return (detail::pow_int(t00, 8) + detail::pow_int(t01, 8) + detail::pow_int(t10, 8)) / R(2);
        case FormName::E6:
            return (p4(t00) + p4(t01)) * (p4(t00) + p4(t10)) * (p4(t01) - p4(t10)) / R(2);
        case FormName::Delta:
            return detail::pow_int(t00 * t01 * t10, 8) / R(256);
        default:
            throw std::invalid_argument("eval1: form is not a degree-1 form");
    }
}

// Independent route to Delta: q prod (1-q^n)^24.
template <class R>
complex_t<R> delta_q_product(const SiegelPoint1<R>& t, const PrecisionConfig& cfg) {
    using C = complex_t<R>;
    using std::exp;
    const R two_pi = 2 * pi_v<R>();
    const C q = exp(C(-two_pi * t.y, two_pi * t.x));
    C prod(1, 0);
    C qn(1, 0);
    const R tol(cfg.series_tolerance);
    for (int n = 1; n < 100000; ++n) {
        qn *= q;
        prod *= detail::pow_int(C(1, 0) - qn, 24);
        if (abs(qn) * 64 < tol) break;
    }
    return q * prod;
}

// Degree-2 forms from a shared theta vector.
template <class R>
complex_t<R> eval2_from_thetas(FormName name, const std::array<complex_t<R>, 10>& th,
                               const TripleSystem& ts, const QuadrupleComplementSystem& qs) {
    using C = complex_t<R>;
    auto p4 = [](const C& z) { return detail::pow_int(z, 4); };
    switch (name) {
        case FormName::E4: {
            C acc(0, 0);
            for (const auto& v : th) acc += detail::pow_int(v, 8);
            return acc / R(4);
        }
        case FormName::E6: {
            C acc(0, 0);
            for (std::size_t k = 0; k < ts.triples.size(); ++k) {
                const auto& tr = ts.triples[k];
                acc += R(ts.signs[k]) *
                       p4(th[static_cast<std::size_t>(tr[0])] * th[static_cast<std::size_t>(tr[1])] *
                          th[static_cast<std::size_t>(tr[2])]);
            }
            return acc / R(4);
        }
        case FormName::Chi10: {
            C acc(1, 0);
            for (const auto& v : th) acc *= v * v;
            return acc / R(4096);
        }
        case FormName::Chi12: {
            C acc(0, 0);
            for (const auto& sx : qs.sextets) {
                C prod(1, 0);
                for (int idx : sx) prod *= th[static_cast<std::size_t>(idx)];
                acc += p4(prod);
            }
            return acc / R(32768);
        }
        default:
            throw std::invalid_argument("eval2: form is not a degree-2 form");
    }
}

template <class R>
complex_t<R> eval2(FormName name, const SiegelPoint2<R>& t, const PrecisionConfig& cfg) {
    static const QuadrupleComplementSystem qs = enumerate_quadruple_complements();
    return eval2_from_thetas<R>(name, theta_vector(t, cfg), calibrated_triples(), qs);
}

// Petersson norms: degree 2 |f|((4pi)^2 det y)^{k/2}, degree 1 |f|(4pi y)^{k/2}.
template <class R>
R petersson_norm(FormName name, const SiegelPoint1<R>& t, const PrecisionConfig& cfg) {
    const FormSpec spec = form_spec(name, 1);
    const R base = 4 * pi_v<R>() * t.y;
    return R(abs(eval1(name, t, cfg))) * detail::rpow_int(base, spec.weight / 2);
}

template <class R>
R petersson_norm(FormName name, const SiegelPoint2<R>& t, const PrecisionConfig& cfg) {
    const FormSpec spec = form_spec(name, 2);
    const R base = 16 * pi_v<R>() * pi_v<R>() * t.det_y();
    return R(abs(eval2(name, t, cfg))) * detail::rpow_int(base, spec.weight / 2);
}

// Fourier coefficient c(n,l,m) of a degree-2 form by exact trigonometric
// quadrature on a grid^3 torus at fixed y.
Complex fourier_coefficient(FormName name, int n, int l, int m, const Matrix2<Real>& y, int grid,
                            const PrecisionConfig& cfg);

// All coefficients with 0 <= n,l,m <= nmax from one grid evaluation.
std::vector<std::tuple<int, int, int, Complex>> fourier_box(FormName name, int nmax, const Matrix2<Real>& y,
                                                            int grid, const PrecisionConfig& cfg);

enum class EllipticPoint { I, Omega };

struct VanishingOrder {
    int function_order;
    int stabilizer;  // 2 at i, 3 at omega
};

// Winding-number count of the degree-1 form around a small circle at i or
// omega; shrinks the radius when a zero sits on the test circle.
VanishingOrder elliptic_vanishing_order(FormName name, EllipticPoint p, const PrecisionConfig& cfg);

}  // namespace siegel
