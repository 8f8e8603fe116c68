#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "siegel/scalar.hpp"

namespace siegel {

// Theta characteristic (a,b) with 0/1 entries. Parity a.b mod 2 decides
// whether the theta constant is identically zero.
struct Char1 {
    int a = 0;
    int b = 0;
    bool even() const { return (a * b) % 2 == 0; }
    friend bool operator==(const Char1&, const Char1&) = default;
};

struct Char2 {
    std::array<int, 2> a{0, 0};
    std::array<int, 2> b{0, 0};
    bool even() const { return (a[0] * b[0] + a[1] * b[1]) % 2 == 0; }
    Char1 first() const { return {a[0], b[0]}; }
    Char1 second() const { return {a[1], b[1]}; }
    friend bool operator==(const Char2&, const Char2&) = default;
};

// Lexicographic over (a,b) resp. (a1,a2,b1,b2); 3 of 4 resp. 10 of 16 survive.
inline std::vector<Char1> even_characteristics1() {
    std::vector<Char1> out;
    for (int a = 0; a <= 1; ++a)
        for (int b = 0; b <= 1; ++b)
            if (Char1{a, b}.even()) out.push_back({a, b});
    return out;
}

inline std::vector<Char2> even_characteristics2() {
    std::vector<Char2> out;
    for (int a1 = 0; a1 <= 1; ++a1)
        for (int a2 = 0; a2 <= 1; ++a2)
            for (int b1 = 0; b1 <= 1; ++b1)
                for (int b2 = 0; b2 <= 1; ++b2) {
                    Char2 ch{{a1, a2}, {b1, b2}};
                    if (ch.even()) out.push_back(ch);
                }
    return out;
}

inline std::size_t even_characteristic_count(int g) {
    if (g == 1) return even_characteristics1().size();
    if (g == 2) return even_characteristics2().size();
    throw std::invalid_argument("even_characteristics: degree must be 1 or 2");
}

template <class R>
struct SiegelPoint1 {
    R x{};
    R y{};
    SiegelPoint1() = default;
    SiegelPoint1(R x_, R y_) : x(std::move(x_)), y(std::move(y_)) {
        if (!(y > 0)) throw std::invalid_argument("SiegelPoint1: Im(tau) must be positive");
    }
    complex_t<R> tau() const { return complex_t<R>(x, y); }
};

template <class R>
struct SiegelPoint2 {
    Matrix2<R> x;
    Matrix2<R> y;
    SiegelPoint2() {
        x.setZero();
        y.setIdentity();
    }
    SiegelPoint2(Matrix2<R> x_, Matrix2<R> y_) : x(std::move(x_)), y(std::move(y_)) {
        if (x(0, 1) != x(1, 0) || y(0, 1) != y(1, 0))
            throw std::invalid_argument("SiegelPoint2: tau must be symmetric");
        if (!(y(0, 0) > 0 && y(0, 0) * y(1, 1) - y(0, 1) * y(0, 1) > 0))
            throw std::invalid_argument("SiegelPoint2: Im(tau) must be positive definite");
    }
    static SiegelPoint2 diagonal(const SiegelPoint1<R>& t1, const SiegelPoint1<R>& t2) {
        Matrix2<R> mx, my;
        mx << t1.x, R(0), R(0), t2.x;
        my << t1.y, R(0), R(0), t2.y;
        return SiegelPoint2(mx, my);
    }
    bool is_diagonal() const { return x(0, 1) == 0 && y(0, 1) == 0; }
    R det_y() const { return y(0, 0) * y(1, 1) - y(0, 1) * y(0, 1); }
};

namespace detail {

// i^k for integer k.
template <class C>
inline C i_power(long k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return C(1, 0);
        case 1: return C(0, 1);
        case 2: return C(-1, 0);
        default: return C(0, -1);
    }
}

// Smallest eigenvalue of a symmetric positive definite 2x2 matrix.
template <class R>
inline R lambda_min(const Matrix2<R>& y) {
    using std::sqrt;
    R tr = y(0, 0) + y(1, 1);
    R det = y(0, 0) * y(1, 1) - y(0, 1) * y(0, 1);
    R disc = tr * tr / 4 - det;
    if (disc < 0) disc = 0;
    return tr / 2 - sqrt(disc);
}

// Truncation shell count for the 2D lattice sum: smallest R such that the
// dropped tail sum_{|n|_inf > R} e^{-pi*lam*|n+a/2|^2} (times the polynomial
// factor of the x1-derivative when requested) stays below tol.
template <class R>
inline int lattice_radius(const R& lam, double tol, bool derivative) {
    using std::exp;
    const R pl = pi_v<R>() * lam;
    for (int radius = 1; radius < 4000; ++radius) {
        // Terms on shell s: at most 8s+4 of them, |v| >= s - 1/2 each.
        R s(radius + 1);
        R first = R(8 * (radius + 1) + 4) * exp(-pl * (s - R(1) / 2) * (s - R(1) / 2));
        if (derivative) first *= pi_v<R>() * (s + 1) * (s + 1);
        // Consecutive shell ratio is below 1/2 once pl*(2s-1) is past log 2
        // plus the polynomial drift, so the tail is at most twice the first term.
        bool ratio_ok = pl * (2 * s - 1) > R(3);
        if (ratio_ok && 2 * first < R(tol)) return radius;
    }
    throw std::runtime_error("theta truncation radius search failed");
}

template <class R>
inline int series_radius1(const R& y, double tol) {
    using std::exp;
    const R py = pi_v<R>() * y;
    for (int n0 = 1; n0 < 100000; ++n0) {
        R v = R(n0) - R(1) / 2;
        R first = 2 * exp(-py * v * v);
        if (py * (2 * R(n0) - 1) > R(3) && 2 * first < R(tol)) return n0;
    }
    throw std::runtime_error("theta1 truncation search failed");
}

// Power table for W^j, j = 0..jmax, built by repeated multiplication so the
// summation is bit-stable for a fixed configuration.
template <class C>
inline std::vector<C> powers(const C& w, int jmax) {
    std::vector<C> out(static_cast<std::size_t>(jmax) + 1);
    out[0] = C(1, 0);
    for (int j = 1; j <= jmax; ++j) out[static_cast<std::size_t>(j)] = out[static_cast<std::size_t>(j - 1)] * w;
    return out;
}

}  // namespace detail

// Degree-1 theta constant: sum_n exp(pi*i*((n+a/2)^2 tau + (n+a/2) b)).
// Odd characteristics give a structural zero, not a cancellation.
template <class R>
complex_t<R> theta1(const Char1& ch, const SiegelPoint1<R>& t, const PrecisionConfig& cfg) {
    using C = complex_t<R>;
    using std::exp;
    if (!ch.even()) return C(0, 0);
    const int n0 = detail::series_radius1(t.y, cfg.series_tolerance);
    // w = exp(i*pi*tau/4); the term for n is i^{(2n+a)b} * w^{(2n+a)^2}.
    const R quarter_pi = pi_v<R>() / 4;
    const C w = exp(C(-quarter_pi * t.y, quarter_pi * t.x));
    const int jmax = (2 * n0 + 1) * (2 * n0 + 1);
    const auto wp = detail::powers(w, jmax);
    C acc(0, 0);
    for (int n = -n0; n <= n0; ++n) {
        const long e = 2L * n + ch.a;
        acc += detail::i_power<C>(e * ch.b) * wp[static_cast<std::size_t>(e * e)];
    }
    return acc;
}

namespace detail {

// Shared core of the 2D lattice sum and its termwise x1-derivative.
template <class R>
complex_t<R> theta2_sum(const Char2& ch, const SiegelPoint2<R>& t, const PrecisionConfig& cfg,
                        bool dx1) {
    using C = complex_t<R>;
    using std::exp;
    const R lam = lambda_min(t.y);
    const int radius = lattice_radius(lam, cfg.series_tolerance, dx1);

    const R quarter_pi = pi_v<R>() / 4;
    const R half_pi = pi_v<R>() / 2;
    // Bases: A = e^{i pi tau1/4}, B = e^{i pi tau12/2}, D = e^{i pi tau2/4};
    // term = A^{p^2} B^{p q} D^{q^2} i^{p b1 + q b2} with p = 2n1+a1, q = 2n2+a2.
    const C A = exp(C(-quarter_pi * t.y(0, 0), quarter_pi * t.x(0, 0)));
    const C D = exp(C(-quarter_pi * t.y(1, 1), quarter_pi * t.x(1, 1)));
    const C B = exp(C(-half_pi * t.y(0, 1), half_pi * t.x(0, 1)));
    const C Binv = C(1, 0) / B;

    const int pmax = 2 * radius + 1;
    const int sqmax = pmax * pmax;
    const auto Ap = powers(A, sqmax);
    const auto Dp = powers(D, sqmax);
    const auto Bp = powers(B, sqmax);
    const auto Bm = powers(Binv, sqmax);

    const R quarter = R(1) / 4;
    C acc(0, 0);
    // Increasing |n|_inf shells, lexicographic inside each shell.
    for (int s = 0; s <= radius; ++s) {
        for (int n1 = -s; n1 <= s; ++n1) {
            for (int n2 = -s; n2 <= s; ++n2) {
                if (s > 0 && std::max(std::abs(n1), std::abs(n2)) != s) continue;
                const long p = 2L * n1 + ch.a[0];
                const long q = 2L * n2 + ch.a[1];
                const long pq = p * q;
                C term = Ap[static_cast<std::size_t>(p * p)] * Dp[static_cast<std::size_t>(q * q)];
                term *= (pq >= 0) ? Bp[static_cast<std::size_t>(pq)] : Bm[static_cast<std::size_t>(-pq)];
                term *= i_power<C>(p * ch.b[0] + q * ch.b[1]);
                if (dx1) term *= C(0, pi_v<R>() * quarter * R(p) * R(p));
                acc += term;
            }
        }
    }
    return acc;
}

}  // namespace detail

// Degree-2 theta constant. On exact diagonals the lattice sum factorizes into
// two degree-1 constants; taking that route makes odd-restricting products
// vanish identically rather than by cancellation.
template <class R>
complex_t<R> theta2(const Char2& ch, const SiegelPoint2<R>& t, const PrecisionConfig& cfg) {
    using C = complex_t<R>;
    if (!ch.even()) return C(0, 0);
    if (t.is_diagonal()) {
        SiegelPoint1<R> t1(t.x(0, 0), t.y(0, 0));
        SiegelPoint1<R> t2(t.x(1, 1), t.y(1, 1));
        return theta1(ch.first(), t1, cfg) * theta1(ch.second(), t2, cfg);
    }
    return detail::theta2_sum(ch, t, cfg, false);
}

// Termwise d/dx1 of the lattice sum; used for the boundary decay bound.
template <class R>
complex_t<R> theta2_dx1(const Char2& ch, const SiegelPoint2<R>& t, const PrecisionConfig& cfg) {
    using C = complex_t<R>;
    if (!ch.even()) return C(0, 0);
    return detail::theta2_sum(ch, t, cfg, true);
}

}  // namespace siegel
