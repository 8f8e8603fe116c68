#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "siegel/scalar.hpp"
#include "siegel/theta.hpp"

namespace siegel {

// Element of SL2(Z).
struct Sl2 {
    int a = 1, b = 0, c = 0, d = 1;
    Sl2() = default;
    Sl2(int a_, int b_, int c_, int d_);
    Sl2 operator*(const Sl2& o) const { return Sl2(a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d); }
    friend bool operator==(const Sl2&, const Sl2&) = default;
};

// Element of Sp4(Z); construction checks M^t J M = J and det M = 1 in exact
// integer arithmetic.
struct Sp4 {
    Eigen::Matrix<std::int64_t, 4, 4> m;
    Sp4();
    explicit Sp4(const Eigen::Matrix<std::int64_t, 4, 4>& mat);
    Sp4 operator*(const Sp4& o) const;
    Eigen::Matrix<std::int64_t, 2, 2> block(int i, int j) const;  // A=(0,0) B=(0,1) C=(1,0) D=(1,1)
    static Sp4 J();
    static Sp4 swap();                                              // tau1 <-> tau2
    static Sp4 translation(int s11, int s12, int s22);              // tau -> tau + S
    static Sp4 gl_embedding(const Eigen::Matrix<std::int64_t, 2, 2>& u);  // tau -> u^t tau u
    static Sp4 sl2_first(const Sl2& g);                             // SL2 acting on tau1
    static Sp4 sl2_second(const Sl2& g);
    friend bool operator==(const Sp4& x, const Sp4& y) { return x.m == y.m; }
};

template <class R>
struct Act1Result {
    SiegelPoint1<R> point;
    complex_t<R> cocycle;  // c*tau + d
};

template <class R>
struct Act2Result {
    SiegelPoint2<R> point;
    complex_t<R> cocycle;  // det(C*tau + D)
};

template <class R>
Act1Result<R> act(const Sl2& g, const SiegelPoint1<R>& t) {
    using C = complex_t<R>;
    const C tau = t.tau();
    const C den = C(R(g.c), 0) * tau + C(R(g.d), 0);
    const C tp = (C(R(g.a), 0) * tau + C(R(g.b), 0)) / den;
    return {SiegelPoint1<R>(tp.real(), tp.imag()), den};
}

template <class R>
Act2Result<R> act(const Sp4& g, const SiegelPoint2<R>& t) {
    using C = complex_t<R>;
    CMatrix2<R> tau;
    tau << C(t.x(0, 0), t.y(0, 0)), C(t.x(0, 1), t.y(0, 1)), C(t.x(0, 1), t.y(0, 1)), C(t.x(1, 1), t.y(1, 1));
    auto lift = [](const Eigen::Matrix<std::int64_t, 2, 2>& mi) {
        CMatrix2<R> out;
        out << C(R(static_cast<double>(mi(0, 0))), 0), C(R(static_cast<double>(mi(0, 1))), 0),
            C(R(static_cast<double>(mi(1, 0))), 0), C(R(static_cast<double>(mi(1, 1))), 0);
        return out;
    };
    const CMatrix2<R> num = lift(g.block(0, 0)) * tau + lift(g.block(0, 1));
    const CMatrix2<R> den = lift(g.block(1, 0)) * tau + lift(g.block(1, 1));
    const C det = den(0, 0) * den(1, 1) - den(0, 1) * den(1, 0);
    CMatrix2<R> inv;
    inv << den(1, 1) / det, -den(0, 1) / det, -den(1, 0) / det, den(0, 0) / det;
    CMatrix2<R> tp = num * inv;
    // Mtau is symmetric in exact arithmetic; enforce it against roundoff.
    const C off = (tp(0, 1) + tp(1, 0)) / R(2);
    Matrix2<R> xs, ys;
    xs << tp(0, 0).real(), off.real(), off.real(), tp(1, 1).real();
    ys << tp(0, 0).imag(), off.imag(), off.imag(), tp(1, 1).imag();
    return {SiegelPoint2<R>(xs, ys), det};
}

struct Reduction1Result {
    SiegelPoint1<double> point;
    Sl2 transformation;
    int steps = 0;
};

// Standard SL2(Z) fundamental domain, closed-left wall conventions:
// x in [-1/2, 1/2), |tau| > 1, or |tau| = 1 with x <= 0.
Reduction1Result reduce1(const SiegelPoint1<double>& t);

// Lagrange-Gauss: returns (y', U) with y' = U^t y U, y'11 <= y'22 and
// 0 <= 2*y'12 <= y'11.
std::pair<Matrix2<double>, Eigen::Matrix<std::int64_t, 2, 2>> minkowski_reduce_y(const Matrix2<double>& y);

bool is_minkowski_reduced(const Matrix2<double>& y, double tol = 1e-9);

struct Reduction2Result {
    SiegelPoint2<double> point;
    Sp4 transformation;
    int steps = 0;
};

// Candidate symplectic moves realizing the |det(C tau + D)| >= 1 condition;
// heuristic set (see notes in the CLI candidate-set command), loadable from a
// plain-text file of 16 integers per row.
const std::vector<Sp4>& default_candidates();
std::vector<Sp4> load_candidates(const std::string& path);
void save_candidates(const std::string& path, const std::vector<Sp4>& set);

Reduction2Result reduce2(const SiegelPoint2<double>& t, const std::vector<Sp4>& candidates = default_candidates(),
                         int max_steps = 200);

bool is_reduced2(const SiegelPoint2<double>& t, const std::vector<Sp4>& candidates = default_candidates(),
                 double tol = 1e-9);

}  // namespace siegel
