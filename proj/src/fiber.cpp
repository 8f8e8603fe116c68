#include "siegel/fiber.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "siegel/numerics.hpp"

namespace siegel {

namespace {

using Exp = std::array<int, 5>;
using PolyMap = std::map<Exp, Int>;

void add_term(PolyMap& p, const Exp& e, const Int& c) {
    if (c == 0) return;
    auto it = p.find(e);
    if (it == p.end()) {
        p.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) p.erase(it);
    }
}

PolyMap mul(const PolyMap& a, const PolyMap& b) {
    PolyMap out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            Exp e{};
            for (int i = 0; i < 5; ++i) e[static_cast<std::size_t>(i)] = ea[static_cast<std::size_t>(i)] + eb[static_cast<std::size_t>(i)];
            add_term(out, e, ca * cb);
        }
    return out;
}

PolyMap linear_form_poly(const std::array<int, 5>& f) {
    PolyMap out;
    for (int i = 0; i < 5; ++i) {
        if (f[static_cast<std::size_t>(i)] == 0) continue;
        Exp e{};
        e[static_cast<std::size_t>(i)] = 1;
        out.emplace(e, f[static_cast<std::size_t>(i)]);
    }
    return out;
}

// S3 on (y0,y1,y2) and the (y3,y4) swap acting on exponent vectors.
struct GroupElem {
    std::array<int, 3> perm;
    bool swap34;
};

const std::vector<GroupElem>& full_group() {
    static const std::vector<GroupElem> g = [] {
        std::vector<GroupElem> out;
        std::array<int, 3> p{0, 1, 2};
        std::sort(p.begin(), p.end());
        do {
            out.push_back({p, false});
            out.push_back({p, true});
        } while (std::next_permutation(p.begin(), p.end()));
        return out;
    }();
    return g;
}

Exp act_exp(const Exp& e, const GroupElem& g) {
    Exp out{};
    for (int i = 0; i < 3; ++i) out[static_cast<std::size_t>(g.perm[static_cast<std::size_t>(i)])] = e[static_cast<std::size_t>(i)];
    if (g.swap34) {
        out[3] = e[4];
        out[4] = e[3];
    } else {
        out[3] = e[3];
        out[4] = e[4];
    }
    return out;
}

PolyMap act_poly(const PolyMap& p, const GroupElem& g) {
    PolyMap out;
    for (const auto& [e, c] : p) out.emplace(act_exp(e, g), c);
    return out;
}

constexpr Exp kQuarticLT{2, 2, 0, 0, 0};

bool divides(const Exp& a, const Exp& b) {
    for (int i = 0; i < 5; ++i)
        if (a[static_cast<std::size_t>(i)] > b[static_cast<std::size_t>(i)]) return false;
    return true;
}

// Exact quotient g with p = quartic * g; throws when p is not divisible.
PolyMap exact_divide_by_quartic(PolyMap p, const PolyMap& quartic) {
    PolyMap g;
    while (!p.empty()) {
        const auto it = std::prev(p.end());
        const Exp e = it->first;
        const Int c = it->second;
        if (!divides(kQuarticLT, e)) throw std::runtime_error("reconstruction failed (not in the quartic ideal)");
        Exp shift{};
        for (int i = 0; i < 5; ++i)
            shift[static_cast<std::size_t>(i)] = e[static_cast<std::size_t>(i)] - kQuarticLT[static_cast<std::size_t>(i)];
        add_term(g, shift, c);
        for (const auto& [eq, cq] : quartic) {
            Exp e2{};
            for (int i = 0; i < 5; ++i)
                e2[static_cast<std::size_t>(i)] = eq[static_cast<std::size_t>(i)] + shift[static_cast<std::size_t>(i)];
            add_term(p, e2, -c * cq);
        }
    }
    return g;
}

std::vector<Exp> monomials_of_degree(int d) {
    std::vector<Exp> out;
    for (int a = 0; a <= d; ++a)
        for (int b = 0; a + b <= d; ++b)
            for (int c = 0; a + b + c <= d; ++c)
                for (int e = 0; a + b + c + e <= d; ++e)
                    out.push_back({a, b, c, e, d - a - b - c - e});
    return out;
}

int poly_degree(const PolyMap& p) {
    int d = 0;
    for (const auto& [e, c] : p) d = std::max(d, e[0] + e[1] + e[2] + e[3] + e[4]);
    return d;
}

}  // namespace

bool IntegerPolynomial5::symmetric() const {
    for (const auto& g : full_group())
        if (act_poly(coeffs, g) != coeffs) return false;
    return true;
}

Int IntegerPolynomial5::coefficient(const std::array<int, 5>& e) const {
    const auto it = coeffs.find(e);
    return it == coeffs.end() ? Int(0) : it->second;
}

Complex IntegerPolynomial5::eval(const std::array<Complex, 5>& y) const {
    // power tables up to the polynomial degree
    std::array<std::vector<Complex>, 5> pw;
    for (int i = 0; i < 5; ++i) {
        pw[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(degree) + 1);
        pw[static_cast<std::size_t>(i)][0] = Complex(1, 0);
        for (int e = 1; e <= degree; ++e)
            pw[static_cast<std::size_t>(i)][static_cast<std::size_t>(e)] =
                pw[static_cast<std::size_t>(i)][static_cast<std::size_t>(e - 1)] * y[static_cast<std::size_t>(i)];
    }
    Complex acc(0, 0);
    for (const auto& [e, c] : coeffs) {
        Complex term(Real(c.str()), 0);
        for (int i = 0; i < 5; ++i) term *= pw[static_cast<std::size_t>(i)][static_cast<std::size_t>(e[static_cast<std::size_t>(i)])];
        acc += term;
    }
    return acc;
}

long IntegerPolynomial5::eval_mod(const std::array<int, 5>& point, int p) const {
    std::array<std::array<long, 11>, 5> pw{};
    for (int i = 0; i < 5; ++i) {
        pw[static_cast<std::size_t>(i)][0] = 1;
        for (int e = 1; e <= degree; ++e)
            pw[static_cast<std::size_t>(i)][static_cast<std::size_t>(e)] =
                pw[static_cast<std::size_t>(i)][static_cast<std::size_t>(e - 1)] * point[static_cast<std::size_t>(i)] % p;
    }
    long acc = 0;
    for (const auto& [e, c] : coeffs) {
        long t = static_cast<long>(c % p);
        if (t < 0) t += p;
        for (int i = 0; i < 5; ++i) t = t * pw[static_cast<std::size_t>(i)][static_cast<std::size_t>(e[static_cast<std::size_t>(i)])] % p;
        acc = (acc + t) % p;
    }
    return acc;
}

std::array<Complex, 5> y_coordinates(const SiegelPoint2<Real>& tau, const PrecisionConfig& cfg) {
    // even_characteristics2() lex order: 0:(0000) 4:(0100) 5:(0110) 6:(1000) 8:(1100)
    const auto th = theta_vector(tau, cfg);
    auto p4 = [](const Complex& z) { return detail::pow_int(z, 4); };
    return {p4(th[5]), p4(th[4]), p4(th[0]), -p4(th[6]) - p4(th[5]), -p4(th[8]) - p4(th[5])};
}

const std::array<std::array<int, 5>, 10>& chi10_linear_forms() {
    static const std::array<std::array<int, 5>, 10> forms = {{
        {1, 0, 0, 0, 0},
        {0, 1, 0, 0, 0},
        {0, 0, 1, 0, 0},
        {0, 0, -1, 0, -1},
        {1, 1, 1, 1, 1},
        {0, 0, -1, -1, 0},
        {1, 0, 0, 1, 0},
        {0, -1, 0, -1, 0},
        {1, 0, 0, 0, 1},
        {0, -1, 0, 0, -1},
    }};
    return forms;
}

IntegerPolynomial5 quartic_polynomial() {
    // (y0 y1 + y0 y2 + y1 y2 - y3 y4)^2 - 4 y0 y1 y2 (y0+y1+y2+y3+y4)
    PolyMap e2;
    add_term(e2, {1, 1, 0, 0, 0}, 1);
    add_term(e2, {1, 0, 1, 0, 0}, 1);
    add_term(e2, {0, 1, 1, 0, 0}, 1);
    add_term(e2, {0, 0, 0, 1, 1}, -1);
    PolyMap q = mul(e2, e2);
    PolyMap cube;
    add_term(cube, {1, 1, 1, 0, 0}, 1);
    PolyMap sum;
    for (int i = 0; i < 5; ++i) {
        Exp e{};
        e[static_cast<std::size_t>(i)] = 1;
        add_term(sum, e, 1);
    }
    for (const auto& [e, c] : mul(cube, sum)) add_term(q, e, -4 * c);
    IntegerPolynomial5 out;
    out.coeffs = std::move(q);
    out.degree = 4;
    out.scale = 1;
    return out;
}

IntegerPolynomial5 chi10_squared_polynomial() {
    PolyMap prod;
    prod.emplace(Exp{0, 0, 0, 0, 0}, 1);
    for (const auto& f : chi10_linear_forms()) prod = mul(prod, linear_form_poly(f));
    IntegerPolynomial5 out;
    out.coeffs = std::move(prod);
    out.degree = 10;
    out.scale = Rational(Int(1) << 24);
    return out;
}

IntegerPolynomial5 e4_polynomial() {
    PolyMap acc;
    for (const auto& f : chi10_linear_forms()) {
        const PolyMap lf = linear_form_poly(f);
        for (const auto& [e, c] : mul(lf, lf)) add_term(acc, e, c);
    }
    IntegerPolynomial5 out;
    out.coeffs = std::move(acc);
    out.degree = 2;
    out.scale = 4;
    return out;
}

namespace {

SiegelPoint2<Real> sample_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> ux(-0.5, 0.5), u1(0.95, 1.4), u2(0.0, 1.0);
    const double y11 = u1(rng);
    const double y22 = y11 + 0.5 * u2(rng);
    const double y12 = 0.4 * y11 * u2(rng);
    Matrix2<Real> x, y;
    const double x12 = ux(rng);
    x << Real(ux(rng)), Real(x12), Real(x12), Real(ux(rng));
    y << Real(y11), Real(y12), Real(y12), Real(y22);
    return SiegelPoint2<Real>(x, y);
}

using VecR = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
using MatR = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

}  // namespace

IntegerPolynomial5 reconstruct_polynomial(ReconstructTarget target, const PrecisionConfig& cfg) {
    const int d = (target == ReconstructTarget::E6_y) ? 3 : 6;
    const FormName form = (target == ReconstructTarget::E6_y) ? FormName::E6 : FormName::Chi12;
    const IntegerPolynomial5 quartic = quartic_polynomial();

    const std::vector<Exp> all_monos = monomials_of_degree(d);
    std::vector<Exp> basis;
    for (const auto& e : all_monos)
        if (!divides(kQuarticLT, e)) basis.push_back(e);
    const std::size_t nb = basis.size();
    const std::size_t nsamples = 3 * all_monos.size();

    // Seeded evaluations; theta vectors shared between y-coords and the form.
    static const QuadrupleComplementSystem qs = enumerate_quadruple_complements();
    const auto& ts = calibrated_triples();
    std::mt19937_64 rng(0x5eed0001u + static_cast<unsigned>(d));
    MatR ata = MatR::Zero(static_cast<Eigen::Index>(nb), static_cast<Eigen::Index>(nb));
    VecR atb = VecR::Zero(static_cast<Eigen::Index>(nb));
    for (std::size_t s = 0; s < nsamples; ++s) {
        const auto tau = sample_point(rng);
        const auto th = theta_vector(tau, cfg);
        auto p4 = [](const Complex& z) { return detail::pow_int(z, 4); };
        const std::array<Complex, 5> yv{p4(th[5]), p4(th[4]), p4(th[0]), -p4(th[6]) - p4(th[5]),
                                        -p4(th[8]) - p4(th[5])};
        const Complex fval = eval2_from_thetas<Real>(form, th, ts, qs);
        // power tables
        std::array<std::array<Complex, 7>, 5> pw;
        for (int i = 0; i < 5; ++i) {
            pw[static_cast<std::size_t>(i)][0] = Complex(1, 0);
            for (int e = 1; e <= d; ++e)
                pw[static_cast<std::size_t>(i)][static_cast<std::size_t>(e)] =
                    pw[static_cast<std::size_t>(i)][static_cast<std::size_t>(e - 1)] * yv[static_cast<std::size_t>(i)];
        }
        VecR row_re(static_cast<Eigen::Index>(nb)), row_im(static_cast<Eigen::Index>(nb));
        for (std::size_t j = 0; j < nb; ++j) {
            Complex m(1, 0);
            for (int i = 0; i < 5; ++i)
                m *= pw[static_cast<std::size_t>(i)][static_cast<std::size_t>(basis[j][static_cast<std::size_t>(i)])];
            row_re(static_cast<Eigen::Index>(j)) = m.real();
            row_im(static_cast<Eigen::Index>(j)) = m.imag();
        }
        ata.noalias() += row_re * row_re.transpose() + row_im * row_im.transpose();
        atb.noalias() += row_re * fval.real() + row_im * fval.imag();
    }
    const VecR c = ata.ldlt().solve(atb);

    // Scale detection: smallest 2^a or 3*2^a making the coefficients integral.
    Int scale_den = 0;
    PolyMap n_int;
    for (int threes = 0; threes <= 1 && scale_den == 0; ++threes)
        for (int a = 0; a <= 22 && scale_den == 0; ++a) {
            const Int dtry = Int(threes ? 3 : 1) << a;
            const Real df(dtry.str());
            bool ok = true;
            PolyMap rounded;
            for (std::size_t j = 0; j < nb && ok; ++j) {
                const Real v = c(static_cast<Eigen::Index>(j)) * df;
                const Real r = round(v);
                if (abs(v - r) > 1e-6) ok = false;
                const Int ci = r.template convert_to<Int>();
                if (ci != 0) rounded.emplace(basis[j], ci);
            }
            if (ok) {
                scale_den = dtry;
                n_int = std::move(rounded);
            }
        }
    if (scale_den == 0) throw std::runtime_error("reconstruction failed (coefficients do not round to integers)");

    // Restore the S3 x S2 symmetry by an integral multiple of the quartic:
    // find integral g with gamma(P) = P for P = n + quartic*g.
    const std::vector<GroupElem> gens = {{{1, 0, 2}, false}, {{0, 2, 1}, false}, {{0, 1, 2}, true}};
    std::vector<PolyMap> h;
    bool already_symmetric = true;
    for (const auto& g : gens) {
        PolyMap diff = act_poly(n_int, g);
        for (const auto& [e, cc] : n_int) add_term(diff, e, -cc);
        if (!diff.empty()) already_symmetric = false;
        h.push_back(exact_divide_by_quartic(std::move(diff), quartic.coeffs));
    }
    PolyMap result = n_int;
    if (!already_symmetric) {
        if (d < 4) throw std::runtime_error("reconstruction failed (asymmetric below the quartic degree)");
        // Orbit propagation over the degree-(d-4) cofactor monomials:
        // g(gamma(mu)) = g(mu) + h_gamma(gamma(mu)).
        const std::vector<Exp> cof = monomials_of_degree(d - 4);
        std::map<Exp, Int> gsol;
        for (const auto& seed : cof) {
            if (gsol.count(seed)) continue;
            gsol[seed] = 0;
            std::deque<Exp> queue{seed};
            while (!queue.empty()) {
                const Exp mu = queue.front();
                queue.pop_front();
                for (std::size_t gi = 0; gi < gens.size(); ++gi) {
                    const Exp mu2 = act_exp(mu, gens[gi]);
                    Int want = gsol[mu];
                    const auto hit = h[gi].find(mu2);
                    if (hit != h[gi].end()) want += hit->second;
                    const auto it = gsol.find(mu2);
                    if (it == gsol.end()) {
                        gsol[mu2] = want;
                        queue.push_back(mu2);
                    } else if (it->second != want) {
                        throw std::runtime_error("reconstruction failed (symmetry propagation inconsistent)");
                    }
                }
            }
        }
        PolyMap gpoly;
        for (const auto& [e, cc] : gsol) add_term(gpoly, e, cc);
        for (const auto& [e, cc] : mul(quartic.coeffs, gpoly)) add_term(result, e, cc);
    }

    IntegerPolynomial5 out;
    out.coeffs = std::move(result);
    out.degree = d;
    out.scale = Rational(scale_den);
    if (!out.symmetric()) throw std::runtime_error("reconstruction failed (result not symmetric)");
    if (poly_degree(out.coeffs) != d) throw std::runtime_error("reconstruction failed (degree mismatch)");
    return out;
}

const IntegerPolynomial5& reconstructed(ReconstructTarget target) {
    static const IntegerPolynomial5 e6 = reconstruct_polynomial(ReconstructTarget::E6_y, PrecisionConfig{});
    static const IntegerPolynomial5 c12 = reconstruct_polynomial(ReconstructTarget::Chi12_y, PrecisionConfig{});
    return target == ReconstructTarget::E6_y ? e6 : c12;
}

void save_polynomial(const std::string& path, const IntegerPolynomial5& poly) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write polynomial: " + path);
    out << "# degree " << poly.degree << " scale " << rational_to_string(poly.scale) << "\n";
    for (const auto& [e, c] : poly.coeffs)
        out << c << " " << e[0] << " " << e[1] << " " << e[2] << " " << e[3] << " " << e[4] << "\n";
}

IntegerPolynomial5 load_polynomial(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read polynomial: " + path);
    IntegerPolynomial5 out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ls(line);
            std::string hash, kw;
            ls >> hash >> kw >> out.degree >> kw;
            std::string sc;
            ls >> sc;
            const auto slash = sc.find('/');
            if (slash == std::string::npos)
                out.scale = Rational(Int(sc));
            else
                out.scale = Rational(Int(sc.substr(0, slash)), Int(sc.substr(slash + 1)));
            continue;
        }
        std::istringstream ls(line);
        std::string coeff;
        Exp e{};
        if (!(ls >> coeff >> e[0] >> e[1] >> e[2] >> e[3] >> e[4])) throw std::runtime_error("bad polynomial row");
        out.coeffs.emplace(e, Int(coeff));
    }
    out.degree = poly_degree(out.coeffs);
    return out;
}

namespace {

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

}  // namespace

std::vector<ProjectivePointFp> enumerate_solutions(int p) {
    if (p == 2) throw std::invalid_argument("embedding not defined at 2");
    if (!is_prime(p)) throw std::invalid_argument("enumerate_solutions: p must be an odd prime");
    if (p > 101) throw std::invalid_argument("enumerate_solutions: p must be at most 101");

    const IntegerPolynomial5 quartic = quartic_polynomial();
    const IntegerPolynomial5 chi10sq = chi10_squared_polynomial();
    const IntegerPolynomial5 e4 = e4_polynomial();
    const IntegerPolynomial5& e6 = reconstructed(ReconstructTarget::E6_y);
    const IntegerPolynomial5& chi12 = reconstructed(ReconstructTarget::Chi12_y);

    std::vector<ProjectivePointFp> out;
    std::array<int, 5> pt{};
    // representatives: first nonzero coordinate equals 1
    for (int lead = 0; lead < 5; ++lead) {
        std::array<int, 5> base{};
        base[static_cast<std::size_t>(lead)] = 1;
        const int free = 4 - lead;
        const long total = static_cast<long>(std::pow(static_cast<double>(p), free) + 0.5);
        for (long idx = 0; idx < total; ++idx) {
            long rem = idx;
            pt = base;
            for (int i = 0; i < free; ++i) {
                pt[static_cast<std::size_t>(lead + 1 + i)] = static_cast<int>(rem % p);
                rem /= p;
            }
            if (quartic.eval_mod(pt, p) != 0) continue;
            if (chi10sq.eval_mod(pt, p) != 0) continue;
            if (e4.eval_mod(pt, p) != 0) continue;
            if (e6.eval_mod(pt, p) != 0) continue;
            if (chi12.eval_mod(pt, p) != 0) continue;
            ProjectivePointFp sol;
            sol.p = p;
            sol.coords = pt;
            int vanish = 0;
            for (const auto& f : chi10_linear_forms()) {
                long v = 0;
                for (int i = 0; i < 5; ++i) v += static_cast<long>(f[static_cast<std::size_t>(i)]) * pt[static_cast<std::size_t>(i)];
                if (((v % p) + p) % p == 0) ++vanish;
            }
            sol.vanishing_theta_count = vanish;
            out.push_back(sol);
        }
    }
    return out;
}

std::vector<ProjectivePointFp> boundary_stratum(const std::vector<ProjectivePointFp>& sols) {
    std::vector<ProjectivePointFp> out;
    for (const auto& s : sols)
        if (s.vanishing_theta_count >= 2) out.push_back(s);
    return out;
}

std::string format_solution(const ProjectivePointFp& pt) {
    std::ostringstream os;
    os << pt.p << ": (" << pt.coords[0] << ":" << pt.coords[1] << ":" << pt.coords[2] << ":" << pt.coords[3]
       << ":" << pt.coords[4] << ")";
    return os.str();
}

}  // namespace siegel
