#include "liesym/plate.hpp"

#include <cmath>
#include <sstream>

namespace liesym {

namespace {

const Expr kZero = Expr::constant(0);
const Expr kOne = Expr::constant(1);

}  // namespace

Operator4 PlateEquation::op() const {
    Operator4 o;
    o.A4 = biharmonic_a4();
    o.A2 = A2;
    o.A0 = A0;
    return o;
}

PlateEquation plate_from_physical(double D, double nu,
                                  const std::array<Expr, 3>& N, const Expr& k,
                                  const SampleSet& samples, double tol) {
    (void)nu;  // with D constant the (1 - nu) curvature term drops out
    if (!(D > 0.0)) throw PlateValidationError("plate rigidity D must be positive");
    const Expr div1 = N[0].diff(1) + N[1].diff(2);
    const Expr div2 = N[1].diff(1) + N[2].diff(2);
    double worst = 0.0;
    for (const auto& [x1, x2] : samples.points) {
        worst = std::max(worst, std::abs(div1.eval(x1, x2)));
        worst = std::max(worst, std::abs(div2.eval(x1, x2)));
    }
    if (worst > tol) {
        std::ostringstream msg;
        msg << "membrane tensor is not divergence-free (worst sampled "
               "violation "
            << worst << ")";
        PlateValidationError err(msg.str());
        err.worst = worst;
        throw err;
    }
    const Expr inv_d = Expr::real(1.0 / D);
    return {{inv_d * N[0], inv_d * N[1], inv_d * N[2]}, inv_d * k};
}

PlateInvariants plate_invariants(const PlateEquation& eq) {
    PlateInvariants inv;
    inv.s1 = eq.A2[0] + eq.A2[2];
    inv.radicand2 = 8 * eq.A0 - (eq.A2[0] * eq.A2[0] +
                                 2 * (eq.A2[1] * eq.A2[1]) +
                                 eq.A2[2] * eq.A2[2]);
    inv.s2 = sqrt(inv.radicand2);
    const Expr g1 = inv.s1.diff(1);
    const Expr g2 = inv.s1.diff(2);
    inv.s3 = cbrt(-(g1 * g1 + g2 * g2));
    return inv;
}

PlateClassification plate_classify(const PlateEquation& eq, unsigned seed,
                                   double tol) {
    const PlateInvariants inv = plate_invariants(eq);
    const SampleSet s = SampleSet::standard(seed, 200);
    double m1 = 0.0, m2 = 0.0, m3 = 0.0, rad_min = 0.0;
    for (const auto& [x1, x2] : s.points) {
        const double r = inv.radicand2.eval(x1, x2);
        m1 = std::max(m1, std::abs(inv.s1.eval(x1, x2)));
        m2 = std::max(m2, std::abs(r));
        m3 = std::max(m3, std::abs(inv.s3.eval(x1, x2)));
        rad_min = std::min(rad_min, r);
    }
    PlateClassification out;
    out.s1_zero = m1 <= tol;
    out.s2_zero = m2 <= tol;
    out.s3_zero = m3 <= tol;
    out.s2_real = rad_min >= -tol;
    const int nonzero =
        (out.s1_zero ? 0 : 1) + (out.s2_zero ? 0 : 1) + (out.s3_zero ? 0 : 1);
    if (nonzero == 0) {
        out.max_group_dimension = 6;
        out.note =
            "all invariants vanish: E_omega type, 6-parameter group of "
            "variational symmetries (plus the kernel fields)";
    } else {
        out.max_group_dimension = 3;
        out.note =
            "a nonvanishing invariant: at most a 3-parameter group beyond "
            "the kernel fields";
        const char* names[3] = {"s1", "s2", "s3"};
        const bool zero[3] = {out.s1_zero, out.s2_zero, out.s3_zero};
        for (int k = 0; k < 3; ++k)
            if (!zero[k])
                out.invariant_coordinates.push_back(
                    std::string("U_(") + names[k] + ") = w*sqrt(" + names[k] +
                    ")");
        if (nonzero >= 2) {
            int first = -1;
            for (int k = 0; k < 3; ++k)
                if (!zero[k]) {
                    if (first < 0)
                        first = k;
                    else
                        out.invariant_coordinates.push_back(
                            std::string(names[first]) + "/" + names[k]);
                }
        }
    }
    return out;
}

AnalyticSeed AnalyticSeed::from_omega(const CExpr& omega) {
    AnalyticSeed s;
    s.omega = omega;
    s.phi = schwarzian(omega);  // throws DegenerateSeed for omega' == 0
    const CExpr inv_dom = recip(omega.diff());
    s.omega1 = inv_dom;
    s.omega2 = omega * inv_dom;
    s.omega3 = omega * omega * inv_dom;
    return s;
}

PlateEquation e_omega(const AnalyticSeed& seed) {
    const auto [pr, pi] = seed.phi.realify();
    PlateEquation eq;
    eq.A2 = {4 * pr, (-4) * pi, (-4) * pr};
    eq.A0 = 4 * (pr * pr + pi * pi);
    return eq;
}

std::vector<VectorField> e_omega_generators(const AnalyticSeed& seed) {
    const CExpr i_unit = CExpr::constant({0.0, 1.0});
    std::vector<VectorField> out;
    for (const CExpr& base : {seed.omega1, seed.omega2, seed.omega3}) {
        for (const CExpr& c : {base, i_unit * base}) {
            const auto [x1, x2] = c.realify();
            VectorField X;
            X.xi1 = x1;
            X.xi2 = x2;
            X.sigma = Expr::rational(1, 2) * (x1.diff(1) + x2.diff(2));
            out.push_back(X);
        }
    }
    return out;
}

std::vector<VectorField> biharmonic_generators() {
    const Expr x1 = Expr::var(1), x2 = Expr::var(2);
    std::vector<VectorField> out;
    out.push_back(VectorField::X0());
    out.push_back({kOne, kZero, kZero, kZero});       // X1
    out.push_back({kZero, kOne, kZero, kZero});       // X2
    out.push_back({x2, -x1, kZero, kZero});           // X3: rotation
    out.push_back({x1, x2, kZero, kZero});            // X4: scaling
    out.push_back({2 * (x1 * x2), -(x1 * x1 - x2 * x2), 2 * x2, kZero});  // X5
    out.push_back({x1 * x1 - x2 * x2, 2 * (x1 * x2), 2 * x1, kZero});     // X6
    return out;
}

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kGlNode[8] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
    0.9445750230732326, 0.9894009349916499};
constexpr double kGlWeight[8] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541};

std::complex<double> gl_segment(
    const std::function<std::complex<double>(std::complex<double>)>& g,
    std::complex<double> a, std::complex<double> b, int panels) {
    const std::complex<double> step = (b - a) / double(panels);
    std::complex<double> total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const std::complex<double> mid = a + (double(p) + 0.5) * step;
        const std::complex<double> half = 0.5 * step;
        std::complex<double> acc = 0.0;
        for (int k = 0; k < 8; ++k)
            acc += kGlWeight[k] * (g(mid + kGlNode[k] * half) +
                                   g(mid - kGlNode[k] * half));
        total += half * acc;
    }
    return total;
}

// Axis-parallel path integral with panel doubling until the estimate is
// stable below 1e-12 (or the panel cap is reached).
std::complex<double> path_integral(
    const std::function<std::complex<double>(std::complex<double>)>& g,
    std::complex<double> from, std::complex<double> to) {
    const std::complex<double> corner(to.real(), from.imag());
    std::complex<double> prev = gl_segment(g, from, corner, 1) +
                                gl_segment(g, corner, to, 1);
    for (int panels = 2; panels <= 64; panels *= 2) {
        const std::complex<double> cur = gl_segment(g, from, corner, panels) +
                                         gl_segment(g, corner, to, panels);
        if (std::abs(cur - prev) < 1e-12) return cur;
        prev = cur;
    }
    return prev;
}

}  // namespace

ChangeOfVariables to_constant_coefficients(const AnalyticSeed& seed,
                                           std::complex<double> k1,
                                           std::complex<double> k2,
                                           std::complex<double> k3,
                                           std::complex<double> base_point) {
    const CExpr f = CExpr::constant(k1) * seed.omega1 +
                    CExpr::constant(k2) * seed.omega2 +
                    CExpr::constant(k3) * seed.omega3;
    const CExpr df = f.diff();

    // Numeric class detection at fixed probe points (right half plane,
    // clear of the principal-branch cut).
    const std::complex<double> probes[6] = {{0.7, 0.4},  {1.3, -0.8},
                                            {0.9, 1.1},  {1.7, 0.2},
                                            {0.5, -1.5}, {1.2, -0.6}};
    double scale = 0.0, f_dev = 0.0, const_dev = 0.0, cz_dev = 0.0,
           exp_dev = 0.0;
    const std::complex<double> a_exp = df.eval(probes[0]) / f.eval(probes[0]);
    for (const auto& zp : probes) {
        const std::complex<double> fv = f.eval(zp);
        const std::complex<double> dv = df.eval(zp);
        scale = std::max(scale, std::abs(fv));
        f_dev = std::max(f_dev, std::abs(fv));
        const_dev = std::max(const_dev, std::abs(dv));
        cz_dev = std::max(cz_dev, std::abs(zp * dv - fv));
        exp_dev = std::max(exp_dev, std::abs(dv - a_exp * fv));
    }
    if (f_dev <= 1e-12) throw DegenerateMap("f = k1 w1 + k2 w2 + k3 w3 vanishes");
    const double tol = 1e-9 * (1.0 + scale);

    ChangeOfVariables cov;
    const Expr x1 = Expr::var(1), x2 = Expr::var(2);
    if (const_dev <= tol) {
        // f constant: normalized representative f = 1, identity chart.
        cov.closed_form = true;
        cov.y1 = x1;
        cov.y2 = x2;
        cov.U = kOne;
        cov.has_inverse = true;
        cov.inv_x1 = x1;
        cov.inv_x2 = x2;
    } else if (cz_dev <= tol) {
        // f = c z: normalized representative f = z, log chart.
        cov.closed_form = true;
        cov.y1 = Expr::rational(1, 2) * ln(x1 * x1 + x2 * x2);
        cov.y2 = atan2e(x2, x1);
        cov.U = pow(x1 * x1 + x2 * x2, Num(-1, 2));
        cov.has_inverse = true;
        cov.inv_x1 = exp(x1) * cos(x2);  // (x1, x2) read as (y1, y2)
        cov.inv_x2 = exp(x1) * sin(x2);
    } else if (exp_dev <= tol) {
        // f = c e^{a z}: normalized representative e^{a z}.
        const std::complex<double> a = a_exp;
        const CExpr g = -recip(CExpr::constant(a)) *
                        cexp(CExpr::constant(-a) * CExpr::z());
        const auto [gy1, gy2] = g.realify();
        cov.closed_form = true;
        cov.y1 = gy1;
        cov.y2 = gy2;
        cov.U = exp(-(Expr::real(a.real()) * x1 - Expr::real(a.imag()) * x2));
    }
    if (cov.closed_form) {
        const Expr y1e = cov.y1, y2e = cov.y2, ue = cov.U;
        cov.map = [y1e, y2e](double a1, double a2) {
            return std::pair<double, double>{y1e.eval(a1, a2),
                                             y2e.eval(a1, a2)};
        };
        cov.multiplier = [ue](double a1, double a2) { return ue.eval(a1, a2); };
        return cov;
    }

    // General f: numeric quadrature of 1/f along axis-parallel paths.
    auto inv_f = [f](std::complex<double> zv) { return 1.0 / f.eval(zv); };
    cov.map = [inv_f, base_point](double a1, double a2) {
        const std::complex<double> y =
            path_integral(inv_f, base_point, {a1, a2});
        return std::pair<double, double>{y.real(), y.imag()};
    };
    cov.multiplier = [f](double a1, double a2) {
        return 1.0 / std::abs(f.eval({a1, a2}));
    };
    return cov;
}

Operator4 teq_operator(double kappa) {
    Operator4 o;
    o.A4 = biharmonic_a4();
    o.A2 = {Expr::real(-kappa), kZero, Expr::real(kappa)};
    o.A0 = Expr::real(0.25 * kappa * kappa);
    return o;
}

namespace {

Expr chart_log(const Expr& s) {
    // ln((s+1)/(s-1)) up to the additive constant absorbed into the C's;
    // on the chart |s| < 1 both arguments below are positive.
    return ln(s + Expr::constant(1)) - ln(kOne - s);
}

}  // namespace

Expr teq_invariant_solution(double kappa, double C1, double C2, double C3,
                            double C4) {
    const double theta = std::sqrt(kappa / 2.0);
    const Expr th = Expr::real(theta);
    const Expr ch = cosh(th * Expr::var(1));
    const Expr sn = sin(th * Expr::var(2));
    const Expr s = sn / ch;
    const Expr L = chart_log(s);
    const Expr u = Expr::real(C1) + Expr::real(C2) * L + Expr::real(C3) * s +
                   Expr::real(C4) * (s * L);
    return u * ch;
}

std::array<Expr, 5> teq_reduced_ode_coefficients() {
    const Expr s = Expr::var(1);
    const Expr s2m1 = s * s - kOne;
    return {s2m1 * s2m1, 8 * (s * s2m1), 4 * (3 * (s * s) - kOne), kZero,
            kZero};
}

std::array<Expr, 4> teq_reduced_ode_basis() {
    const Expr s = Expr::var(1);
    const Expr L = chart_log(s);
    return {kOne, L, s, s * L};
}

}  // namespace liesym
