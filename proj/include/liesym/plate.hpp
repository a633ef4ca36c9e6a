#ifndef LIESYM_PLATE_HPP
#define LIESYM_PLATE_HPP

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "liesym/cexpr.hpp"
#include "liesym/symmetry.hpp"
#include "liesym/verify.hpp"

namespace liesym {

/// Plate equation A^{abcd} w_abcd + A^{ab}(x) w_ab + A(x) w = 0 with the
/// rank-4 tensor fixed to the symmetrized biharmonic one and the membrane
/// tensor A^{ab} divergence-free.
struct PlateEquation {
    std::array<Expr, 3> A2{};  // slots A11, A12, A22
    Expr A0 = Expr::constant(0);

    Expr a2(int a, int b) const { return A2[(a == 2) + (b == 2)]; }
    Operator4 op() const;
};

struct PlateValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
    double worst = 0.0;
};

/// Builds A2 = N/D, A0 = k/D from the physical plate data (D constant,
/// so the Poisson-ratio term drops out and nu has no effect).  N is given
/// in symmetric slot form (N11, N12, N22) and must be divergence-free;
/// the worst sampled violation is reported otherwise.
PlateEquation plate_from_physical(double D, double nu,
                                  const std::array<Expr, 3>& N, const Expr& k,
                                  const SampleSet& samples, double tol = 1e-9);

struct PlateInvariants {
    Expr s1;         // A^{mn} delta_mn
    Expr radicand2;  // 8A - delta delta A A  (s2^2)
    Expr s2;         // sqrt(radicand2); real only where radicand2 >= 0
    Expr s3;         // signed cube root of -|grad s1|^2
};

PlateInvariants plate_invariants(const PlateEquation& eq);

struct PlateClassification {
    bool s1_zero = false, s2_zero = false, s3_zero = false;
    int max_group_dimension = 0;  // 6 when all invariants vanish, else <= 3
    bool s2_real = true;          // radicand2 >= 0 on the samples
    std::vector<std::string> invariant_coordinates;  // U_(k), ratios
    std::string note;
};

/// Zero-detection of the invariants over 200 quasi-random samples.
PlateClassification plate_classify(const PlateEquation& eq, unsigned seed = 1,
                                   double tol = 1e-9);

/// Analytic datum of the E_omega family: omega(z), its Schwarzian phi and
/// the derived functions omega1 = 1/omega', omega2 = omega/omega',
/// omega3 = omega^2/omega'.
struct AnalyticSeed {
    CExpr omega, phi, omega1, omega2, omega3;

    static AnalyticSeed from_omega(const CExpr& omega);  // throws DegenerateSeed
};

/// Coefficients A11 = -A22 = 4 Re phi, A12 = -4 Im phi, A = 4 phi conj(phi).
PlateEquation e_omega(const AnalyticSeed& seed);

/// The six fields Z_(j) built from Re/Im of omega1, i omega1, omega2,
/// i omega2, omega3, i omega3, each with sigma = (1/2) xi^mu_{,mu}.
std::vector<VectorField> e_omega_generators(const AnalyticSeed& seed);

/// X0 plus the six additional basic fields of the biharmonic equation.
std::vector<VectorField> biharmonic_generators();

/// y = f(x), W = w U(x) mapping an E_omega equation to constant
/// coefficients.  Closed forms are available when integral of 1/f is in
/// the recognized class (f constant, f = c z, f = c e^{a z}, each used in
/// its normalized representative); otherwise only the numeric path-
/// integral evaluators are populated.
struct ChangeOfVariables {
    bool closed_form = false;
    Expr y1, y2, U;  // in (x1, x2); valid when closed_form
    bool has_inverse = false;
    Expr inv_x1, inv_x2;  // in (y1, y2) read as (var 1, var 2)

    // Always usable numeric evaluators.
    std::function<std::pair<double, double>(double, double)> map;
    std::function<double(double, double)> multiplier;
};

struct DegenerateMap : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Builds the change of variables for f = k1 omega1 + k2 omega2 + k3 omega3.
/// The numeric branch integrates 1/f by composite Gauss-Legendre panels
/// along axis-parallel paths from the base point.
ChangeOfVariables to_constant_coefficients(const AnalyticSeed& seed,
                                           std::complex<double> k1,
                                           std::complex<double> k2,
                                           std::complex<double> k3,
                                           std::complex<double> base_point = {
                                               1.0, 0.0});

/// The constant-coefficient operator Delta^2 W - kappa W_{y1 y1}
/// + kappa W_{y2 y2} + (kappa^2/4) W in the (y1, y2) chart.
Operator4 teq_operator(double kappa);

/// Closed-form H(V3 + V5)-invariant solution
///   W = u(s) cosh(theta y1),  s = sin(theta y2)/cosh(theta y1),
///   u = C1 + C2 L(s) + C3 s + C4 s L(s),  L(s) = ln(s+1) - ln(1-s),
/// with theta = sqrt(kappa/2); the logarithms use |.| on the chart |s| < 1.
Expr teq_invariant_solution(double kappa, double C1, double C2, double C3,
                            double C4);

/// Coefficients (in s = var 1) of the reduced equation
/// (s^2-1)^2 u'''' + 8 s (s^2-1) u''' + 4(3 s^2 - 1) u'' = 0.
std::array<Expr, 5> teq_reduced_ode_coefficients();

/// The four basis solutions 1, L(s), s, s L(s) of the reduced equation.
std::array<Expr, 4> teq_reduced_ode_basis();

}  // namespace liesym

#endif
