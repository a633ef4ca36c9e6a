#ifndef LIESYM_VERIFY_HPP
#define LIESYM_VERIFY_HPP

#include <functional>
#include <string>
#include <vector>

#include "liesym/operator4.hpp"
#include "liesym/symmetry.hpp"

namespace liesym {

/// Deterministic quasi-random sample points over a box with the small
/// neighbourhood of the axes excluded (coordinates pushed into
/// [-hi,-lo] u [lo,hi]) so that example coefficients singular at the
/// origin stay well conditioned.
struct SampleSet {
    std::vector<std::pair<double, double>> points;
    unsigned seed = 1;

    static SampleSet standard(unsigned seed = 1, int n = 64, double lo = 0.5,
                              double hi = 2.0);
    /// Plain box without the sign-split (for charts needing x1 > 0 etc.).
    static SampleSet box(unsigned seed, int n, double x1_lo, double x1_hi,
                         double x2_lo, double x2_hi);
};

/// Random jet points matching the sample set's base points.
std::vector<JetPoint> random_jets(const SampleSet& s, int max_order = 4);

struct VerifyReport {
    double max_abs = 0.0;
    double mean_abs = 0.0;
    std::pair<double, double> worst_point{0, 0};
    double tolerance = 0.0;
    bool pass = false;
};

/// Sup-norm of a plain expression over the sample set.
VerifyReport sup_norm(const Expr& e, const SampleSet& s, double tol);

/// Sup-norm of apply(op) with w substituted by the candidate solution.
VerifyReport residual_on_solution(const Operator4& op, const Expr& w,
                                  const SampleSet& s, double tol = 1e-9);

/// Sup-norm of D1 P1 + D2 P2 with w substituted (w is checked to solve the
/// equation first when op is supplied).
VerifyReport conservation_check(const CurrentPair& current, const Expr& w,
                                const SampleSet& s, double tol = 1e-9,
                                const Operator4* op = nullptr);

/// Evaluation-equivalence of two expressions over the sample set.
bool expr_equivalent(const Expr& a, const Expr& b, const SampleSet& s,
                     double tol = 1e-9);
/// Evaluation-equivalence of two jet expressions on random jets.
bool jet_equivalent(const JetExpr& a, const JetExpr& b, const SampleSet& s,
                    double tol = 1e-9);
/// Worst |a - b|/(1 + |b|) over random jets.
double jet_residual(const JetExpr& a, const JetExpr& b, const SampleSet& s);

/// Drop monomials whose coefficient evaluates to zero over the sample set
/// (the expression core has no symbolic cancellation by design, so exact
/// cancellations are detected by evaluation).
JetExpr prune_zero_coefficients(const JetExpr& e, const SampleSet& s,
                                double tol = 1e-12);

/// Identity suites over randomized (symmetrized) operators, fields and
/// jets: the Noether identity, the self-adjoint divergence identity, the
/// reciprocity relation, Euler-Lagrange consistency and double-adjoint.
std::vector<std::pair<std::string, VerifyReport>> identity_battery(
    unsigned seed, double tol = 1e-9);

/// Central finite differences of a callable field, stencils up to 4th
/// order as products of one-dimensional 5-point stencils.
double finite_difference(const std::function<double(double, double)>& f,
                         double x1, double x2, int d1, int d2,
                         double h = 1e-2);

}  // namespace liesym

#endif
