#ifndef LIESYM_SYMMETRY_HPP
#define LIESYM_SYMMETRY_HPP

#include <string>
#include <vector>

#include "liesym/operator4.hpp"

namespace liesym {

struct SampleSet;  // verify.hpp

/// Point vector field X = xi^mu d/dx^mu + eta d/dw with eta affine in w:
/// eta = sigma(x) w + u(x).  General eta(x, w) is not representable; the
/// admitted fields of this equation class all have this form.
struct VectorField {
    Expr xi1 = Expr::constant(0);
    Expr xi2 = Expr::constant(0);
    Expr sigma = Expr::constant(0);
    Expr u = Expr::constant(0);

    static VectorField X0() {
        return {Expr::constant(0), Expr::constant(0), Expr::constant(1),
                Expr::constant(0)};
    }
    static VectorField Xu(Expr uf) {
        return {Expr::constant(0), Expr::constant(0), Expr::constant(0),
                std::move(uf)};
    }

    /// xi^mu_{,mu}.
    Expr div_xi() const { return xi1.diff(1) + xi2.diff(2); }
    bool is_trivial_multiple_of_X0() const;
};

VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator*(const Expr& c, const VectorField& X);
inline VectorField operator*(double c, const VectorField& X) {
    return Expr::real(c) * X;
}

/// Q = sigma w + u - xi^1 w_1 - xi^2 w_2.
JetExpr characteristic(const VectorField& X);

/// Fourth (or lower) prolongation applied to a jet expression:
/// pr X (F) = xi^mu D_mu F + sum_J D_J(Q) dF/dw_J.
JetExpr prolong(const VectorField& X, const JetExpr& F);

struct SymmetryReport {
    std::vector<Expr> residuals;  // 15 components: 5 + 4 + 3 + 2 + 1
    Expr lambda = Expr::constant(0);
    double max_abs = 0.0;
    bool pass = false;
    bool trivial = false;  // xi = 0, sigma = const (multiple of X0)
};

/// Residuals of the determining-equation system for a field of form
/// (xi1, xi2, sigma w) with auxiliary function lambda, evaluated over the
/// sample set.  Requires u = 0.
SymmetryReport determining_residuals(const Operator4& op, const VectorField& X,
                                     const Expr& lambda,
                                     const SampleSet& samples,
                                     double tol = 1e-9);

/// Least-squares lambda from the five rank-4 determining components:
/// lambda = sum_c A_c S_c / sum_c A_c^2, where S_c collects the remaining
/// terms.  Reproduces sigma - 4 xi^1_{,1} for rod-shaped operators and the
/// plate form -(3/2) xi^mu_{,mu} in the sigma = (1/2) xi^mu_{,mu} gauge.
Expr infer_lambda(const Operator4& op, const VectorField& X);

struct VariationalReport {
    Expr criterion;  // sigma + xi^mu_{,mu} + lambda
    double max_abs = 0.0;
    bool pass = false;
};

/// Variational-symmetry filter sigma + xi^mu_{,mu} + lambda = 0.
VariationalReport is_variational(const VectorField& X, const Expr& lambda,
                                 const SampleSet& samples, double tol = 1e-9);

struct FlowPoint {
    double x1, x2, w;
};

/// Integrate the one-parameter flow dx/de = xi(x), dw/de = sigma(x) w
/// from (x, w) for parameter value eps (adaptive RK, tol 1e-10).
FlowPoint flow(const VectorField& X, double eps, double x1, double x2,
               double w);

}  // namespace liesym

#endif
