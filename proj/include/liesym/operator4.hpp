#ifndef LIESYM_OPERATOR4_HPP
#define LIESYM_OPERATOR4_HPP

#include <array>

#include "liesym/jet.hpp"

namespace liesym {

struct VectorField;  // symmetry.hpp

/// Fourth-order linear operator: five coefficient tensors, each fully
/// symmetric and stored by canonical slot (number of indices equal to 2).
/// Applying the operator lowers tensor sums to (k,j) jet coordinates with
/// the binomial multiplicity, so e.g. the biharmonic tensor (slot values
/// 1, 0, 1/3, 0, 1) produces w_1111 + 2 w_1122 + w_2222.
struct Operator4 {
    std::array<Expr, 5> A4{};  // A^{aaaa}: slot j = number of 2-indices
    std::array<Expr, 4> A3{};
    std::array<Expr, 3> A2{};
    std::array<Expr, 2> A1{};
    Expr A0 = Expr::constant(0);

    /// Tensor component accessors by explicit indices (each 1 or 2).
    Expr a4(int a, int b, int c, int d) const {
        return A4[(a == 2) + (b == 2) + (c == 2) + (d == 2)];
    }
    Expr a3(int a, int b, int c) const {
        return A3[(a == 2) + (b == 2) + (c == 2)];
    }
    Expr a2(int a, int b) const { return A2[(a == 2) + (b == 2)]; }
    Expr a1(int a) const { return A1[a == 2]; }
};

/// Fully symmetric rank-4 tensor of the plate operator (PE+): the
/// symmetrization of d^{ab} d^{cd}, slots (1, 0, 1/3, 0, 1).
std::array<Expr, 5> biharmonic_a4();

struct CurrentPair {
    JetExpr P1, P2;
    JetExpr divergence() const {
        return P1.total_derivative(1) + P2.total_derivative(2);
    }
};

struct SelfAdjointReport {
    bool pass = false;
    double max_residual = 0.0;
};

/// The jet expression A^{abcd} w_abcd + A^{abc} w_abc + A^{ab} w_ab +
/// A^a w_a + A w.
JetExpr apply_op(const Operator4& op);

/// Formal adjoint in coefficient form, by Leibniz expansion of
/// D4(A4 .) - D3(A3 .) + D2(A2 .) - D1(A1 .) + A0.
Operator4 adjoint(const Operator4& op);

/// Randomized comparison of apply_op(op) and apply_op(adjoint(op)).
SelfAdjointReport is_self_adjoint(const Operator4& op, unsigned seed = 1,
                                  double tol = 1e-9);

/// L = (1/2) w D[w].
JetExpr lagrangian(const Operator4& op);

/// Operator with applied form (apply(op) + apply(adjoint(op)))/2 — always
/// self-adjoint; used to build random test operators.
Operator4 symmetrize(const Operator4& op);

/// The pair (N^1(L), N^2(L)) of Noether operator values for characteristic
/// Q and vector-field components xi1, xi2.
CurrentPair noether_operators(const JetExpr& Q, const Expr& xi1,
                              const Expr& xi2, const JetExpr& L);

/// P_(u)^a = N^a(-w D[w]) for the field X_u = u(x) d/dw.
CurrentPair current_for_solution_symmetry(const Operator4& op, const Expr& u);

struct NotVariationalError : std::runtime_error {
    using std::runtime_error::runtime_error;
    double residual = 0.0;
};

/// B^a = N^a(-(1/2) w D[w]) plus the special null divergence that removes
/// the fourth-order derivatives.  Requires X variational; throws
/// NotVariationalError with the criterion residual otherwise.
CurrentPair current_for_variational_symmetry(const Operator4& op,
                                             const VectorField& X);

/// Current with divergence v D[w] - w D[v]: N^a(-w D[w]) at Q = v.
CurrentPair reciprocity(const Operator4& op, const Expr& v);

}  // namespace liesym

#endif
