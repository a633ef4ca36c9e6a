#include "liesym/operator4.hpp"

#include <cmath>
#include <random>

#include "liesym/symmetry.hpp"
#include "liesym/verify.hpp"

namespace liesym {

std::array<Expr, 5> biharmonic_a4() {
    // symmetrization of d^{ab} d^{cd}: (d^{ab}d^{cd} + d^{ac}d^{bd} +
    // d^{ad}d^{bc}) / 3
    return {Expr::constant(1), Expr::constant(0), Expr::rational(1, 3),
            Expr::constant(0), Expr::constant(1)};
}

JetExpr apply_op(const Operator4& op) {
    JetExpr out;
    for (int j = 0; j <= 4; ++j)
        out = out + (Expr::constant(binom(4, j)) * op.A4[j]) * JetExpr::jet({4, j});
    for (int j = 0; j <= 3; ++j)
        out = out + (Expr::constant(binom(3, j)) * op.A3[j]) * JetExpr::jet({3, j});
    for (int j = 0; j <= 2; ++j)
        out = out + (Expr::constant(binom(2, j)) * op.A2[j]) * JetExpr::jet({2, j});
    for (int j = 0; j <= 1; ++j)
        out = out + op.A1[j] * JetExpr::jet({1, j});
    return out + op.A0 * JetExpr::w();
}

namespace {

/// Coefficient of the linear jet monomial {(k,j): 1} in e (zero if absent).
Expr linear_coeff(const JetExpr& e, JetCoord c) {
    JetExpr::Monomial m{{c, 1}};
    auto it = e.terms().find(m);
    return it == e.terms().end() ? Expr::constant(0) : it->second;
}

}  // namespace

Operator4 adjoint(const Operator4& op) {
    // D* [v]: expand the alternating Leibniz form with v as the jet
    // variable, then read the coefficient tensors back off the (k,j) slots.
    JetExpr v = JetExpr::w();
    JetExpr t;
    for (int j = 0; j <= 4; ++j)
        t = t + (Expr::constant(binom(4, j)) * op.A4[j] * v)
                    .total_derivative(4 - j, j);
    for (int j = 0; j <= 3; ++j)
        t = t - (Expr::constant(binom(3, j)) * op.A3[j] * v)
                    .total_derivative(3 - j, j);
    for (int j = 0; j <= 2; ++j)
        t = t + (Expr::constant(binom(2, j)) * op.A2[j] * v)
                    .total_derivative(2 - j, j);
    for (int j = 0; j <= 1; ++j)
        t = t - (op.A1[j] * v).total_derivative(1 - j, j);
    t = t + op.A0 * v;

    Operator4 out;
    for (int j = 0; j <= 4; ++j)
        out.A4[j] = linear_coeff(t, {4, j}) * Expr::rational(1, binom(4, j));
    for (int j = 0; j <= 3; ++j)
        out.A3[j] = linear_coeff(t, {3, j}) * Expr::rational(1, binom(3, j));
    for (int j = 0; j <= 2; ++j)
        out.A2[j] = linear_coeff(t, {2, j}) * Expr::rational(1, binom(2, j));
    for (int j = 0; j <= 1; ++j) out.A1[j] = linear_coeff(t, {1, j});
    out.A0 = linear_coeff(t, {0, 0});
    return out;
}

SelfAdjointReport is_self_adjoint(const Operator4& op, unsigned seed,
                                  double tol) {
    SampleSet s = SampleSet::standard(seed);
    SelfAdjointReport rep;
    rep.max_residual = jet_residual(apply_op(op), apply_op(adjoint(op)), s);
    rep.pass = rep.max_residual <= tol;
    return rep;
}

JetExpr lagrangian(const Operator4& op) {
    return Expr::rational(1, 2) * (JetExpr::w() * apply_op(op));
}

Operator4 symmetrize(const Operator4& op) {
    Operator4 adj = adjoint(op);
    Operator4 out;
    Expr half = Expr::rational(1, 2);
    for (int j = 0; j <= 4; ++j) out.A4[j] = half * (op.A4[j] + adj.A4[j]);
    for (int j = 0; j <= 3; ++j) out.A3[j] = half * (op.A3[j] + adj.A3[j]);
    for (int j = 0; j <= 2; ++j) out.A2[j] = half * (op.A2[j] + adj.A2[j]);
    for (int j = 0; j <= 1; ++j) out.A1[j] = half * (op.A1[j] + adj.A1[j]);
    out.A0 = half * (op.A0 + adj.A0);
    return out;
}

CurrentPair noether_operators(const JetExpr& Q, const Expr& xi1,
                              const Expr& xi2, const JetExpr& L) {
    int order = std::max(L.max_order(), 1);
    if (order > 4) throw std::runtime_error("Lagrangian order exceeds 4");

    // Cache D1^r D2^a Q.
    std::array<std::array<JetExpr, 5>, 5> dQ;
    for (int r = 0; r <= order - 1; ++r)
        for (int a = 0; a <= r; ++a) dQ[r][a] = Q.total_derivative(r - a, a);

    CurrentPair out;
    for (int alpha = 1; alpha <= 2; ++alpha) {
        JetExpr N = (alpha == 1 ? xi1 : xi2) * L;
        for (int r = 0; r + 1 <= order; ++r) {
            for (int s = 0; r + s + 1 <= order; ++s) {
                int k = 1 + r + s;
                for (int a = 0; a <= r; ++a) {
                    for (int b = 0; b <= s; ++b) {
                        int jtot = (alpha == 2) + a + b;
                        JetExpr part = L.jet_partial({k, jtot});
                        if (part.structurally_zero()) continue;
                        long long mult = binom(r, a) * binom(s, b);
                        if (s % 2 == 1) mult = -mult;
                        Expr w = Expr::constant(mult) *
                                 Expr::rational(1, binom(k, jtot));
                        N = N + w * (dQ[r][a] * part.total_derivative(s - b, b));
                    }
                }
            }
        }
        (alpha == 1 ? out.P1 : out.P2) = N;
    }
    return out;
}

CurrentPair current_for_solution_symmetry(const Operator4& op, const Expr& u) {
    JetExpr L = -(JetExpr::w() * apply_op(op));
    return noether_operators(JetExpr::from_expr(u), Expr::constant(0),
                             Expr::constant(0), L);
}

CurrentPair reciprocity(const Operator4& op, const Expr& v) {
    return current_for_solution_symmetry(op, v);
}

CurrentPair current_for_variational_symmetry(const Operator4& op,
                                             const VectorField& X) {
    SampleSet s = SampleSet::standard();
    Expr lambda = infer_lambda(op, X);
    VariationalReport var = is_variational(X, lambda, s);
    if (!var.pass) {
        NotVariationalError err(
            "field is not a variational symmetry (criterion residual " +
            std::to_string(var.max_abs) + ")");
        err.residual = var.max_abs;
        throw err;
    }

    JetExpr Q = characteristic(X);
    JetExpr L = Expr::rational(-1, 2) * (JetExpr::w() * apply_op(op));
    CurrentPair B = noether_operators(Q, X.xi1, X.xi2, L);

    // special null divergence cutting the fourth-order derivatives away:
    // (1/2) D_mu ( w xi^a A^{m b c d} w_bcd - w xi^m A^{a b c d} w_bcd )
    auto third = [&](int a) {
        // A^{a b c d} w_bcd summed over ordered (b,c,d)
        JetExpr acc;
        for (int b = 1; b <= 2; ++b)
            for (int c = 1; c <= 2; ++c)
                for (int d = 1; d <= 2; ++d) {
                    int twos = (b == 2) + (c == 2) + (d == 2);
                    acc = acc + op.a4(a, b, c, d) *
                                    JetExpr::jet({3, twos});
                }
        return acc;
    };
    JetExpr t1 = third(1), t2 = third(2);
    Expr half = Expr::rational(1, 2);
    JetExpr w = JetExpr::w();
    auto xi = [&](int m) { return m == 1 ? X.xi1 : X.xi2; };
    auto tt = [&](int m) -> const JetExpr& { return m == 1 ? t1 : t2; };
    for (int alpha = 1; alpha <= 2; ++alpha) {
        JetExpr corr;
        for (int mu = 1; mu <= 2; ++mu) {
            JetExpr inner =
                xi(alpha) * (w * tt(mu)) - xi(mu) * (w * tt(alpha));
            corr = corr + inner.total_derivative(mu == 1 ? 1 : 0,
                                                 mu == 2 ? 1 : 0);
        }
        JetExpr& comp = (alpha == 1 ? B.P1 : B.P2);
        comp = comp + half * corr;
    }
    // the correction cancels every fourth-order term; drop the cancelled
    // monomials so the currents carry derivatives of order <= 3 only
    B.P1 = prune_zero_coefficients(B.P1, s);
    B.P2 = prune_zero_coefficients(B.P2, s);
    if (B.P1.max_order() > 3 || B.P2.max_order() > 3)
        throw std::runtime_error(
            "fourth-order terms survived the null-divergence correction");
    return B;
}

}  // namespace liesym
