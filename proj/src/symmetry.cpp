#include "liesym/symmetry.hpp"

#include <cmath>
#include <stdexcept>

#include "liesym/ode.hpp"
#include "liesym/verify.hpp"

namespace liesym {

namespace {

Expr d2(const Expr& e, int a, int b) { return e.diff(a).diff(b); }
Expr d3(const Expr& e, int a, int b, int c) { return d2(e, a, b).diff(c); }
Expr d4(const Expr& e, int a, int b, int c, int dd) {
    return d3(e, a, b, c).diff(dd);
}

}  // namespace

bool VectorField::is_trivial_multiple_of_X0() const {
    for (double x1 : {0.6, -1.3, 1.7}) {
        for (double x2 : {0.8, -0.9}) {
            if (std::abs(xi1.eval(x1, x2)) > 1e-12) return false;
            if (std::abs(xi2.eval(x1, x2)) > 1e-12) return false;
            if (std::abs(u.eval(x1, x2)) > 1e-12) return false;
            if (std::abs(sigma.diff(1).eval(x1, x2)) > 1e-12) return false;
            if (std::abs(sigma.diff(2).eval(x1, x2)) > 1e-12) return false;
        }
    }
    return std::abs(sigma.eval(0.6, 0.8)) > 1e-12;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
    return {a.xi1 + b.xi1, a.xi2 + b.xi2, a.sigma + b.sigma, a.u + b.u};
}

VectorField operator*(const Expr& c, const VectorField& X) {
    return {c * X.xi1, c * X.xi2, c * X.sigma, c * X.u};
}

JetExpr characteristic(const VectorField& X) {
    return X.sigma * JetExpr::w() + JetExpr::from_expr(X.u) -
           X.xi1 * JetExpr::jet({1, 0}) - X.xi2 * JetExpr::jet({1, 1});
}

JetExpr prolong(const VectorField& X, const JetExpr& F) {
    JetExpr Q = characteristic(X);
    JetExpr out = X.xi1 * F.total_derivative(1) + X.xi2 * F.total_derivative(2);
    int m = F.max_order();
    for (int k = 0; k <= m; ++k) {
        for (int j = 0; j <= k; ++j) {
            JetExpr part = F.jet_partial({k, j});
            if (part.structurally_zero()) continue;
            out = out + Q.total_derivative(k - j, j) * part;
        }
    }
    return out;
}

SymmetryReport determining_residuals(const Operator4& op, const VectorField& X,
                                     const Expr& lambda,
                                     const SampleSet& samples, double tol) {
    for (double x1 : {0.7, -1.1}) {
        if (std::abs(X.u.eval(x1, 0.9)) > 1e-14)
            throw std::invalid_argument(
                "determining residuals require a field with u = 0");
    }

    const Expr& s = X.sigma;
    Expr sml = s - lambda;
    auto xi = [&](int m) -> const Expr& { return m == 1 ? X.xi1 : X.xi2; };

    SymmetryReport rep;
    rep.lambda = lambda;
    rep.trivial = X.is_trivial_multiple_of_X0();

    // rank-4 block (5 components)
    for (int j4 = 0; j4 <= 4; ++j4) {
        // representative tuple: (4 - j4) ones then j4 twos
        int t[4];
        for (int p = 0; p < 4; ++p) t[p] = (p < 4 - j4) ? 1 : 2;
        Expr r = X.xi1 * op.a4(t[0], t[1], t[2], t[3]).diff(1) +
                 X.xi2 * op.a4(t[0], t[1], t[2], t[3]).diff(2) +
                 sml * op.a4(t[0], t[1], t[2], t[3]);
        for (int p = 0; p < 4; ++p) {
            for (int mu = 1; mu <= 2; ++mu) {
                int u[4] = {t[0], t[1], t[2], t[3]};
                u[p] = mu;
                r = r - op.a4(u[0], u[1], u[2], u[3]) * xi(t[p]).diff(mu);
            }
        }
        rep.residuals.push_back(r);
    }

    // rank-3 block (4 components)
    for (int j3 = 0; j3 <= 3; ++j3) {
        int t[3];
        for (int p = 0; p < 3; ++p) t[p] = (p < 3 - j3) ? 1 : 2;
        Expr r = Expr::constant(0);
        for (int mu = 1; mu <= 2; ++mu)
            r = r + 4 * (op.a4(t[0], t[1], t[2], mu) * s.diff(mu));
        for (int mu = 1; mu <= 2; ++mu) {
            for (int nu = 1; nu <= 2; ++nu) {
                r = r - 2 * (op.a4(t[0], t[1], mu, nu) * d2(xi(t[2]), mu, nu)) -
                    2 * (op.a4(t[0], t[2], mu, nu) * d2(xi(t[1]), mu, nu)) -
                    2 * (op.a4(t[1], t[2], mu, nu) * d2(xi(t[0]), mu, nu));
            }
        }
        r = r + X.xi1 * op.a3(t[0], t[1], t[2]).diff(1) +
            X.xi2 * op.a3(t[0], t[1], t[2]).diff(2) +
            sml * op.a3(t[0], t[1], t[2]);
        for (int p = 0; p < 3; ++p) {
            for (int mu = 1; mu <= 2; ++mu) {
                int u[3] = {t[0], t[1], t[2]};
                u[p] = mu;
                r = r - op.a3(u[0], u[1], u[2]) * xi(t[p]).diff(mu);
            }
        }
        rep.residuals.push_back(r);
    }

    // rank-2 block (3 components)
    for (int j2 = 0; j2 <= 2; ++j2) {
        int a = (j2 == 0) ? 1 : (j2 == 2 ? 2 : 1);
        int b = (j2 == 0) ? 1 : 2;
        Expr r = Expr::constant(0);
        for (int mu = 1; mu <= 2; ++mu)
            for (int nu = 1; nu <= 2; ++nu)
                r = r + 6 * (op.a4(a, b, mu, nu) * d2(s, mu, nu));
        for (int mu = 1; mu <= 2; ++mu)
            for (int nu = 1; nu <= 2; ++nu)
                for (int rho = 1; rho <= 2; ++rho)
                    r = r -
                        2 * (op.a4(a, mu, nu, rho) * d3(xi(b), mu, nu, rho)) -
                        2 * (op.a4(b, mu, nu, rho) * d3(xi(a), mu, nu, rho));
        for (int mu = 1; mu <= 2; ++mu)
            r = r + 3 * (op.a3(a, b, mu) * s.diff(mu));
        for (int mu = 1; mu <= 2; ++mu)
            for (int nu = 1; nu <= 2; ++nu)
                r = r -
                    Expr::rational(3, 2) * (op.a3(a, mu, nu) * d2(xi(b), mu, nu)) -
                    Expr::rational(3, 2) * (op.a3(b, mu, nu) * d2(xi(a), mu, nu));
        r = r + X.xi1 * op.a2(a, b).diff(1) + X.xi2 * op.a2(a, b).diff(2) +
            sml * op.a2(a, b);
        for (int mu = 1; mu <= 2; ++mu)
            r = r - op.a2(a, mu) * xi(b).diff(mu) -
                op.a2(mu, b) * xi(a).diff(mu);
        rep.residuals.push_back(r);
    }

    // rank-1 block (2 components)
    for (int a = 1; a <= 2; ++a) {
        Expr r = Expr::constant(0);
        for (int mu = 1; mu <= 2; ++mu)
            for (int nu = 1; nu <= 2; ++nu)
                for (int rho = 1; rho <= 2; ++rho)
                    r = r + 4 * (op.a4(a, mu, nu, rho) * d3(s, mu, nu, rho));
        for (int mu = 1; mu <= 2; ++mu)
            for (int nu = 1; nu <= 2; ++nu)
                for (int rho = 1; rho <= 2; ++rho)
                    for (int ta = 1; ta <= 2; ++ta)
                        r = r - op.a4(mu, nu, rho, ta) *
                                    d4(xi(a), mu, nu, rho, ta);
        for (int mu = 1; mu <= 2; ++mu)
            for (int nu = 1; nu <= 2; ++nu)
                r = r + 3 * (op.a3(a, mu, nu) * d2(s, mu, nu));
        for (int mu = 1; mu <= 2; ++mu)
            for (int nu = 1; nu <= 2; ++nu)
                for (int rho = 1; rho <= 2; ++rho)
                    r = r - op.a3(mu, nu, rho) * d3(xi(a), mu, nu, rho);
        for (int mu = 1; mu <= 2; ++mu)
            r = r + 2 * (op.a2(a, mu) * s.diff(mu));
        for (int mu = 1; mu <= 2; ++mu)
            for (int nu = 1; nu <= 2; ++nu)
                r = r - op.a2(mu, nu) * d2(xi(a), mu, nu);
        r = r + X.xi1 * op.a1(a).diff(1) + X.xi2 * op.a1(a).diff(2) +
            sml * op.a1(a);
        for (int mu = 1; mu <= 2; ++mu)
            r = r - op.a1(mu) * xi(a).diff(mu);
        rep.residuals.push_back(r);
    }

    // rank-0 component
    {
        Expr r = Expr::constant(0);
        for (int mu = 1; mu <= 2; ++mu)
            for (int nu = 1; nu <= 2; ++nu)
                for (int rho = 1; rho <= 2; ++rho)
                    for (int ta = 1; ta <= 2; ++ta)
                        r = r + op.a4(mu, nu, rho, ta) *
                                    d4(s, mu, nu, rho, ta);
        for (int mu = 1; mu <= 2; ++mu)
            for (int nu = 1; nu <= 2; ++nu)
                for (int rho = 1; rho <= 2; ++rho)
                    r = r + op.a3(mu, nu, rho) * d3(s, mu, nu, rho);
        for (int mu = 1; mu <= 2; ++mu)
            for (int nu = 1; nu <= 2; ++nu)
                r = r + op.a2(mu, nu) * d2(s, mu, nu);
        for (int mu = 1; mu <= 2; ++mu) r = r + op.a1(mu) * s.diff(mu);
        r = r + X.xi1 * op.A0.diff(1) + X.xi2 * op.A0.diff(2) + sml * op.A0;
        rep.residuals.push_back(r);
    }

    rep.max_abs = 0.0;
    for (const Expr& r : rep.residuals) {
        for (auto [x1, x2] : samples.points) {
            rep.max_abs = std::max(rep.max_abs, std::abs(r.eval(x1, x2)));
        }
    }
    rep.pass = rep.max_abs <= tol;
    return rep;
}

Expr infer_lambda(const Operator4& op, const VectorField& X) {
    auto xi = [&](int m) -> const Expr& { return m == 1 ? X.xi1 : X.xi2; };
    Expr num = Expr::constant(0), den = Expr::constant(0);
    for (int j4 = 0; j4 <= 4; ++j4) {
        int t[4];
        for (int p = 0; p < 4; ++p) t[p] = (p < 4 - j4) ? 1 : 2;
        Expr A = op.a4(t[0], t[1], t[2], t[3]);
        // S_c: everything in the rank-4 determining component except -lambda A
        Expr S = X.xi1 * A.diff(1) + X.xi2 * A.diff(2) + X.sigma * A;
        for (int p = 0; p < 4; ++p) {
            for (int mu = 1; mu <= 2; ++mu) {
                int u[4] = {t[0], t[1], t[2], t[3]};
                u[p] = mu;
                S = S - op.a4(u[0], u[1], u[2], u[3]) * xi(t[p]).diff(mu);
            }
        }
        num = num + A * S;
        den = den + A * A;
    }
    return num * pow(den, Num(-1));
}

VariationalReport is_variational(const VectorField& X, const Expr& lambda,
                                 const SampleSet& samples, double tol) {
    VariationalReport rep;
    rep.criterion = X.sigma + X.div_xi() + lambda;
    for (auto [x1, x2] : samples.points)
        rep.max_abs = std::max(rep.max_abs,
                               std::abs(rep.criterion.eval(x1, x2)));
    rep.pass = rep.max_abs <= tol;
    return rep;
}

FlowPoint flow(const VectorField& X, double eps, double x1, double x2,
               double w) {
    for (double t : {0.5, -0.7}) {
        if (std::abs(X.u.eval(t, -t)) > 1e-14)
            throw std::invalid_argument("flow requires a field of form (xi, sigma w)");
    }
    OdeRhs rhs = [&](double, const std::vector<double>& y,
                     std::vector<double>& dy) {
        dy[0] = X.xi1.eval(y[0], y[1]);
        dy[1] = X.xi2.eval(y[0], y[1]);
        dy[2] = X.sigma.eval(y[0], y[1]) * y[2];
    };
    OdeSolution sol = integrate_adaptive(rhs, {x1, x2, w}, 0.0, eps);
    const auto& yf = sol.back_state();
    return {yf[0], yf[1], yf[2]};
}

}  // namespace liesym
