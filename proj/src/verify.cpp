#include "liesym/verify.hpp"

#include <cmath>
#include <random>

namespace liesym {

namespace {

// Additive low-discrepancy sequence (plastic-number recurrence), scrambled
// by the seed so different seeds give different deterministic point sets.
struct R2Seq {
    double a1, a2, s1, s2;
    explicit R2Seq(unsigned seed) {
        const double g = 1.32471795724474602596;  // plastic number
        a1 = 1.0 / g;
        a2 = 1.0 / (g * g);
        std::mt19937 rng(seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        s1 = u(rng);
        s2 = u(rng);
    }
    std::pair<double, double> next() {
        s1 += a1;
        if (s1 >= 1) s1 -= 1;
        s2 += a2;
        if (s2 >= 1) s2 -= 1;
        return {s1, s2};
    }
};

double split_box(double t, double lo, double hi) {
    // map [0,1) onto [-hi,-lo] u [lo,hi]
    if (t < 0.5) return -hi + 2 * t * (hi - lo);
    return lo + (2 * t - 1) * (hi - lo);
}

}  // namespace

SampleSet SampleSet::standard(unsigned seed, int n, double lo, double hi) {
    SampleSet out;
    out.seed = seed;
    R2Seq seq(seed);
    for (int i = 0; i < n; ++i) {
        auto [t1, t2] = seq.next();
        out.points.emplace_back(split_box(t1, lo, hi), split_box(t2, lo, hi));
    }
    return out;
}

SampleSet SampleSet::box(unsigned seed, int n, double x1_lo, double x1_hi,
                         double x2_lo, double x2_hi) {
    SampleSet out;
    out.seed = seed;
    R2Seq seq(seed);
    for (int i = 0; i < n; ++i) {
        auto [t1, t2] = seq.next();
        out.points.emplace_back(x1_lo + t1 * (x1_hi - x1_lo),
                                x2_lo + t2 * (x2_hi - x2_lo));
    }
    return out;
}

std::vector<JetPoint> random_jets(const SampleSet& s, int max_order) {
    std::mt19937 rng(s.seed * 7919u + 13u);
    std::uniform_real_distribution<double> v(-2.0, 2.0);
    std::vector<JetPoint> out;
    out.reserve(s.points.size());
    for (auto [x1, x2] : s.points) {
        JetPoint p;
        p.x1 = x1;
        p.x2 = x2;
        for (int k = 0; k <= max_order; ++k)
            for (int j = 0; j <= k; ++j) p.w[k][j] = v(rng);
        out.push_back(p);
    }
    return out;
}

VerifyReport sup_norm(const Expr& e, const SampleSet& s, double tol) {
    VerifyReport rep;
    rep.tolerance = tol;
    double sum = 0;
    for (auto [x1, x2] : s.points) {
        double v = std::abs(e.eval(x1, x2));
        sum += v;
        if (v > rep.max_abs) {
            rep.max_abs = v;
            rep.worst_point = {x1, x2};
        }
    }
    rep.mean_abs = s.points.empty() ? 0 : sum / double(s.points.size());
    rep.pass = rep.max_abs <= tol;
    return rep;
}

VerifyReport residual_on_solution(const Operator4& op, const Expr& w,
                                  const SampleSet& s, double tol) {
    return sup_norm(apply_op(op).substitute_function(w), s, tol);
}

VerifyReport conservation_check(const CurrentPair& current, const Expr& w,
                                const SampleSet& s, double tol,
                                const Operator4* op) {
    if (op) {
        VerifyReport sol = residual_on_solution(*op, w, s, tol);
        if (!sol.pass) return sol;
    }
    return sup_norm(current.divergence().substitute_function(w), s, tol);
}

bool expr_equivalent(const Expr& a, const Expr& b, const SampleSet& s,
                     double tol) {
    for (auto [x1, x2] : s.points) {
        double vb = b.eval(x1, x2);
        if (std::abs(a.eval(x1, x2) - vb) > tol * (1 + std::abs(vb)))
            return false;
    }
    return true;
}

double jet_residual(const JetExpr& a, const JetExpr& b, const SampleSet& s) {
    double worst = 0;
    int order = std::max({a.max_order(), b.max_order(), 0});
    for (const JetPoint& p : random_jets(s, order)) {
        double vb = b.eval(p);
        double r = std::abs(a.eval(p) - vb) / (1 + std::abs(vb));
        worst = std::max(worst, r);
    }
    return worst;
}

bool jet_equivalent(const JetExpr& a, const JetExpr& b, const SampleSet& s,
                    double tol) {
    return jet_residual(a, b, s) <= tol;
}

JetExpr prune_zero_coefficients(const JetExpr& e, const SampleSet& s,
                                double tol) {
    JetExpr out;
    for (const auto& [m, c] : e.terms()) {
        bool nonzero = false;
        for (auto [x1, x2] : s.points) {
            if (std::abs(c.eval(x1, x2)) > tol) {
                nonzero = true;
                break;
            }
        }
        if (!nonzero) continue;
        JetExpr term = JetExpr::from_expr(c);
        for (const auto& [coord, p] : m)
            for (int i = 0; i < p; ++i) term = term * JetExpr::jet(coord);
        out = out + term;
    }
    return out;
}

double finite_difference(const std::function<double(double, double)>& f,
                         double x1, double x2, int d1, int d2, double h) {
    // 5-point central stencils per axis, tensor product
    static const double w1[5] = {1.0 / 12, -2.0 / 3, 0.0, 2.0 / 3, -1.0 / 12};
    static const double w2[5] = {-1.0 / 12, 4.0 / 3, -5.0 / 2, 4.0 / 3,
                                 -1.0 / 12};
    static const double w3[5] = {-0.5, 1.0, 0.0, -1.0, 0.5};
    static const double w4[5] = {1.0, -4.0, 6.0, -4.0, 1.0};
    auto weights = [&](int d) -> const double* {
        switch (d) {
            case 1: return w1;
            case 2: return w2;
            case 3: return w3;
            default: return w4;
        }
    };
    if (d1 == 0 && d2 == 0) return f(x1, x2);
    if (d1 > 0 && d2 > 0) {
        const double* wa = weights(d1);
        double acc = 0;
        for (int i = -2; i <= 2; ++i) {
            if (wa[i + 2] == 0.0) continue;
            acc += wa[i + 2] *
                   finite_difference([&](double a, double b) { return f(a, b); },
                                     x1 + i * h, x2, 0, d2, h);
        }
        return acc / std::pow(h, d1);
    }
    const double* wa = weights(d1 > 0 ? d1 : d2);
    double acc = 0;
    for (int i = -2; i <= 2; ++i) {
        if (wa[i + 2] == 0.0) continue;
        acc += wa[i + 2] * (d1 > 0 ? f(x1 + i * h, x2) : f(x1, x2 + i * h));
    }
    return acc / std::pow(h, d1 > 0 ? d1 : d2);
}

namespace {

Operator4 random_operator(std::mt19937& rng) {
    std::uniform_int_distribution<int> kind(0, 3);
    std::uniform_int_distribution<long long> c(-3, 3);
    auto coeff = [&]() -> Expr {
        switch (kind(rng)) {
            case 0: return Expr::constant(c(rng));
            case 1: return Expr::constant(c(rng)) * Expr::var(1);
            case 2: return Expr::constant(c(rng)) * Expr::var(2);
            default:
                return Expr::constant(c(rng)) +
                       Expr::constant(c(rng)) * (Expr::var(1) * Expr::var(2));
        }
    };
    Operator4 op;
    for (auto& e : op.A4) e = coeff();
    for (auto& e : op.A3) e = coeff();
    for (auto& e : op.A2) e = coeff();
    for (auto& e : op.A1) e = coeff();
    op.A0 = coeff();
    // keep the leading tensor nondegenerate
    op.A4[0] = op.A4[0] + Expr::constant(5);
    return op;
}

VectorField random_field(std::mt19937& rng) {
    std::uniform_int_distribution<long long> c(-2, 2);
    auto poly = [&]() {
        return Expr::constant(c(rng)) + Expr::constant(c(rng)) * Expr::var(1) +
               Expr::constant(c(rng)) * Expr::var(2) +
               Expr::constant(c(rng)) * (Expr::var(1) * Expr::var(2));
    };
    return {poly(), poly(), poly(), Expr::constant(0)};
}

}  // namespace

std::vector<std::pair<std::string, VerifyReport>> identity_battery(
    unsigned seed, double tol) {
    std::vector<std::pair<std::string, VerifyReport>> out;
    auto note = [&](const std::string& name, double worst) {
        VerifyReport rep;
        rep.tolerance = tol;
        rep.max_abs = worst;
        rep.pass = worst <= tol;
        out.emplace_back(name, rep);
    };

    std::mt19937 rng(seed);
    SampleSet s = SampleSet::standard(seed);
    double worst_noet = 0, worst_di = 0, worst_rec = 0, worst_el = 0,
           worst_adj = 0;

    for (int trial = 0; trial < 20; ++trial) {
        Operator4 raw = random_operator(rng);
        Operator4 op = symmetrize(raw);
        VectorField X = random_field(rng);
        JetExpr D = apply_op(op);

        // Noether identity on the (order-2 truncated) Lagrangian fragment
        // L = (1/2)(w_(2,0)^2 + w w_(1,1)) + coefficient terms
        JetExpr L = Expr::rational(1, 2) *
                        (JetExpr::jet({2, 0}) * JetExpr::jet({2, 0})) +
                    (Expr::var(1) * (JetExpr::w() * JetExpr::jet({1, 1}))) +
                    JetExpr::jet({2, 2}) * JetExpr::jet({1, 0});
        JetExpr Q = characteristic(X);
        CurrentPair N = noether_operators(Q, X.xi1, X.xi2, L);
        JetExpr lhs = prolong(X, L) + X.div_xi() * L;
        JetExpr rhs = Q * L.euler() + N.divergence();
        worst_noet = std::max(worst_noet, jet_residual(lhs, rhs, s));

        // DI: D_mu N^mu(-w D[w]) = -w prX(D[w]) - {eta + (div xi) w - 2Q} D[w]
        CurrentPair NwD = noether_operators(Q, X.xi1, X.xi2,
                                            -(JetExpr::w() * D));
        JetExpr eta = X.sigma * JetExpr::w();
        JetExpr di_rhs = -(JetExpr::w() * prolong(X, D)) -
                         (eta + X.div_xi() * JetExpr::w() - Q - Q) * D;
        worst_di = std::max(worst_di, jet_residual(NwD.divergence(), di_rhs, s));

        // RecId: D_mu N^mu(-w D[w]) with Q = v equals v D[w] - w D[v]
        Expr v = Expr::var(1) * Expr::var(1) +
                 Expr::constant(2) * (Expr::var(1) * Expr::var(2));
        CurrentPair R = reciprocity(op, v);
        JetExpr rec_rhs =
            v * D - JetExpr::from_expr(D.substitute_function(v)) * JetExpr::w();
        worst_rec = std::max(worst_rec, jet_residual(R.divergence(), rec_rhs, s));

        // E-L-1: E((1/2) w D[w]) = D[w]
        worst_el = std::max(worst_el, jet_residual(lagrangian(op).euler(), D, s));

        // double adjoint
        worst_adj = std::max(
            worst_adj, jet_residual(apply_op(adjoint(adjoint(raw))),
                                    apply_op(raw), s));
    }

    note("noether-identity", worst_noet);
    note("self-adjoint-divergence-identity", worst_di);
    note("reciprocity", worst_rec);
    note("euler-lagrange-consistency", worst_el);
    note("double-adjoint", worst_adj);
    return out;
}

}  // namespace liesym
