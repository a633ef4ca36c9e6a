#include "liesym/jet.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace liesym {

long long binom(int n, int r) {
    if (r < 0 || r > n) return 0;
    long long out = 1;
    for (int i = 0; i < r; ++i) out = out * (n - i) / (i + 1);
    return out;
}

JetPoint jet_point_of(const Expr& f, double x1, double x2, int order) {
    JetPoint p;
    p.x1 = x1;
    p.x2 = x2;
    std::array<std::array<Expr, kMaxJetOrder + 1>, kMaxJetOrder + 1> d;
    d[0][0] = f;
    for (int k = 0; k <= order; ++k) {
        for (int j = 0; j <= k; ++j) {
            if (k > 0) {
                if (j > 0)
                    d[k][j] = d[k - 1][j - 1].diff(2);
                else
                    d[k][j] = d[k - 1][0].diff(1);
            }
            p.w[k][j] = d[k][j].eval(x1, x2);
        }
    }
    return p;
}

void JetExpr::add_term(const Monomial& m, const Expr& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        Expr sum = it->second + c;
        if (sum.is_zero())
            terms_.erase(it);
        else
            it->second = sum;
    }
}

JetExpr JetExpr::from_expr(Expr coefficient) {
    JetExpr e;
    e.add_term({}, coefficient);
    return e;
}

JetExpr JetExpr::jet(JetCoord c) {
    if (c.k > kMaxJetOrder || c.j < 0 || c.j > c.k)
        throw std::invalid_argument("bad jet coordinate");
    JetExpr e;
    e.add_term({{c, 1}}, Expr::constant(1));
    return e;
}

int JetExpr::max_order() const {
    int out = -1;
    for (const auto& [m, c] : terms_)
        for (const auto& [coord, p] : m)
            if (coord.k > out) out = coord.k;
    return out;
}

bool JetExpr::is_linear() const {
    for (const auto& [m, c] : terms_) {
        int deg = 0;
        for (const auto& [coord, p] : m) deg += p;
        if (deg > 1) return false;
    }
    return true;
}

JetExpr JetExpr::operator-() const {
    JetExpr out;
    for (const auto& [m, c] : terms_) out.add_term(m, -c);
    return out;
}

JetExpr operator+(const JetExpr& a, const JetExpr& b) {
    JetExpr out = a;
    for (const auto& [m, c] : b.terms_) out.add_term(m, c);
    return out;
}

JetExpr operator-(const JetExpr& a, const JetExpr& b) { return a + (-b); }

JetExpr operator*(const JetExpr& a, const JetExpr& b) {
    JetExpr out;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            JetExpr::Monomial m = ma;
            for (const auto& [coord, p] : mb) m[coord] += p;
            out.add_term(m, ca * cb);
        }
    }
    return out;
}

JetExpr operator*(const Expr& a, const JetExpr& b) {
    return JetExpr::from_expr(a) * b;
}

JetExpr JetExpr::total_derivative(int axis) const {
    if (axis != 1 && axis != 2) throw std::invalid_argument("axis must be 1 or 2");
    JetExpr out;
    for (const auto& [m, c] : terms_) {
        out.add_term(m, c.diff(axis));
        for (const auto& [coord, p] : m) {
            JetCoord up{coord.k + 1, coord.j + (axis == 2 ? 1 : 0)};
            if (up.k > kMaxJetOrder)
                throw std::runtime_error("jet order overflow in total derivative");
            Monomial dm = m;
            if (--dm[coord] == 0) dm.erase(coord);
            ++dm[up];
            out.add_term(dm, Expr::constant(p) * c);
        }
    }
    return out;
}

JetExpr JetExpr::total_derivative(int r, int s) const {
    JetExpr out = *this;
    for (int i = 0; i < r; ++i) out = out.total_derivative(1);
    for (int i = 0; i < s; ++i) out = out.total_derivative(2);
    return out;
}

JetExpr JetExpr::jet_partial(JetCoord c) const {
    JetExpr out;
    for (const auto& [m, coeff] : terms_) {
        auto it = m.find(c);
        if (it == m.end()) continue;
        int p = it->second;
        Monomial dm = m;
        if (--dm[c] == 0) dm.erase(c);
        out.add_term(dm, Expr::constant(p) * coeff);
    }
    return out;
}

JetExpr JetExpr::euler() const {
    std::set<JetCoord> coords;
    for (const auto& [m, c] : terms_)
        for (const auto& [coord, p] : m) coords.insert(coord);
    JetExpr out;
    for (const JetCoord& c : coords) {
        JetExpr term = jet_partial(c).total_derivative(c.k - c.j, c.j);
        out = (c.k % 2 == 0) ? out + term : out - term;
    }
    return out;
}

Expr JetExpr::substitute_function(const Expr& f) const {
    int order = std::max(max_order(), 0);
    std::array<std::array<Expr, kMaxJetOrder + 1>, kMaxJetOrder + 1> d;
    d[0][0] = f;
    for (int k = 1; k <= order; ++k)
        for (int j = 0; j <= k; ++j)
            d[k][j] = (j > 0) ? d[k - 1][j - 1].diff(2) : d[k - 1][0].diff(1);
    Expr out = Expr::constant(0);
    for (const auto& [m, c] : terms_) {
        Expr term = c;
        for (const auto& [coord, p] : m)
            for (int i = 0; i < p; ++i) term = term * d[coord.k][coord.j];
        out = out + term;
    }
    return out;
}

double JetExpr::eval(const JetPoint& p) const {
    double out = 0.0;
    for (const auto& [m, c] : terms_) {
        double term = c.eval(p.x1, p.x2);
        for (const auto& [coord, pw] : m)
            term *= std::pow(p.w[coord.k][coord.j], pw);
        out += term;
    }
    return out;
}

}  // namespace liesym
