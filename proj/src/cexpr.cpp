#include "liesym/cexpr.hpp"

#include <cmath>

namespace liesym {

CExpr CExpr::make(Node&& n) {
    return CExpr(std::make_shared<const Node>(std::move(n)));
}

CExpr CExpr::constant(std::complex<double> c) {
    Node n;
    n.kind = Kind::Const;
    n.value = c;
    return make(std::move(n));
}

CExpr CExpr::z() {
    Node n;
    n.kind = Kind::Z;
    return make(std::move(n));
}

namespace {
bool is_const(const CExpr& e) { return e.kind() == CExpr::Kind::Const; }
bool is_zero(const CExpr& e) {
    return is_const(e) && e.const_value() == std::complex<double>(0.0);
}
bool is_one(const CExpr& e) {
    return is_const(e) && e.const_value() == std::complex<double>(1.0);
}
}  // namespace

CExpr operator+(const CExpr& a, const CExpr& b) {
    if (is_const(a) && is_const(b))
        return CExpr::constant(a.const_value() + b.const_value());
    if (is_zero(a)) return b;
    if (is_zero(b)) return a;
    CExpr::Node n;
    n.kind = CExpr::Kind::Add;
    n.children = {a, b};
    return CExpr::make(std::move(n));
}

CExpr CExpr::operator-() const {
    if (is_const(*this)) return constant(-const_value());
    if (kind() == Kind::Neg) return children()[0];
    Node n;
    n.kind = Kind::Neg;
    n.children = {*this};
    return make(std::move(n));
}

CExpr operator-(const CExpr& a, const CExpr& b) { return a + (-b); }

CExpr operator*(const CExpr& a, const CExpr& b) {
    if (is_const(a) && is_const(b))
        return CExpr::constant(a.const_value() * b.const_value());
    if (is_zero(a) || is_zero(b)) return CExpr::constant(0.0);
    if (is_one(a)) return b;
    if (is_one(b)) return a;
    CExpr::Node n;
    n.kind = CExpr::Kind::Mul;
    n.children = {a, b};
    return CExpr::make(std::move(n));
}

CExpr recip(const CExpr& e) {
    if (is_const(e)) return CExpr::constant(1.0 / e.const_value());
    if (e.kind() == CExpr::Kind::Recip) return e.children()[0];
    CExpr::Node n;
    n.kind = CExpr::Kind::Recip;
    n.children = {e};
    return CExpr::make(std::move(n));
}

CExpr operator/(const CExpr& a, const CExpr& b) { return a * recip(b); }

CExpr cpow(const CExpr& base, double exponent) {
    if (exponent == 0.0) return CExpr::constant(1.0);
    if (exponent == 1.0) return base;
    if (is_const(base))
        return CExpr::constant(std::pow(base.const_value(), exponent));
    CExpr::Node n;
    n.kind = CExpr::Kind::Pow;
    n.expnt = exponent;
    n.children = {base};
    return CExpr::make(std::move(n));
}

CExpr cexp(const CExpr& e) {
    if (is_const(e)) return CExpr::constant(std::exp(e.const_value()));
    CExpr::Node n;
    n.kind = CExpr::Kind::Exp;
    n.children = {e};
    return CExpr::make(std::move(n));
}

CExpr cln(const CExpr& e) {
    if (is_const(e)) return CExpr::constant(std::log(e.const_value()));
    CExpr::Node n;
    n.kind = CExpr::Kind::Ln;
    n.children = {e};
    return CExpr::make(std::move(n));
}

std::complex<double> CExpr::eval(std::complex<double> zv) const {
    switch (kind()) {
        case Kind::Const:
            return const_value();
        case Kind::Z:
            return zv;
        case Kind::Add:
            return children()[0].eval(zv) + children()[1].eval(zv);
        case Kind::Mul:
            return children()[0].eval(zv) * children()[1].eval(zv);
        case Kind::Neg:
            return -children()[0].eval(zv);
        case Kind::Recip: {
            auto v = children()[0].eval(zv);
            if (v == std::complex<double>(0.0))
                throw EvalDomainError("complex division by zero");
            return 1.0 / v;
        }
        case Kind::Pow:
            return std::pow(children()[0].eval(zv), exponent());
        case Kind::Exp:
            return std::exp(children()[0].eval(zv));
        case Kind::Ln: {
            auto v = children()[0].eval(zv);
            if (v == std::complex<double>(0.0))
                throw EvalDomainError("ln of zero");
            return std::log(v);
        }
    }
    throw std::logic_error("unreachable");
}

CExpr CExpr::diff() const {
    switch (kind()) {
        case Kind::Const:
            return constant(0.0);
        case Kind::Z:
            return constant(1.0);
        case Kind::Add:
            return children()[0].diff() + children()[1].diff();
        case Kind::Mul:
            return children()[0].diff() * children()[1] +
                   children()[0] * children()[1].diff();
        case Kind::Neg:
            return -children()[0].diff();
        case Kind::Recip: {
            const CExpr& u = children()[0];
            return -(u.diff() * recip(u * u));
        }
        case Kind::Pow: {
            const CExpr& u = children()[0];
            return constant(exponent()) * cpow(u, exponent() - 1.0) * u.diff();
        }
        case Kind::Exp:
            return children()[0].diff() * *this;
        case Kind::Ln:
            return children()[0].diff() * recip(children()[0]);
    }
    throw std::logic_error("unreachable");
}

CExpr CExpr::substitute(const CExpr& replacement) const {
    switch (kind()) {
        case Kind::Const:
            return *this;
        case Kind::Z:
            return replacement;
        case Kind::Add:
            return children()[0].substitute(replacement) +
                   children()[1].substitute(replacement);
        case Kind::Mul:
            return children()[0].substitute(replacement) *
                   children()[1].substitute(replacement);
        case Kind::Neg:
            return -children()[0].substitute(replacement);
        case Kind::Recip:
            return recip(children()[0].substitute(replacement));
        case Kind::Pow:
            return cpow(children()[0].substitute(replacement), exponent());
        case Kind::Exp:
            return cexp(children()[0].substitute(replacement));
        case Kind::Ln:
            return cln(children()[0].substitute(replacement));
    }
    throw std::logic_error("unreachable");
}

std::pair<Expr, Expr> CExpr::realify() const {
    switch (kind()) {
        case Kind::Const:
            return {Expr::real(const_value().real()),
                    Expr::real(const_value().imag())};
        case Kind::Z:
            return {Expr::var(1), Expr::var(2)};
        case Kind::Add: {
            auto [a, b] = children()[0].realify();
            auto [c, d] = children()[1].realify();
            return {a + c, b + d};
        }
        case Kind::Mul: {
            auto [a, b] = children()[0].realify();
            auto [c, d] = children()[1].realify();
            return {a * c - b * d, a * d + b * c};
        }
        case Kind::Neg: {
            auto [a, b] = children()[0].realify();
            return {-a, -b};
        }
        case Kind::Recip: {
            auto [a, b] = children()[0].realify();
            Expr m = pow(a * a + b * b, Num(-1));
            return {a * m, -(b * m)};
        }
        case Kind::Pow: {
            auto [a, b] = children()[0].realify();
            double p = exponent();
            Expr r = pow(a * a + b * b, Num::real(p / 2.0));
            Expr th = atan2e(b, a);
            return {r * cos(Expr::real(p) * th), r * sin(Expr::real(p) * th)};
        }
        case Kind::Exp: {
            auto [a, b] = children()[0].realify();
            Expr m = exp(a);
            return {m * cos(b), m * sin(b)};
        }
        case Kind::Ln: {
            auto [a, b] = children()[0].realify();
            return {Expr::rational(1, 2) * ln(a * a + b * b), atan2e(b, a)};
        }
    }
    throw std::logic_error("unreachable");
}

CExpr schwarzian(const CExpr& omega) {
    CExpr d1 = omega.diff();
    bool nonzero = false;
    for (double re : {0.7, 1.3, -0.9}) {
        for (double im : {0.4, -0.6}) {
            try {
                if (std::abs(d1.eval({re, im})) > 1e-12) nonzero = true;
            } catch (const EvalDomainError&) {
            }
        }
    }
    if (!nonzero) throw DegenerateSeed("seed function has vanishing derivative");
    CExpr g = d1.diff() / d1;
    return g.diff() - CExpr::constant(0.5) * g * g;
}

}  // namespace liesym
