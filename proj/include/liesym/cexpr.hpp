#ifndef LIESYM_CEXPR_HPP
#define LIESYM_CEXPR_HPP

#include <complex>
#include <memory>
#include <utility>
#include <vector>

#include "liesym/expr.hpp"

namespace liesym {

/// Immutable expression tree over the complex variable z = x1 + i x2.
/// Powers and logarithms use the principal branch; realify() expands them
/// through polar form (ln, atan2), valid off the negative x1-axis.
class CExpr {
  public:
    enum class Kind { Const, Z, Add, Mul, Neg, Recip, Pow, Exp, Ln };

    CExpr() : CExpr(constant(0.0)) {}

    static CExpr constant(std::complex<double> c);
    static CExpr z();

    Kind kind() const { return node_->kind; }
    std::complex<double> const_value() const { return node_->value; }
    double exponent() const { return node_->expnt; }
    const std::vector<CExpr>& children() const { return node_->children; }

    std::complex<double> eval(std::complex<double> zv) const;

    /// Complex derivative d/dz.
    CExpr diff() const;

    /// Replace z by the given expression (composition).
    CExpr substitute(const CExpr& replacement) const;

    /// (Re, Im) as real expressions in (x1, x2).
    std::pair<Expr, Expr> realify() const;

    friend CExpr operator+(const CExpr& a, const CExpr& b);
    friend CExpr operator-(const CExpr& a, const CExpr& b);
    friend CExpr operator*(const CExpr& a, const CExpr& b);
    friend CExpr operator/(const CExpr& a, const CExpr& b);
    CExpr operator-() const;

    friend CExpr recip(const CExpr& e);
    friend CExpr cpow(const CExpr& base, double exponent);  // principal branch
    friend CExpr cexp(const CExpr& e);
    friend CExpr cln(const CExpr& e);  // principal branch

  private:
    struct Node {
        Kind kind;
        std::complex<double> value{};
        double expnt = 0.0;
        std::vector<CExpr> children;
    };
    std::shared_ptr<const Node> node_;
    explicit CExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static CExpr make(Node&& n);
};

struct DegenerateSeed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Schwarzian derivative (w''/w')' - (1/2)(w''/w')^2.
/// Throws DegenerateSeed if the derivative of omega vanishes identically
/// (checked at a few sample points).
CExpr schwarzian(const CExpr& omega);

}  // namespace liesym

#endif
