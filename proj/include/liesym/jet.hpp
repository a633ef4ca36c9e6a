#ifndef LIESYM_JET_HPP
#define LIESYM_JET_HPP

#include <array>
#include <compare>
#include <map>
#include <vector>

#include "liesym/expr.hpp"

namespace liesym {

/// Highest jet order tracked (fourth-order operators differentiated up to
/// four more times by the Noether machinery).
inline constexpr int kMaxJetOrder = 8;

/// Canonical jet coordinate: w_{(k,j)} is the derivative of total order k
/// with j indices equal to 2 (so D1^{k-j} D2^j w).  All orderings of a
/// mixed partial coincide, so (k,j) labels the whole symmetry class; the
/// class contains binom(k,j) ordered index tuples.
struct JetCoord {
    int k = 0;
    int j = 0;
    auto operator<=>(const JetCoord&) const = default;
};

long long binom(int n, int r);

/// Point in the jet bundle: base coordinates plus one value per canonical
/// jet coordinate, w[k][j].
struct JetPoint {
    double x1 = 0.0;
    double x2 = 0.0;
    std::array<std::array<double, kMaxJetOrder + 1>, kMaxJetOrder + 1> w{};
};

/// Evaluate all jet coordinates of a classical function w = f(x1, x2) at a
/// point, up to the given order.
JetPoint jet_point_of(const Expr& f, double x1, double x2,
                      int order = kMaxJetOrder);

/// Polynomial in the canonical jet coordinates with Expr coefficients.
class JetExpr {
  public:
    /// Monomial: jet coordinate -> power.
    using Monomial = std::map<JetCoord, int>;

    JetExpr() = default;

    static JetExpr from_expr(Expr coefficient);
    static JetExpr constant(Num c) { return from_expr(Expr::constant(c)); }
    static JetExpr jet(JetCoord c);            // the variable w_{(k,j)}
    static JetExpr w() { return jet({0, 0}); } // w itself

    const std::map<Monomial, Expr>& terms() const { return terms_; }
    bool structurally_zero() const { return terms_.empty(); }
    /// Largest total order k appearing, or -1 for a pure base expression.
    int max_order() const;
    /// True if every monomial has total degree <= 1 in the jet variables.
    bool is_linear() const;

    JetExpr operator-() const;
    friend JetExpr operator+(const JetExpr& a, const JetExpr& b);
    friend JetExpr operator-(const JetExpr& a, const JetExpr& b);
    friend JetExpr operator*(const JetExpr& a, const JetExpr& b);
    friend JetExpr operator*(const Expr& a, const JetExpr& b);

    /// Total derivative D_axis (axis is 1 or 2).
    JetExpr total_derivative(int axis) const;
    /// D1^r D2^s applied in sequence.
    JetExpr total_derivative(int r, int s) const;

    /// Formal partial with respect to the canonical coordinate w_{(k,j)}.
    JetExpr jet_partial(JetCoord c) const;

    /// Euler operator E(L) = sum_{(k,j)} (-1)^k D1^{k-j} D2^j dL/dw_{(k,j)}.
    JetExpr euler() const;

    /// Substitute w = f(x1, x2) (and hence w_{(k,j)} = D1^{k-j} D2^j f),
    /// yielding a plain expression on the base.
    Expr substitute_function(const Expr& f) const;

    double eval(const JetPoint& p) const;

  private:
    std::map<Monomial, Expr> terms_;
    void add_term(const Monomial& m, const Expr& c);
};

}  // namespace liesym

#endif
