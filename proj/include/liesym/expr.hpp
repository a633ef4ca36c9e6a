#ifndef LIESYM_EXPR_HPP
#define LIESYM_EXPR_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace liesym {

/// Thrown when an expression is evaluated outside its domain
/// (log of a non-positive number, fractional power of a negative base, ...).
struct EvalDomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
    std::size_t position;
};

/// Exact rational when possible, plain double otherwise. Rational arithmetic
/// falls back to double on overflow.
class Num {
  public:
    Num() : exact_(true), n_(0), d_(1), v_(0.0) {}
    Num(long long n) : exact_(true), n_(n), d_(1), v_(double(n)) {}
    Num(int n) : Num(static_cast<long long>(n)) {}
    Num(long long n, long long d);
    Num(double) = delete;  // use Num::real to avoid silent truncation
    static Num real(double v);

    bool exact() const { return exact_; }
    long long num() const { return n_; }
    long long den() const { return d_; }
    double value() const { return v_; }

    bool is_zero() const { return exact_ ? n_ == 0 : v_ == 0.0; }
    bool is_one() const { return exact_ ? (n_ == 1 && d_ == 1) : v_ == 1.0; }
    bool is_integer() const { return exact_ && d_ == 1; }

    friend Num operator+(const Num& a, const Num& b);
    friend Num operator-(const Num& a, const Num& b);
    friend Num operator*(const Num& a, const Num& b);
    friend Num operator/(const Num& a, const Num& b);
    Num operator-() const;
    bool same_as(const Num& o) const;

    std::string str() const;

  private:
    bool exact_;
    long long n_, d_;
    double v_;
};

/// Immutable symbolic expression over the two independent variables x1, x2.
/// Construction performs only trivial folding (exact rational constants,
/// neutral elements); there is no general simplifier.
class Expr {
  public:
    enum class Kind { Const, Var, Add, Mul, Pow, Exp, Ln, Sin, Cos, Sinh, Cosh, Atan2, Cbrt };

    Expr() : Expr(constant(0)) {}

    static Expr constant(Num c);
    static Expr constant(long long n) { return constant(Num(n)); }
    static Expr rational(long long n, long long d) { return constant(Num(n, d)); }
    static Expr real(double v) { return constant(Num::real(v)); }
    static Expr var(int axis);  // axis 1 -> x1, 2 -> x2

    Kind kind() const { return node_->kind; }
    bool is_constant() const { return kind() == Kind::Const; }
    bool is_zero() const { return is_constant() && node_->value.is_zero(); }
    bool is_one() const { return is_constant() && node_->value.is_one(); }
    const Num& const_value() const { return node_->value; }
    int var_axis() const { return node_->axis; }
    const std::vector<Expr>& children() const { return node_->children; }
    const Num& exponent() const { return node_->value; }  // for Pow nodes

    double eval(double x1, double x2) const;
    double eval1(double s) const { return eval(s, 0.0); }

    /// Exact partial derivative with respect to x^axis.
    Expr diff(int axis) const;

    /// Replace x^axis by the given expression.
    Expr substitute(int axis, const Expr& replacement) const;
    /// Simultaneous substitution x1 -> r1, x2 -> r2 (composition of maps).
    Expr substitute(const Expr& r1, const Expr& r2) const;

    std::string str() const;

    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator/(const Expr& a, const Expr& b);
    Expr operator-() const;

    friend Expr pow(const Expr& base, const Num& exponent);
    friend Expr exp(const Expr& e);
    friend Expr ln(const Expr& e);
    friend Expr sin(const Expr& e);
    friend Expr cos(const Expr& e);
    friend Expr sinh(const Expr& e);
    friend Expr cosh(const Expr& e);
    friend Expr atan2e(const Expr& num, const Expr& den);
    friend Expr cbrt(const Expr& e);  // signed real cube root
    friend Expr sqrt(const Expr& e);

  private:
    struct Node {
        Kind kind;
        Num value;                   // Const payload; Pow exponent
        int axis = 0;                // Var payload
        std::vector<Expr> children;  // n-ary for Add/Mul
    };
    std::shared_ptr<const Node> node_;
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static Expr make(Node&& n);
    static Expr unary(Kind k, const Expr& e);
    double eval_node(double x1, double x2) const;
};

inline Expr operator+(const Expr& a, double b) { return a + Expr::real(b); }
inline Expr operator*(double a, const Expr& b) { return Expr::real(a) * b; }
inline Expr operator*(long long a, const Expr& b) { return Expr::constant(a) * b; }
inline Expr operator*(int a, const Expr& b) { return Expr::constant((long long)a) * b; }

/// Parse an expression in the CLI grammar: identifiers x1, x2; decimal or
/// rational literals; + - * / ^; exp, ln, sin, cos, sinh, cosh, atan2(a,b),
/// sqrt, cbrt; parentheses.
Expr parse_expr(const std::string& text);

}  // namespace liesym

#endif
