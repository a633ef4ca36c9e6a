#include "liesym/expr.hpp"

#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

namespace liesym {

// ---------------------------------------------------------------- Num

namespace {
bool mul_overflows(long long a, long long b) {
    __int128 p = (__int128)a * (__int128)b;
    return p > INT64_MAX || p < INT64_MIN;
}
}  // namespace

Num::Num(long long n, long long d) {
    if (d == 0) throw EvalDomainError("rational with zero denominator");
    if (d < 0) { n = -n; d = -d; }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    exact_ = true;
    n_ = n;
    d_ = d;
    v_ = double(n) / double(d);
}

Num Num::real(double v) {
    Num r;
    r.exact_ = false;
    r.n_ = 0;
    r.d_ = 1;
    r.v_ = v;
    return r;
}

Num operator+(const Num& a, const Num& b) {
    if (a.exact_ && b.exact_) {
        if (!mul_overflows(a.n_, b.d_) && !mul_overflows(b.n_, a.d_) && !mul_overflows(a.d_, b.d_)) {
            long long x = a.n_ * b.d_, y = b.n_ * a.d_;
            if ((x > 0 && y > INT64_MAX - x) || (x < 0 && y < INT64_MIN - x))
                return Num::real(a.v_ + b.v_);
            return Num(x + y, a.d_ * b.d_);
        }
        return Num::real(a.v_ + b.v_);
    }
    return Num::real(a.v_ + b.v_);
}

Num operator-(const Num& a, const Num& b) { return a + (-b); }

Num operator*(const Num& a, const Num& b) {
    if (a.exact_ && b.exact_) {
        if (!mul_overflows(a.n_, b.n_) && !mul_overflows(a.d_, b.d_))
            return Num(a.n_ * b.n_, a.d_ * b.d_);
        return Num::real(a.v_ * b.v_);
    }
    return Num::real(a.v_ * b.v_);
}

Num operator/(const Num& a, const Num& b) {
    if (b.is_zero()) throw EvalDomainError("division by zero constant");
    if (a.exact_ && b.exact_) {
        if (!mul_overflows(a.n_, b.d_) && !mul_overflows(a.d_, b.n_))
            return Num(a.n_ * b.d_, a.d_ * b.n_);
        return Num::real(a.v_ / b.v_);
    }
    return Num::real(a.v_ / b.v_);
}

Num Num::operator-() const {
    if (exact_) return Num(-n_, d_);
    return Num::real(-v_);
}

bool Num::same_as(const Num& o) const {
    if (exact_ && o.exact_) return n_ == o.n_ && d_ == o.d_;
    return v_ == o.v_ && exact_ == o.exact_;
}

std::string Num::str() const {
    if (exact_) {
        if (d_ == 1) return std::to_string(n_);
        return std::to_string(n_) + "/" + std::to_string(d_);
    }
    std::ostringstream os;
    os.precision(17);
    os << v_;
    return os.str();
}

// ---------------------------------------------------------------- Expr construction

Expr Expr::make(Node&& n) { return Expr(std::make_shared<const Node>(std::move(n))); }

Expr Expr::constant(Num c) {
    Node n;
    n.kind = Kind::Const;
    n.value = c;
    return make(std::move(n));
}

Expr Expr::var(int axis) {
    Node n;
    n.kind = Kind::Var;
    n.axis = axis;
    return make(std::move(n));
}

namespace {
void flatten_into(Expr::Kind k, const Expr& e, std::vector<Expr>& out, Num& folded, bool& saw_exact) {
    if (e.kind() == k) {
        for (const auto& c : e.children()) flatten_into(k, c, out, folded, saw_exact);
        return;
    }
    if (e.is_constant() && e.const_value().exact()) {
        folded = (k == Expr::Kind::Add) ? folded + e.const_value() : folded * e.const_value();
        saw_exact = true;
        return;
    }
    out.push_back(e);
}
}  // namespace

Expr operator+(const Expr& a, const Expr& b) {
    std::vector<Expr> kids;
    Num folded(0);
    bool saw = false;
    flatten_into(Expr::Kind::Add, a, kids, folded, saw);
    flatten_into(Expr::Kind::Add, b, kids, folded, saw);
    if (saw && !folded.is_zero()) kids.push_back(Expr::constant(folded));
    if (kids.empty()) return Expr::constant(0);
    if (kids.size() == 1) return kids[0];
    Expr::Node n;
    n.kind = Expr::Kind::Add;
    n.children = std::move(kids);
    return Expr::make(std::move(n));
}

Expr operator*(const Expr& a, const Expr& b) {
    if (a.is_zero() || b.is_zero()) return Expr::constant(0);
    std::vector<Expr> kids;
    Num folded(1);
    bool saw = false;
    flatten_into(Expr::Kind::Mul, a, kids, folded, saw);
    flatten_into(Expr::Kind::Mul, b, kids, folded, saw);
    if (saw && folded.is_zero()) return Expr::constant(0);
    if (saw && !folded.is_one()) kids.insert(kids.begin(), Expr::constant(folded));
    if (kids.empty()) return Expr::constant(1);
    if (kids.size() == 1) return kids[0];
    Expr::Node n;
    n.kind = Expr::Kind::Mul;
    n.children = std::move(kids);
    return Expr::make(std::move(n));
}

Expr Expr::operator-() const { return Expr::constant(-1) * (*this); }
Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }
Expr operator/(const Expr& a, const Expr& b) { return a * pow(b, Num(-1)); }

Expr pow(const Expr& base, const Num& exponent) {
    if (exponent.is_zero()) return Expr::constant(1);
    if (exponent.is_one()) return base;
    if (base.is_constant() && base.const_value().exact() && exponent.is_integer()) {
        // fold small integer powers of exact rationals
        long long e = exponent.num();
        if (e > -16 && e < 16) {
            Num r(1);
            Num b = base.const_value();
            bool inv = e < 0;
            if (inv) e = -e;
            for (long long i = 0; i < e; ++i) r = r * b;
            if (inv) r = Num(1) / r;
            return Expr::constant(r);
        }
    }
    if (base.kind() == Expr::Kind::Pow) {
        Num combined = base.exponent() * exponent;
        // (u^p)^q = u^{pq} is only safe unconditionally when p, q are integers
        if (base.exponent().is_integer() && exponent.is_integer())
            return pow(base.children()[0], combined);
    }
    Expr::Node n;
    n.kind = Expr::Kind::Pow;
    n.value = exponent;
    n.children = {base};
    return Expr::make(std::move(n));
}

Expr Expr::unary(Kind k, const Expr& e) {
    Node n;
    n.kind = k;
    n.children = {e};
    return make(std::move(n));
}

Expr exp(const Expr& e) {
    if (e.is_zero()) return Expr::constant(1);
    return Expr::unary(Expr::Kind::Exp, e);
}
Expr ln(const Expr& e) {
    if (e.is_one()) return Expr::constant(0);
    return Expr::unary(Expr::Kind::Ln, e);
}
Expr sin(const Expr& e) {
    if (e.is_zero()) return Expr::constant(0);
    return Expr::unary(Expr::Kind::Sin, e);
}
Expr cos(const Expr& e) {
    if (e.is_zero()) return Expr::constant(1);
    return Expr::unary(Expr::Kind::Cos, e);
}
Expr sinh(const Expr& e) {
    if (e.is_zero()) return Expr::constant(0);
    return Expr::unary(Expr::Kind::Sinh, e);
}
Expr cosh(const Expr& e) {
    if (e.is_zero()) return Expr::constant(1);
    return Expr::unary(Expr::Kind::Cosh, e);
}
Expr cbrt(const Expr& e) { return Expr::unary(Expr::Kind::Cbrt, e); }
Expr sqrt(const Expr& e) { return pow(e, Num(1, 2)); }

Expr atan2e(const Expr& num, const Expr& den) {
    Expr::Node n;
    n.kind = Expr::Kind::Atan2;
    n.children = {num, den};
    return Expr::make(std::move(n));
}

// ---------------------------------------------------------------- eval

double Expr::eval(double x1, double x2) const { return eval_node(x1, x2); }

double Expr::eval_node(double x1, double x2) const {
    const Node& n = *node_;
    switch (n.kind) {
        case Kind::Const:
            return n.value.value();
        case Kind::Var:
            return n.axis == 1 ? x1 : x2;
        case Kind::Add: {
            double s = 0;
            for (const auto& c : n.children) s += c.eval_node(x1, x2);
            return s;
        }
        case Kind::Mul: {
            double p = 1;
            for (const auto& c : n.children) p *= c.eval_node(x1, x2);
            return p;
        }
        case Kind::Pow: {
            double b = n.children[0].eval_node(x1, x2);
            if (n.value.is_integer()) {
                if (b == 0.0 && n.value.num() < 0) throw EvalDomainError("division by zero");
                return std::pow(b, double(n.value.num()));
            }
            if (b < 0) throw EvalDomainError("fractional power of negative base");
            if (b == 0 && n.value.value() < 0) throw EvalDomainError("division by zero");
            return std::pow(b, n.value.value());
        }
        case Kind::Exp:
            return std::exp(n.children[0].eval_node(x1, x2));
        case Kind::Ln: {
            double a = n.children[0].eval_node(x1, x2);
            if (a <= 0) throw EvalDomainError("log of non-positive value");
            return std::log(a);
        }
        case Kind::Sin:
            return std::sin(n.children[0].eval_node(x1, x2));
        case Kind::Cos:
            return std::cos(n.children[0].eval_node(x1, x2));
        case Kind::Sinh:
            return std::sinh(n.children[0].eval_node(x1, x2));
        case Kind::Cosh:
            return std::cosh(n.children[0].eval_node(x1, x2));
        case Kind::Atan2: {
            double a = n.children[0].eval_node(x1, x2);
            double b = n.children[1].eval_node(x1, x2);
            if (a == 0 && b == 0) throw EvalDomainError("atan2(0,0)");
            return std::atan2(a, b);
        }
        case Kind::Cbrt:
            return std::cbrt(n.children[0].eval_node(x1, x2));
    }
    throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------- diff

Expr Expr::diff(int axis) const {
    const Node& n = *node_;
    switch (n.kind) {
        case Kind::Const:
            return constant(0);
        case Kind::Var:
            return constant(n.axis == axis ? 1 : 0);
        case Kind::Add: {
            Expr s = constant(0);
            for (const auto& c : n.children) s = s + c.diff(axis);
            return s;
        }
        case Kind::Mul: {
            Expr s = constant(0);
            for (std::size_t i = 0; i < n.children.size(); ++i) {
                Expr term = n.children[i].diff(axis);
                for (std::size_t j = 0; j < n.children.size(); ++j)
                    if (j != i) term = term * n.children[j];
                s = s + term;
            }
            return s;
        }
        case Kind::Pow: {
            const Expr& u = n.children[0];
            return constant(n.value.exact() ? Num(n.value.num(), n.value.den()) : n.value) *
                   pow(u, n.value - Num(1)) * u.diff(axis);
        }
        case Kind::Exp:
            return (*this) * n.children[0].diff(axis);
        case Kind::Ln:
            return n.children[0].diff(axis) / n.children[0];
        case Kind::Sin:
            return cos(n.children[0]) * n.children[0].diff(axis);
        case Kind::Cos:
            return -(sin(n.children[0]) * n.children[0].diff(axis));
        case Kind::Sinh:
            return cosh(n.children[0]) * n.children[0].diff(axis);
        case Kind::Cosh:
            return sinh(n.children[0]) * n.children[0].diff(axis);
        case Kind::Atan2: {
            const Expr& a = n.children[0];
            const Expr& b = n.children[1];
            return (a.diff(axis) * b - a * b.diff(axis)) / (a * a + b * b);
        }
        case Kind::Cbrt: {
            // signed cube root: d cbrt(u) = u' / (3 cbrt(u)^2)
            const Expr& u = n.children[0];
            return u.diff(axis) / (constant(3) * pow(cbrt(u), Num(2)));
        }
    }
    throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------- substitute

Expr Expr::substitute(int axis, const Expr& replacement) const {
    const Expr keep1 = var(1), keep2 = var(2);
    return substitute(axis == 1 ? replacement : keep1,
                      axis == 2 ? replacement : keep2);
}

Expr Expr::substitute(const Expr& r1, const Expr& r2) const {
    const Node& n = *node_;
    switch (n.kind) {
        case Kind::Const:
            return *this;
        case Kind::Var:
            return n.axis == 1 ? r1 : r2;
        default: {
            std::vector<Expr> kids;
            kids.reserve(n.children.size());
            bool changed = false;
            for (const auto& c : n.children) {
                kids.push_back(c.substitute(r1, r2));
                changed = changed || kids.back().node_ != c.node_;
            }
            if (!changed) return *this;
            switch (n.kind) {
                case Kind::Add: {
                    Expr s = constant(0);
                    for (const auto& k : kids) s = s + k;
                    return s;
                }
                case Kind::Mul: {
                    Expr p = constant(1);
                    for (const auto& k : kids) p = p * k;
                    return p;
                }
                case Kind::Pow:
                    return pow(kids[0], n.value);
                case Kind::Exp:
                    return exp(kids[0]);
                case Kind::Ln:
                    return ln(kids[0]);
                case Kind::Sin:
                    return sin(kids[0]);
                case Kind::Cos:
                    return cos(kids[0]);
                case Kind::Sinh:
                    return sinh(kids[0]);
                case Kind::Cosh:
                    return cosh(kids[0]);
                case Kind::Atan2:
                    return atan2e(kids[0], kids[1]);
                case Kind::Cbrt:
                    return cbrt(kids[0]);
                default:
                    throw std::logic_error("unreachable");
            }
        }
    }
}

// ---------------------------------------------------------------- print

namespace {
int precedence(Expr::Kind k) {
    switch (k) {
        case Expr::Kind::Add: return 1;
        case Expr::Kind::Mul: return 2;
        case Expr::Kind::Pow: return 3;
        default: return 4;
    }
}
}  // namespace

std::string Expr::str() const {
    const Node& n = *node_;
    auto wrap = [&](const Expr& c) {
        std::string s = c.str();
        bool neg_const = c.is_constant() && c.const_value().value() < 0;
        if (precedence(c.kind()) <= precedence(n.kind) || neg_const) return "(" + s + ")";
        return s;
    };
    switch (n.kind) {
        case Kind::Const:
            return n.value.str();
        case Kind::Var:
            return n.axis == 1 ? "x1" : "x2";
        case Kind::Add: {
            std::string s;
            for (std::size_t i = 0; i < n.children.size(); ++i) {
                if (i) s += " + ";
                s += n.children[i].str();
            }
            return s;
        }
        case Kind::Mul: {
            std::string s;
            for (std::size_t i = 0; i < n.children.size(); ++i) {
                if (i) s += "*";
                s += wrap(n.children[i]);
            }
            return s;
        }
        case Kind::Pow: {
            std::string e = n.value.str();
            if (!n.value.is_integer() || n.value.num() < 0) e = "(" + e + ")";
            return wrap(n.children[0]) + "^" + e;
        }
        case Kind::Exp:
            return "exp(" + n.children[0].str() + ")";
        case Kind::Ln:
            return "ln(" + n.children[0].str() + ")";
        case Kind::Sin:
            return "sin(" + n.children[0].str() + ")";
        case Kind::Cos:
            return "cos(" + n.children[0].str() + ")";
        case Kind::Sinh:
            return "sinh(" + n.children[0].str() + ")";
        case Kind::Cosh:
            return "cosh(" + n.children[0].str() + ")";
        case Kind::Atan2:
            return "atan2(" + n.children[0].str() + ", " + n.children[1].str() + ")";
        case Kind::Cbrt:
            return "cbrt(" + n.children[0].str() + ")";
    }
    throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------- parser

namespace {

class Parser {
  public:
    explicit Parser(const std::string& text) : s_(text) {}

    Expr parse() {
        Expr e = expression();
        skip_ws();
        if (pos_ != s_.size()) throw ParseError("unexpected trailing input", pos_);
        return e;
    }

  private:
    const std::string& s_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
        return false;
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    Expr expression() {
        Expr e = term();
        for (;;) {
            if (eat('+')) e = e + term();
            else if (eat('-')) e = e - term();
            else return e;
        }
    }

    Expr term() {
        Expr e = factor();
        for (;;) {
            if (eat('*')) e = e * factor();
            else if (eat('/')) e = e / factor();
            else return e;
        }
    }

    Expr factor() {
        if (eat('-')) return -factor();
        if (eat('+')) return factor();
        Expr base = primary();
        if (eat('^')) {
            Expr ex = factor();  // right associative
            if (!ex.is_constant())
                throw ParseError("exponent must be a constant", pos_);
            return pow(base, ex.const_value());
        }
        return base;
    }

    Expr primary() {
        skip_ws();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = expression();
            if (!eat(')')) throw ParseError("expected ')'", pos_);
            return e;
        }
        if (std::isdigit((unsigned char)c) || c == '.') return number();
        if (std::isalpha((unsigned char)c)) return identifier();
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    Expr number() {
        std::size_t start = pos_;
        bool is_float = false;
        while (pos_ < s_.size() &&
               (std::isdigit((unsigned char)s_[pos_]) || s_[pos_] == '.' || s_[pos_] == 'e' ||
                s_[pos_] == 'E' ||
                ((s_[pos_] == '+' || s_[pos_] == '-') && pos_ > start &&
                 (s_[pos_ - 1] == 'e' || s_[pos_ - 1] == 'E')))) {
            if (s_[pos_] == '.' || s_[pos_] == 'e' || s_[pos_] == 'E') is_float = true;
            ++pos_;
        }
        std::string tok = s_.substr(start, pos_ - start);
        if (is_float) return Expr::real(std::stod(tok));
        return Expr::constant(std::stoll(tok));
    }

    Expr identifier() {
        std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum((unsigned char)s_[pos_]) || s_[pos_] == '_'))
            ++pos_;
        std::string name = s_.substr(start, pos_ - start);
        if (name == "x1") return Expr::var(1);
        if (name == "x2") return Expr::var(2);
        if (!eat('(')) throw ParseError("unknown identifier '" + name + "'", start);
        Expr a = expression();
        if (name == "atan2") {
            if (!eat(',')) throw ParseError("atan2 expects two arguments", pos_);
            Expr b = expression();
            if (!eat(')')) throw ParseError("expected ')'", pos_);
            return atan2e(a, b);
        }
        if (!eat(')')) throw ParseError("expected ')'", pos_);
        if (name == "exp") return exp(a);
        if (name == "ln") return ln(a);
        if (name == "sin") return sin(a);
        if (name == "cos") return cos(a);
        if (name == "sinh") return sinh(a);
        if (name == "cosh") return cosh(a);
        if (name == "sqrt") return sqrt(a);
        if (name == "cbrt") return cbrt(a);
        throw ParseError("unknown function '" + name + "'", start);
    }
};

}  // namespace

Expr parse_expr(const std::string& text) { return Parser(text).parse(); }

}  // namespace liesym
