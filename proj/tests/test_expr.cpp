#include <doctest.h>

#include <cmath>
#include <random>

#include "liesym/expr.hpp"

using namespace liesym;

namespace {

double central_diff(const Expr& e, int axis, double x1, double x2,
                    double h = 1e-5) {
    if (axis == 1) return (e.eval(x1 + h, x2) - e.eval(x1 - h, x2)) / (2 * h);
    return (e.eval(x1, x2 + h) - e.eval(x1, x2 - h)) / (2 * h);
}

// Random expression tree built only from operations smooth on (0.2, 2)^2,
// so finite differences are well-conditioned.
Expr random_tree(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> leaf(0, 2), op(0, 6);
    std::uniform_real_distribution<double> cval(0.3, 2.0);
    if (depth == 0 || leaf(rng) == 0) {
        switch (leaf(rng)) {
            case 0: return Expr::real(cval(rng));
            case 1: return Expr::var(1);
            default: return Expr::var(2);
        }
    }
    Expr a = random_tree(rng, depth - 1);
    Expr b = random_tree(rng, depth - 1);
    switch (op(rng)) {
        case 0: return a + b;
        case 1: return a * b;
        case 2: return sin(a);
        case 3: return cos(a);
        case 4: return exp(Expr::rational(1, 4) * a);
        case 5: return a - b;
        default: return sinh(Expr::rational(1, 4) * a);
    }
}

}  // namespace

TEST_CASE("parse basic forms") {
    Expr e = parse_expr("x1^2 + x2^2");
    CHECK(e.eval(3.0, 4.0) == doctest::Approx(25.0));
    CHECK(e.eval(-1.5, 2.0) == doctest::Approx(2.25 + 4.0));

    Expr a11 = parse_expr("(2-8)*(x1^2-x2^2)/((x1^2+x2^2)^2)");
    double x1 = 1.2, x2 = -0.7;
    double rho2 = x1 * x1 + x2 * x2;
    CHECK(a11.eval(x1, x2) ==
          doctest::Approx(-6.0 * (x1 * x1 - x2 * x2) / (rho2 * rho2)));

    Expr w = parse_expr("cos(x1 - x2)");
    CHECK(w.eval(0.4, 0.1) == doctest::Approx(std::cos(0.3)));
}

TEST_CASE("parse rationals, functions, precedence") {
    CHECK(parse_expr("1/2 * x1").eval(3.0, 0.0) == doctest::Approx(1.5));
    CHECK(parse_expr("2 + 3 * 4 ^ 2").eval(0, 0) == doctest::Approx(50.0));
    CHECK(parse_expr("-x1^2").eval(2.0, 0.0) == doctest::Approx(-4.0));
    CHECK(parse_expr("sqrt(x1)").eval(9.0, 0.0) == doctest::Approx(3.0));
    CHECK(parse_expr("cbrt(x1)").eval(-8.0, 0.0) == doctest::Approx(-2.0));
    CHECK(parse_expr("atan2(x2, x1)").eval(1.0, 1.0) ==
          doctest::Approx(std::atan2(1.0, 1.0)));
    CHECK(parse_expr("sinh(x1)*cosh(x2)").eval(0.3, 0.5) ==
          doctest::Approx(std::sinh(0.3) * std::cosh(0.5)));
}

TEST_CASE("parse errors carry position") {
    CHECK_THROWS_AS(parse_expr("x1 + "), ParseError);
    CHECK_THROWS_AS(parse_expr("x3"), ParseError);
    CHECK_THROWS_AS(parse_expr("foo(x1)"), ParseError);
    CHECK_THROWS_AS(parse_expr("(x1"), ParseError);
}

TEST_CASE("print/parse round trip is evaluation-equivalent") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> pt(0.3, 1.8);
    for (int i = 0; i < 40; ++i) {
        Expr e = random_tree(rng, 4);
        Expr back = parse_expr(e.str());
        for (int p = 0; p < 5; ++p) {
            double x1 = pt(rng), x2 = pt(rng);
            double v = e.eval(x1, x2);
            CHECK(back.eval(x1, x2) == doctest::Approx(v).epsilon(1e-10));
        }
    }
}

TEST_CASE("diff basics") {
    CHECK(Expr::constant(5).diff(1).is_zero());
    Expr e = Expr::var(1) * Expr::var(2);
    Expr d = e.diff(2);
    CHECK(d.eval(3.0, 99.0) == doctest::Approx(3.0));

    // d/dx1 of (1/2) ln(x1^2 + x2^2) = x1 / (x1^2 + x2^2)
    Expr half_ln = Expr::rational(1, 2) *
                   ln(Expr::var(1) * Expr::var(1) + Expr::var(2) * Expr::var(2));
    Expr g = half_ln.diff(1);
    for (double x1 : {0.5, 1.7, -2.0}) {
        for (double x2 : {0.3, -1.1}) {
            CHECK(g.eval(x1, x2) ==
                  doctest::Approx(x1 / (x1 * x1 + x2 * x2)).epsilon(1e-12));
        }
    }
}

TEST_CASE("diff matches central differences on random trees") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> pt(0.3, 1.8);
    int checked = 0;
    for (int i = 0; i < 25 && checked < 100; ++i) {
        Expr e = random_tree(rng, 6);
        Expr d1 = e.diff(1), d2 = e.diff(2);
        for (int p = 0; p < 4 && checked < 100; ++p, ++checked) {
            double x1 = pt(rng), x2 = pt(rng);
            double v = e.eval(x1, x2);
            double tol = 1e-6 * (1.0 + std::abs(v));
            CHECK(std::abs(d1.eval(x1, x2) - central_diff(e, 1, x1, x2)) <= tol);
            CHECK(std::abs(d2.eval(x1, x2) - central_diff(e, 2, x1, x2)) <= tol);
        }
    }
    CHECK(checked == 100);
}

TEST_CASE("pow domain handling") {
    Expr e = pow(Expr::var(1), Num(1, 2));
    CHECK(e.eval(4.0, 0.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(e.eval(-4.0, 0.0), EvalDomainError);
    CHECK_THROWS_AS(ln(Expr::var(1)).eval(-1.0, 0.0), EvalDomainError);
    CHECK_THROWS_AS(pow(Expr::var(1), Num(-1)).eval(0.0, 0.0), EvalDomainError);
    // signed cube root is fine on negatives
    CHECK(cbrt(Expr::var(1)).eval(-27.0, 0.0) == doctest::Approx(-3.0));
}

TEST_CASE("substitute composes") {
    Expr e = sin(Expr::var(1)) + Expr::var(2);
    Expr s = e.substitute(1, Expr::var(2) * Expr::var(2));
    CHECK(s.eval(99.0, 0.5) == doctest::Approx(std::sin(0.25) + 0.5));
}

TEST_CASE("exact rational folding") {
    Expr e = Expr::rational(1, 3) + Expr::rational(1, 6);
    CHECK(e.kind() == Expr::Kind::Const);
    CHECK(e.const_value().same_as(Num(1, 2)));
    CHECK((Expr::constant(0) * parse_expr("sin(x1)")).is_zero());
}
