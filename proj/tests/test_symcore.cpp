#include <doctest.h>

#include "sfint/expr.hpp"
#include "sfint/numeric.hpp"
#include "sfint/parse.hpp"
#include "sfint/poly.hpp"
#include "sfint/sample.hpp"

using namespace sfint;

TEST_CASE("rational arithmetic stays reduced") {
    Rat a(2, 4);
    CHECK(a == Rat(1, 2));
    CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
    CHECK(Rat(-3, -9) == Rat(1, 3));
    CHECK((Rat(2, 3) * Rat(9, 4)) == Rat(3, 2));
    CHECK_THROWS_AS(Rat(1, 0), DivisionByZero);
}

TEST_CASE("polynomial algebra in graded lex order") {
    Poly x = Poly::variable(var_x());
    Poly y = Poly::variable(var_y());
    Poly p = (x + y) * (x + y);
    CHECK(p == x * x + Rat(2) * (x * y) + y * y);
    CHECK(p.total_degree() == 2);
    CHECK(p.degree_in(var_x()) == 2);
    Poly q = x * x - y * y;
    Poly g = poly_gcd(p, q);
    // gcd is x + y up to normalization
    CHECK(poly_div_exact(p, g).has_value());
    CHECK(poly_div_exact(q, g).has_value());
    CHECK(g.total_degree() == 1);
}

TEST_CASE("polynomial division and gcd round trip") {
    Poly x = Poly::variable(var_x());
    Poly z = Poly::variable(var_z());
    Poly a = (x * z + Poly(Rat(1))) * (x - z) * (x - z);
    Poly b = (x * z + Poly(Rat(1))) * (x + z);
    Poly g = poly_gcd(a, b);
    auto qa = poly_div_exact(a, g);
    auto qb = poly_div_exact(b, g);
    REQUIRE(qa);
    REQUIRE(qb);
    CHECK(*qa * g == a);
    CHECK(*qb * g == b);
}

TEST_CASE("rational functions normalize to coprime form") {
    Poly x = Poly::variable(var_x());
    Poly y = Poly::variable(var_y());
    RatFunc f(x * x - y * y, x + y);
    CHECK(f == RatFunc(x - y));
    RatFunc gg = RatFunc(x, y) + RatFunc(y, x);
    CHECK(gg == RatFunc(x * x + y * y, x * y));
    CHECK(RatFunc(x, y).inverse() == RatFunc(y, x));
}

TEST_CASE("expression parser round trips the printer") {
    const char* samples[] = {
        "x",
        "x + 2*y - 3*z",
        "(x^5 - y)/(x*z + 1)",
        "exp(-x)*(z*x^4 - y)/(z - x)",
        "ln(x*z^4 + y) - y*z^3",
        "exp(1/(y*z^2 + x))/(y*z^2 + x)^2",
        "Integral(exp(1/(x + 1)), x)",
        "2/3*x^2 - 1/7",
    };
    for (const char* s : samples) {
        Expr e = parse_expr(s);
        Expr again = parse_expr(e.to_string());
        CHECK(again.to_string() == e.to_string());
    }
}

TEST_CASE("derivatives follow the chain rule") {
    Expr e = parse_expr("exp(-x)*(z*x^4 - y)/(z - x)");
    Expr d = e.derivative(var_y());
    // d/dy = -exp(-x)/(z - x)
    Expr want = parse_expr("-exp(-x)/(z - x)");
    Expr diff = d - want;
    RatPoint pt{{var_x(), Rat(1, 3)}, {var_y(), Rat(2, 5)}, {var_z(), Rat(7, 2)}};
    NumVal v = eval_expr_checked(diff, pt, 1e-30, EvalOptions{});
    CHECK(numeric_zero(v, 1e-30));
}

TEST_CASE("derivative matches central finite differences") {
    PointSampler sampler(7);
    const char* samples[] = {
        "x^3*y - z/x",
        "exp(x*y)",
        "ln(x^2 + y^2)",
        "(x - y)/(x + z)",
        "exp(-x)*(z*x^4 - y)/(z - x)",
    };
    EvalOptions opt;
    opt.prec = 256;
    for (const char* s : samples) {
        Expr e = parse_expr(s);
        Expr de = e.derivative(var_x());
        std::vector<VarId> vars{var_x(), var_y(), var_z()};
        for (int k = 0; k < 4; ++k) {
            RatPoint pt = sampler.point(vars);
            try {
                Rat h(1, 1000000);  // rational step keeps the evaluation exact at 256 bits
                RatPoint hi = pt, lo = pt;
                hi[var_x()] = pt[var_x()] + h;
                lo[var_x()] = pt[var_x()] - h;
                NumVal fhi = eval_expr_checked(e, hi, 1e-40, opt);
                NumVal flo = eval_expr_checked(e, lo, 1e-40, opt);
                NumVal dv = eval_expr_checked(de, pt, 1e-40, opt);
                BigFloat fd = (fhi.val - flo.val) / BigFloat(Rat(1, 500000), 256);
                BigFloat err = (fd - dv.val).abs();
                // second order accuracy: error ~ h^2 ~ 1e-12 absolute
                CHECK(err.cmp(1e-9) < 0);
            } catch (const DivisionByZero&) {
                continue;
            } catch (const NumericError&) {
                continue;
            }
        }
    }
}

TEST_CASE("inert integrals differentiate by the fundamental theorem") {
    Expr kernel = parse_expr("exp(1/(x + 1))");
    Expr F = Expr::integral(kernel, var_x());
    CHECK(F.derivative(var_x()).to_string() == kernel.to_string());
    Expr G = Expr::integral(parse_expr("exp(x*y)"), var_x());
    // d/dy passes under the integral sign
    Expr Gy = G.derivative(var_y());
    CHECK(Gy.to_string().find("Integral") != std::string::npos);
    CHECK_THROWS_AS(G.substitute(var_x(), parse_expr("y + 1")), std::logic_error);
}

TEST_CASE("evaluation refuses inert nodes unless asked") {
    Expr F = Expr::integral(parse_expr("exp(x)"), var_x());
    RatPoint pt{{var_x(), Rat(1, 2)}};
    CHECK_THROWS_AS(eval_expr_checked(F, pt, 1e-30, EvalOptions{}), InertNodeError);
    EvalOptions opt;
    opt.allow_inert = true;
    // integral of e^t from 0 to 1/2 = e^(1/2) - 1
    NumVal v = eval_expr_checked(F, pt, 1e-30, opt);
    NumVal want = eval_expr_checked(parse_expr("exp(1/2) - 1"), pt, 1e-30, EvalOptions{});
    CHECK((v.val - want.val).abs().cmp(1e-40) < 0);
}

TEST_CASE("atom table restores transcendental operands") {
    AtomTable at;
    Expr e = parse_expr("(ln(x*z^4 + y) - y*z^3)/(x + 1)");
    RatFunc f = rational_collect(e, at);
    Expr back = at.restore_ratfunc(f);
    RatPoint pt{{var_x(), Rat(1, 4)}, {var_y(), Rat(3, 2)}, {var_z(), Rat(2, 7)}};
    NumVal a = eval_expr_checked(e, pt, 1e-30, EvalOptions{});
    NumVal b = eval_expr_checked(back, pt, 1e-30, EvalOptions{});
    CHECK((a.val - b.val).abs().cmp(1e-40) < 0);
}
