#include <doctest.h>

#include "sfint/numeric.hpp"
#include "sfint/parse.hpp"
#include "sfint/ratint.hpp"
#include "sfint/sample.hpp"

using namespace sfint;

namespace {

// d/dt of the reported antiderivative must reproduce the integrand exactly
void check_antiderivative(const std::string& integrand, VarId t) {
    RatFunc f = parse_ratfunc(integrand);
    RatIntResult r = integrate_rational(f, t);
    REQUIRE(r.complete);
    RatFunc back = r.rational_part.derivative(t);
    for (auto& lt : r.logs) back += lt.coeff * (RatFunc(lt.arg.derivative(t)) / RatFunc(lt.arg));
    CHECK(back == f);
}

} // namespace

TEST_CASE("polynomials integrate term by term") {
    check_antiderivative("x^3 - 2*x + 5", var_x());
}

TEST_CASE("simple poles become logarithms") {
    check_antiderivative("1/x", var_x());
    check_antiderivative("1/(x^2 - 1)", var_x());
    check_antiderivative("(2*x + 3)/(x^2 + 3*x + 2)", var_x());
}

TEST_CASE("higher order poles get a rational part") {
    check_antiderivative("1/x^2", var_x());
    check_antiderivative("x/(x^2 - 1)^2", var_x());
    check_antiderivative("(x^3 + 1)/(x - 2)^3", var_x());
}

TEST_CASE("parameters ride along in the coefficient field") {
    // integrate in x, with y a parameter
    check_antiderivative("y/(x - y)", var_x());
    check_antiderivative("(x + y)/(x^2 - y^2)", var_x());
}

TEST_CASE("irrational residues flag incompleteness") {
    RatIntResult r = integrate_rational(parse_ratfunc("1/(x^2 + 1)"), var_x());
    CHECK(!r.complete);
    RatIntResult r2 = integrate_rational(parse_ratfunc("1/(x^2 - 2)"), var_x());
    CHECK(!r2.complete);
}

TEST_CASE("exponential multiples integrate by undetermined coefficients") {
    VarId t = var_x();
    // d/dt [e^t W] = e^t (W + W'); W = t matches R = t + 1
    RatFunc g = parse_ratfunc("x");
    auto W = integrate_exp_multiple(g, {}, parse_ratfunc("x + 1"), t);
    REQUIRE(W);
    CHECK(*W == parse_ratfunc("x"));
}

TEST_CASE("exponential multiple with a power factor") {
    VarId t = var_x();
    // d/dt [x^2 W] = x^2 (W' + 2W/x) = x^2 * R with W = x gives R = 3
    std::vector<std::pair<Poly, Rat>> powers{{parse_poly("x"), Rat(2)}};
    auto W = integrate_exp_multiple(RatFunc(Rat(0)), powers, parse_ratfunc("3"), t);
    REQUIRE(W);
    CHECK(*W == parse_ratfunc("x"));
}

TEST_CASE("exponential multiples can be impossible") {
    VarId t = var_x();
    // d/dt [e^t W] = e^t would need W + W' = 1 with W rational: W = 1 works!
    auto W = integrate_exp_multiple(parse_ratfunc("x"), {}, parse_ratfunc("1"), t);
    REQUIRE(W);
    CHECK(*W == parse_ratfunc("1"));
    // but e^{x^2} has no elementary antiderivative: W' + 2xW = 1 has no rational W
    auto none = integrate_exp_multiple(parse_ratfunc("x^2"), {}, parse_ratfunc("1"), t);
    CHECK(!none);
}

TEST_CASE("power expression builder drops trivial factors") {
    Expr e = exp_power_expr(parse_ratfunc("0"), {{parse_poly("x + 1"), Rat(0)}});
    CHECK(e.to_string() == "1");
    Expr f = exp_power_expr(parse_ratfunc("-x"), {{parse_poly("x + 1"), Rat(-2)}});
    RatPoint pt{{var_x(), Rat(1, 2)}};
    NumVal got = eval_expr_checked(f, pt, 1e-30, EvalOptions{});
    NumVal want = eval_expr_checked(parse_expr("exp(-1/2)*(3/2)^(-2)"), pt, 1e-30, EvalOptions{});
    CHECK((got.val - want.val).abs().cmp(1e-40) < 0);
}
