#include <doctest.h>

#include "sfint/ansatz.hpp"
#include "sfint/coeffsys.hpp"
#include "sfint/dx.hpp"
#include "sfint/parse.hpp"
#include "sfint/residual.hpp"

using namespace sfint;

namespace {

Ode2 worked_example() {
    Poly M = parse_poly(
        "x^5*z - x^4*z^2 - 3*z*x^4 + 4*x^3*z^2 - x*y + x*z + y*z - z^2 - y");
    Poly N = parse_poly("x^5 - y");
    return Ode2(M, N);
}

} // namespace

TEST_CASE("total derivative along solutions") {
    Ode2 ode(parse_poly("x"), parse_poly("1")); // z' = x
    RatFunc f = parse_ratfunc("z - x^2/2");
    CHECK(dx_total(ode, f).is_zero());
    // Dx[y] = z
    CHECK(dx_total(ode, RatFunc(Poly::variable(var_y()))) ==
          RatFunc(Poly::variable(var_z())));
}

TEST_CASE("total derivative is linear") {
    Ode2 ode = worked_example();
    RatFunc f = parse_ratfunc("x*y/(z + 1)");
    RatFunc g = parse_ratfunc("(x - z)/(y + 2)");
    Rat a(3, 7), b(-2, 5);
    CHECK(dx_total(ode, a * f + b * g) == a * dx_total(ode, f) + b * dx_total(ode, g));
}

TEST_CASE("cleared derivative matches the rational one") {
    Ode2 ode = worked_example();
    Poly p = parse_poly("x*z^2 - y");
    RatFunc lhs(dx_cleared(ode, p), ode.N());
    CHECK(lhs == dx_total(ode, RatFunc(p)));
}

TEST_CASE("ansatz term count and variable naming") {
    auto az = make_ansatz(1, "a");
    CHECK(az.poly.total_degree() == 1);
    CHECK(az.unknowns.size() == 4); // a0 + a1 x + a2 y + a3 z
    auto az3 = make_ansatz(3, "b");
    CHECK(az3.unknowns.size() == 20); // C(3+3,3)
}

TEST_CASE("determining residual vanishes for the known numerator") {
    Ode2 ode = worked_example();
    Poly P = parse_poly("z - x");
    CHECK(residual_s(ode, 1, P, ode.N()).is_zero());
    // and does not vanish for a wrong guess
    CHECK(!residual_s(ode, 1, parse_poly("z + x"), ode.N()).is_zero());
}

TEST_CASE("residual accepts a full S as numerator over a chosen denominator") {
    // z' = -((x^5*y*z^2+4*x^4*y^2*z-x*z^2+x*z-4*y*z+4*y)*z*x^3) / (x^8*y^2*z^2+x^8*y^2*z+z*y*x^4+x^4*y+1)
    Poly M = parse_poly(
        "-(x^5*y*z^2 + 4*x^4*y^2*z - x*z^2 + x*z - 4*y*z + 4*y)*z*x^3");
    Poly N = parse_poly("x^8*y^2*z^2 + x^8*y^2*z + z*y*x^4 + x^4*y + 1");
    Ode2 ode(M, N);
    CHECK(residual_s(ode, 3, parse_poly("4*y"), parse_poly("x")).is_zero());
}

TEST_CASE("coefficient extraction produces a system over the unknowns") {
    Ode2 ode = worked_example();
    auto az = make_ansatz(1, "a");
    Poly res = residual_s(ode, 1, az.poly, ode.N());
    auto eqs = extract_system(res);
    CHECK(!eqs.empty());
    for (const Poly& e : eqs)
        for (VarId v : e.vars()) {
            bool known = v == var_x() || v == var_y() || v == var_z();
            bool unknown =
                std::find(az.unknowns.begin(), az.unknowns.end(), v) != az.unknowns.end();
            CHECK((known || unknown));
            CHECK(!known); // x, y, z must have been eliminated by extraction
        }
}
