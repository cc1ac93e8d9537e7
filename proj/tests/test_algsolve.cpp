#include <doctest.h>

#include "sfint/parse.hpp"
#include "sfint/solve.hpp"

#include <algorithm>
#include <random>

using namespace sfint;

namespace {

VarId u(int i) { return var_id("u" + std::to_string(i)); }

std::vector<Poly> eqs(const std::vector<std::string>& texts) {
    std::vector<Poly> out;
    for (auto& t : texts) out.push_back(parse_poly(t));
    return out;
}

} // namespace

TEST_CASE("linear systems solve to the unique branch") {
    auto sols = solve_system(eqs({"u0 + u1 - 3", "u0 - u1 - 1"}), {u(0), u(1)});
    REQUIRE(sols.size() == 1);
    CHECK(sols[0].at(u(0)) == RatFunc(Rat(2)));
    CHECK(sols[0].at(u(1)) == RatFunc(Rat(1)));
}

TEST_CASE("quadratic branching finds every rational root") {
    auto sols = solve_system(eqs({"u0^2 - 4", "u1 - u0 - 1"}), {u(0), u(1)});
    REQUIRE(sols.size() == 2);
    bool saw_pos = false, saw_neg = false;
    for (auto& s : sols) {
        Rat v = s.at(u(0)).constant_value();
        if (v == Rat(2)) saw_pos = true;
        if (v == Rat(-2)) saw_neg = true;
    }
    CHECK(saw_pos);
    CHECK(saw_neg);
}

TEST_CASE("irrational branches are dropped") {
    CHECK(solve_system(eqs({"u0^2 - 2"}), {u(0)}).empty());
}

TEST_CASE("inconsistent systems have no solutions") {
    CHECK(solve_system(eqs({"u0 - 1", "u0 - 2"}), {u(0)}).empty());
}

TEST_CASE("free variables parametrize the solution") {
    auto sols = solve_system(eqs({"u0 - u1"}), {u(0), u(1)});
    REQUIRE(sols.size() == 1);
    auto spec = specialize(sols[0], {u(0), u(1)});
    REQUIRE(spec);
    CHECK(spec->at(u(0)) == spec->at(u(1)));
    CHECK(!spec->at(u(0)).is_zero()); // the all-zero point is rejected
}

TEST_CASE("equations must only involve declared unknowns") {
    CHECK_THROWS_AS(solve_system(eqs({"u0 + x"}), {u(0)}), std::invalid_argument);
    // the parametric front door accepts the same system
    auto sols = solve_parametric(eqs({"u0 + x"}), {u(0)});
    REQUIRE(sols.size() == 1);
    CHECK(sols[0].at(u(0)) == -RatFunc(Poly::variable(var_x())));
}

TEST_CASE("solutions come back deterministically ordered") {
    auto a = solve_system(eqs({"u0*(u0 - 1)", "u1*(u1 - 2)"}), {u(0), u(1)});
    auto b = solve_system(eqs({"u0*(u0 - 1)", "u1*(u1 - 2)"}), {u(0), u(1)});
    REQUIRE(a.size() == 4);
    CHECK(a == b);
    auto nonzero = [](const Assignment& s) {
        int n = 0;
        for (auto& [v, val] : s)
            if (!val.is_zero()) ++n;
        return n;
    };
    CHECK(nonzero(a.front()) == 0);
    CHECK(nonzero(a.back()) == 2);
}

TEST_CASE("groebner basis solves a coupled pair") {
    // u0 + u1 = 3, u0 u1 = 2 has the two branches {1, 2} and {2, 1}
    auto sols = solve_system(eqs({"u0 + u1 - 3", "u0*u1 - 2"}), {u(0), u(1)});
    REQUIRE(sols.size() == 2);
    for (auto& s : sols) {
        Rat a0 = s.at(u(0)).constant_value();
        Rat a1 = s.at(u(1)).constant_value();
        CHECK(a0 + a1 == Rat(3));
        CHECK(a0 * a1 == Rat(2));
    }
}

TEST_CASE("budgets stop runaway branching") {
    SolveOptions opt;
    opt.max_branches = 2;
    std::vector<Poly> sys;
    std::vector<VarId> unknowns;
    for (int i = 0; i < 6; ++i) {
        unknowns.push_back(u(i));
        sys.push_back(parse_poly("u" + std::to_string(i) + "^2 - " + std::to_string((i + 1) * (i + 1))));
    }
    CHECK_THROWS_AS(solve_system(sys, unknowns, opt), BudgetExceeded);
}

TEST_CASE("planted random quadratic systems are recovered") {
    std::mt19937_64 rng(123);
    std::uniform_int_distribution<int> coef(-4, 4);
    for (int trial = 0; trial < 60; ++trial) {
        Rat r0(coef(rng)), r1(coef(rng));
        Poly p0 = Poly::variable(u(0)) - Poly(r0);
        Poly p1 = Poly::variable(u(1)) - Poly(r1);
        std::vector<Poly> sys = {p0 * p0 + p0 * p1, p0 * p1 + p0, p1};
        auto sols = solve_system(sys, {u(0), u(1)});
        bool hit = false;
        for (auto& s : sols) {
            const RatFunc& a0 = s.at(u(0));
            const RatFunc& a1 = s.at(u(1));
            if (a0.is_constant() && a1.is_constant() && a0.constant_value() == r0 &&
                a1.constant_value() == r1)
                hit = true;
        }
        CHECK(hit);
    }
}
