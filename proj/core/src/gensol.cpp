#include "sfint/gensol.hpp"

#include "sfint/ode1solve.hpp"

namespace sfint {

std::optional<Expr> gensol(const Ode2& ode, const Expr& I, uint64_t seed) {
    (void)ode;
    VarId x = var_x(), y = var_y(), z = var_z();
    VarId cvar = var_id("C1");
    AtomTable at;
    RatFunc irf = rational_collect(I, at);
    for (auto& [expr, v] : at.atoms())
        if (expr.contains_var(z)) return std::nullopt; // z buried in an operand
    if (irf.num().degree_in(z) > 1 || irf.den().degree_in(z) > 1) return std::nullopt;
    if (irf.num().degree_in(z) < 1 && irf.den().degree_in(z) < 1) return std::nullopt;

    RatFunc C = RatFunc::variable(cvar);
    RatFunc c1 = RatFunc(irf.num().coeff_of(z, 1)) - C * RatFunc(irf.den().coeff_of(z, 1));
    if (c1.is_zero()) return std::nullopt;
    RatFunc c0 = RatFunc(irf.num().coeff_of(z, 0)) - C * RatFunc(irf.den().coeff_of(z, 0));
    RatFunc zval = -c0 / c1; // dy/dx = zval(x, y, C1) with operand placeholders

    bool atoms_used = false;
    for (auto& [expr, v] : at.atoms())
        if (zval.contains_var(v)) atoms_used = true;

    if (!atoms_used) {
        Ode1 o{x, y, zval, cvar};
        Ode1Options oopt;
        oopt.seed = seed;
        auto sol = solve_1ode(o, oopt);
        if (!sol) return std::nullopt;
        return sol->H;
    }

    // transcendental coefficients: keep the linear-in-y quadrature form
    for (auto& [expr, v] : at.atoms())
        if (zval.contains_var(v) && (expr.contains_var(y) || expr.contains_var(z)))
            return std::nullopt;
    if (zval.den().degree_in(y) > 0 || zval.num().degree_in(y) > 1) return std::nullopt;
    RatFunc den{zval.den()};
    RatFunc p = RatFunc(zval.num().coeff_of(y, 1)) / den;
    RatFunc q = RatFunc(zval.num().coeff_of(y, 0)) / den;
    if (p.is_zero()) return std::nullopt;
    Expr mu = Expr::exp(Expr::num(Rat(-1)) * Expr::integral(at.restore_ratfunc(p), x));
    if (q.is_zero()) return Expr::var(y) * mu;
    return Expr::var(y) * mu - Expr::integral(at.restore_ratfunc(q) * mu, x);
}

} // namespace sfint
