#include "sfint/ode1solve.hpp"

#include "sfint/numeric.hpp"
#include "sfint/sample.hpp"

#include <algorithm>

namespace sfint {

namespace {

// H = exp(g) * prod arg^c * (u - W), the standard linear form. p and q are
// free of u; returns nothing when the coefficient integral leaves the
// rational constants or no rational W exists.
std::optional<Expr> linear_first_integral(VarId t, VarId u, const RatFunc& p, const RatFunc& q) {
    RatIntResult ip = integrate_rational(p, t);
    if (!ip.complete) return std::nullopt;
    RatFunc g = -ip.rational_part;
    std::vector<std::pair<Poly, Rat>> powers;
    powers.reserve(ip.logs.size());
    for (auto& lt : ip.logs) {
        if (!lt.coeff.is_constant()) return std::nullopt;
        powers.push_back({lt.arg, -lt.coeff.constant_value()});
    }
    auto W = integrate_exp_multiple(g, powers, q, t);
    if (!W) return std::nullopt;
    Expr mu = exp_power_expr(g, powers);
    return mu * (Expr::var(u) - Expr::from_ratfunc(*W));
}

std::optional<Ode1Solution> strat_linear(const Ode1& ode) {
    VarId t = ode.indep, u = ode.dep;
    if (ode.rhs.den().contains_var(u)) return std::nullopt;
    if (ode.rhs.num().degree_in(u) > 1) return std::nullopt;
    RatFunc den{ode.rhs.den()};
    RatFunc p = RatFunc(ode.rhs.num().coeff_of(u, 1)) / den;
    RatFunc q = RatFunc(ode.rhs.num().coeff_of(u, 0)) / den;
    if (p.is_zero()) return std::nullopt; // plain quadrature, leave to the separable path
    auto H = linear_first_integral(t, u, p, q);
    if (!H) return std::nullopt;
    return Ode1Solution{*H, "linear"};
}

// Writes p as A(a) * B(b) up to factors in the remaining variables: the
// coefficient matrix over (a, b) powers must have rank one.  A keeps the
// full pivot column, B is normalized so its pivot entry is 1.
bool split_product(const Poly& p, VarId a, VarId b, RatFunc& A, RatFunc& B) {
    int da = std::max(p.degree_in(a), 0), db = std::max(p.degree_in(b), 0);
    std::vector<std::vector<Poly>> c(da + 1, std::vector<Poly>(db + 1));
    for (int i = 0; i <= da; ++i) {
        Poly pi = p.coeff_of(a, i);
        for (int j = 0; j <= db; ++j) c[i][j] = pi.coeff_of(b, j);
    }
    int i0 = -1, j0 = -1;
    for (int i = 0; i <= da && i0 < 0; ++i)
        for (int j = 0; j <= db; ++j)
            if (!c[i][j].is_zero()) {
                i0 = i;
                j0 = j;
                break;
            }
    if (i0 < 0) return false;
    for (int i = 0; i <= da; ++i)
        for (int j = 0; j <= db; ++j)
            if (!(c[i][j] * c[i0][j0] == c[i][j0] * c[i0][j])) return false;
    Poly ap;
    for (int i = 0; i <= da; ++i) {
        if (c[i][j0].is_zero()) continue;
        Poly mono = i ? Poly::variable(a).pow(i) : Poly(Rat(1));
        ap = ap + c[i][j0] * mono;
    }
    A = RatFunc(ap);
    B = RatFunc();
    RatFunc piv{c[i0][j0]};
    for (int j = 0; j <= db; ++j) {
        if (c[i0][j].is_zero()) continue;
        RatFunc mono = j ? RatFunc::variable(b).pow(j) : RatFunc(Rat(1));
        B = B + RatFunc(c[i0][j]) / piv * mono;
    }
    return true;
}

std::optional<Ode1Solution> strat_separable(const Ode1& ode) {
    VarId t = ode.indep, u = ode.dep;
    RatFunc An, Bn, Ad, Bd;
    if (!split_product(ode.rhs.num(), t, u, An, Bn)) return std::nullopt;
    if (!split_product(ode.rhs.den(), t, u, Ad, Bd)) return std::nullopt;
    RatFunc F = An / Ad; // du/dt = F(t) G(u)
    RatFunc G = Bn / Bd;
    RatIntResult iu = integrate_rational(G.inverse(), u);
    if (!iu.complete) return std::nullopt;
    RatIntResult it = integrate_rational(F, t);
    if (!it.complete) return std::nullopt;
    Expr H;
    if (iu.logs.empty() && it.logs.empty()) {
        H = Expr::from_ratfunc(iu.rational_part - it.rational_part);
    } else {
        // exponential form keeps the integral algebraic over the logs
        RatFunc g = iu.rational_part - it.rational_part;
        std::vector<std::pair<Poly, Rat>> powers;
        for (auto& lt : iu.logs) {
            if (!lt.coeff.is_constant()) return std::nullopt;
            powers.push_back({lt.arg, lt.coeff.constant_value()});
        }
        for (auto& lt : it.logs) {
            if (!lt.coeff.is_constant()) return std::nullopt;
            powers.push_back({lt.arg, -lt.coeff.constant_value()});
        }
        H = exp_power_expr(g, powers);
    }
    return Ode1Solution{H, "separable"};
}

std::optional<Ode1Solution> strat_bernoulli(const Ode1& ode) {
    VarId t = ode.indep, u = ode.dep;
    if (ode.rhs.den().contains_var(u)) return std::nullopt;
    int d = ode.rhs.num().degree_in(u);
    if (d < 2) return std::nullopt;
    for (int k = 0; k <= d; ++k)
        if (k != 1 && k != d && !ode.rhs.num().coeff_of(u, k).is_zero()) return std::nullopt;
    RatFunc den{ode.rhs.den()};
    RatFunc p = RatFunc(ode.rhs.num().coeff_of(u, 1)) / den;
    RatFunc q = RatFunc(ode.rhs.num().coeff_of(u, d)) / den;
    if (p.is_zero() || q.is_zero()) return std::nullopt;
    // w = u^{1-d} turns the equation into w' = (1-d)(p w + q)
    Rat m{1 - d};
    auto H0 = linear_first_integral(t, u, p * m, q * m);
    if (!H0) return std::nullopt;
    Expr H = H0->substitute(u, Expr::pow(Expr::var(u), m));
    return Ode1Solution{H, "bernoulli"};
}

std::optional<Ode1Solution> strat_exact(const Ode1& ode) {
    VarId t = ode.indep, u = ode.dep;
    const Poly& P = ode.rhs.num();
    const Poly& Q = ode.rhs.den();
    if (!(P.derivative(u) + Q.derivative(t)).is_zero()) return std::nullopt;
    RatIntResult f1 = integrate_rational(RatFunc(P), t);
    if (!f1.complete) return std::nullopt;
    RatFunc d1 = f1.rational_part.derivative(u);
    for (auto& lt : f1.logs) {
        // a residue depending on u would add a stray c'(u) ln(arg) term
        if (lt.coeff.contains_var(u)) return std::nullopt;
        d1 = d1 + lt.coeff * RatFunc(lt.arg.derivative(u)) / RatFunc(lt.arg);
    }
    RatFunc delta = -RatFunc(Q) - d1;
    if (delta.contains_var(t)) return std::nullopt;
    RatIntResult f2 = integrate_rational(delta, u);
    if (!f2.complete) return std::nullopt;
    return Ode1Solution{f1.to_expr() + f2.to_expr(), "exact"};
}

} // namespace

bool verify_ode1_integral(const Ode1& ode, const Expr& H, uint64_t seed, int points) {
    if (!H.contains_var(ode.dep) && !H.contains_var(ode.indep)) return false;
    std::vector<VarId> vars{ode.indep, ode.dep};
    if (ode.param >= 0) vars.push_back(ode.param);
    for (VarId v : H.free_vars())
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    Expr E = H.derivative(ode.indep) + Expr::from_ratfunc(ode.rhs) * H.derivative(ode.dep);
    PointSampler sampler(seed ^ 0x0de1u);
    EvalOptions opt;
    opt.allow_inert = true;
    int good = 0;
    for (int tries = 0; good < points && tries < 40 * points; ++tries) {
        RatPoint pt = sampler.point(vars);
        try {
            NumVal v = eval_expr_checked(E, pt, 1e-27, opt);
            if (!numeric_zero(v, 1e-25)) return false;
            ++good;
        } catch (const NumericError&) {
            continue;
        } catch (const DivisionByZero&) {
            continue;
        }
    }
    return good == points;
}

std::optional<Ode1Solution> solve_1ode(const Ode1& ode, const Ode1Options& opt) {
    if (ode.rhs.is_zero()) return Ode1Solution{Expr::var(ode.dep), "constant"};
    Ode1 swapped{ode.dep, ode.indep, ode.rhs.inverse(), ode.param};
    const Ode1* forms[2] = {&ode, &swapped};

    using Strat = std::optional<Ode1Solution> (*)(const Ode1&);
    const Strat strats[] = {strat_linear, strat_separable, strat_bernoulli, strat_exact};
    for (Strat strat : strats)
        for (int k = 0; k < 2; ++k) {
            auto sol = strat(*forms[k]);
            if (!sol) continue;
            if (k == 1) sol->method += " swapped";
            if (verify_ode1_integral(ode, sol->H, opt.seed)) return sol;
        }
    for (int k = 0; k < 2; ++k) {
        auto sol = darboux_integrating_factor(*forms[k], opt);
        if (!sol) continue;
        if (k == 1) sol->method += " swapped";
        if (verify_ode1_integral(ode, sol->H, opt.seed)) return sol;
    }
    return std::nullopt;
}

} // namespace sfint
