#include "sfint/reduce.hpp"

#include "sfint/dx.hpp"

#include <algorithm>

namespace sfint {

namespace {

VarId reduction_var(int k) {
    switch (k) {
    case 1:
        return var_x();
    case 2:
        return var_y();
    case 3:
        return var_z();
    default:
        throw std::invalid_argument("reduction index out of range");
    }
}

} // namespace

Reduction reduce_characteristic(const Ode2& ode, const Expr& H, int k) {
    VarId t = reduction_var(k);
    VarId hvar = var_id("h");
    Expr dxH = dx_total(ode, H);

    AtomTable at;
    RatFunc h_rf = rational_collect(H, at);
    RatFunc dx_rf = rational_collect(dxH, at);

    if (dx_rf.is_zero())
        return Reduction{Ode1{t, hvar, RatFunc()}, hvar, -1, Expr::num(Rat(0))};

    RatFunc weight;
    if (k == 1)
        weight = RatFunc(Rat(1));
    else if (k == 2)
        weight = RatFunc::variable(var_z());
    else
        weight = ode.phi();
    if (weight.is_zero()) throw EliminationFailed("characteristic weight vanishes");
    RatFunc ratio = dx_rf / weight;

    std::vector<VarId> targets;
    for (VarId v : {var_z(), var_y(), var_x()})
        if (v != t) targets.push_back(v);
    for (auto& [expr, v] : at.atoms()) targets.push_back(v);

    RatFunc hf = RatFunc::variable(hvar);
    for (VarId v : targets) {
        if (!at.is_atom(v)) {
            // a variable buried inside a transcendental operand cannot be
            // solved for rationally
            bool buried = false;
            for (auto& [expr, a] : at.atoms())
                if (expr.contains_var(v)) {
                    buried = true;
                    break;
                }
            if (buried) continue;
        }
        const Poly& n = h_rf.num();
        const Poly& d = h_rf.den();
        if (n.degree_in(v) > 1 || d.degree_in(v) > 1) continue;
        if (n.degree_in(v) < 1 && d.degree_in(v) < 1) continue;
        RatFunc c1 = RatFunc(n.coeff_of(v, 1)) - hf * RatFunc(d.coeff_of(v, 1));
        if (c1.is_zero()) continue;
        RatFunc c0 = RatFunc(n.coeff_of(v, 0)) - hf * RatFunc(d.coeff_of(v, 0));
        RatFunc val = -c0 / c1;
        RatFunc r2;
        try {
            r2 = ratio.substitute(v, val);
        } catch (const DivisionByZero&) {
            continue;
        }
        bool clean = true;
        for (VarId w : r2.vars())
            if (w != t && w != hvar) {
                clean = false;
                break;
            }
        if (!clean) continue;
        return Reduction{Ode1{t, hvar, r2}, hvar, v, at.restore_ratfunc(val)};
    }
    throw EliminationFailed("no elimination target closes the reduced equation");
}

std::vector<Expr> compose_first_integral(const Ode2& ode, const Expr& f, const Expr& H, int k,
                                         VarId hvar, const RatFunc& reduced_rhs) {
    (void)ode;
    VarId t = reduction_var(k);
    try {
        Expr I = f.substitute(hvar, H);
        if (I.free_vars().empty()) throw ConstantResult("composition collapsed to a constant");
        return {I};
    } catch (const std::logic_error&) {
        // fall through: h -> H would put the integration variable of an
        // inert part of f inside its own kernel
    }
    std::vector<Expr> out;
    if (reduced_rhs.is_zero()) return out;
    Expr ft = f.derivative(t);
    if (ft.contains_kind(ExprKind::Integral)) return out;
    // along solutions of the reduced equation f_t + rhs*f_h = 0, so the
    // h-derivative has the closed form -f_t/rhs
    Expr fh = ft * Expr::from_ratfunc(-reduced_rhs.inverse());
    Expr ftH = ft.substitute(hvar, H);
    Expr fhH = fh.substitute(hvar, H);
    for (VarId w : {var_z(), var_y(), var_x()}) {
        Expr K = fhH * H.derivative(w);
        if (w == t) K = K + ftH;
        if (K == Expr::num(Rat(0))) continue;
        out.push_back(Expr::integral(K, w));
    }
    return out;
}

} // namespace sfint
