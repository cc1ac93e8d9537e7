#include "sfint/verify.hpp"

#include "sfint/dx.hpp"
#include "sfint/numeric.hpp"
#include "sfint/sample.hpp"

#include <algorithm>

namespace sfint {

namespace {

std::vector<VarId> eval_vars(const Expr& e) {
    std::vector<VarId> vars{var_x(), var_y(), var_z()};
    for (VarId v : e.free_vars())
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    return vars;
}

// some gradient component clearly nonzero at a sample point
bool nonconstant(const Expr& e, uint64_t seed) {
    Expr g[3] = {e.derivative(var_x()), e.derivative(var_y()), e.derivative(var_z())};
    std::vector<VarId> vars = eval_vars(e);
    PointSampler sampler(seed ^ 0x9c0115u);
    EvalOptions opt;
    opt.allow_inert = true;
    for (int tries = 0; tries < 60; ++tries) {
        RatPoint pt = sampler.point(vars);
        for (auto& gi : g) {
            try {
                NumVal v = eval_expr_checked(gi, pt, 1e-12, opt);
                if (v.val.abs().cmp(1e-10) > 0) return true;
            } catch (const NumericError&) {
                continue;
            } catch (const DivisionByZero&) {
                continue;
            }
        }
    }
    return false;
}

} // namespace

VerifyRecord verify_first_integral(const Ode2& ode, const Expr& I, uint64_t seed, int points,
                                   long prec_bits) {
    VerifyRecord rec;
    Expr dxI = dx_total(ode, I);
    if (auto rf = as_ratfunc(dxI)) {
        rec.method = "exact";
        rec.passed = rf->is_zero() && nonconstant(I, seed);
        return rec;
    }
    rec.method = "numeric";
    std::vector<VarId> vars = eval_vars(dxI);
    PointSampler sampler(seed ^ 0xf17e5u);
    EvalOptions opt;
    opt.allow_inert = true;
    if (prec_bits > opt.prec) opt.prec = static_cast<mpfr_prec_t>(prec_bits);
    int good = 0;
    for (int tries = 0; good < points && tries < 40 * points; ++tries) {
        RatPoint pt = sampler.point(vars);
        try {
            NumVal v = eval_expr_checked(dxI, pt, 1e-33, opt);
            double mag = v.val.abs().to_double();
            rec.max_abs_residual = std::max(rec.max_abs_residual, mag);
            ++good;
            rec.points = good;
            if (!numeric_zero(v, 1e-30)) {
                rec.passed = false;
                return rec;
            }
        } catch (const NumericError&) {
            continue;
        } catch (const DivisionByZero&) {
            continue;
        }
    }
    if (good < points) throw AllPointsDegenerate("could not gather enough sample points");
    rec.passed = nonconstant(I, seed);
    return rec;
}

CompatRecord verify_compatibility(const Ode2& ode, const Expr& R, const RatFunc& S,
                                  uint64_t seed, int points, long prec_bits) {
    RatFunc phi = ode.phi();
    Expr Sx = Expr::from_ratfunc(S);
    Expr dxR = dx_total(ode, R);
    Expr res[3] = {
        dxR + R * Expr::from_ratfunc(S + phi.derivative(var_z())),
        Sx * dxR + R * Expr::from_ratfunc(dx_total(ode, S) + phi.derivative(var_y())),
        R.derivative(var_y()) - (R.derivative(var_z()) * Sx +
                                 R * Expr::from_ratfunc(S.derivative(var_z()))),
    };
    std::vector<VarId> vars{var_x(), var_y(), var_z()};
    for (auto& r : res)
        for (VarId v : r.free_vars())
            if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    CompatRecord rec;
    PointSampler sampler(seed ^ 0xc03bau);
    EvalOptions opt;
    opt.allow_inert = true;
    if (prec_bits > opt.prec) opt.prec = static_cast<mpfr_prec_t>(prec_bits);
    int good = 0;
    for (int tries = 0; good < points && tries < 40 * points; ++tries) {
        RatPoint pt = sampler.point(vars);
        try {
            NumVal vals[3];
            for (int i = 0; i < 3; ++i) vals[i] = eval_expr_checked(res[i], pt, 1e-33, opt);
            for (int i = 0; i < 3; ++i) {
                double mag = vals[i].val.abs().to_double();
                rec.max_residual[i] = std::max(rec.max_residual[i], mag);
            }
            ++good;
            rec.points = good;
            for (int i = 0; i < 3; ++i)
                if (!numeric_zero(vals[i], 1e-30)) return rec;
        } catch (const NumericError&) {
            continue;
        } catch (const DivisionByZero&) {
            continue;
        }
    }
    if (good < points) throw AllPointsDegenerate("could not gather enough sample points");
    rec.passed = true;
    return rec;
}

bool functionally_dependent(const Expr& a, const Expr& b, uint64_t seed, int points, double tol) {
    Expr ga[3] = {a.derivative(var_x()), a.derivative(var_y()), a.derivative(var_z())};
    Expr gb[3] = {b.derivative(var_x()), b.derivative(var_y()), b.derivative(var_z())};
    std::vector<VarId> vars{var_x(), var_y(), var_z()};
    for (const Expr* g : {ga, gb})
        for (int i = 0; i < 3; ++i)
            for (VarId v : g[i].free_vars())
                if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    PointSampler sampler(seed ^ 0xdeb7u);
    EvalOptions opt;
    opt.allow_inert = true;
    int good = 0;
    for (int tries = 0; good < points && tries < 60 * points; ++tries) {
        RatPoint pt = sampler.point(vars);
        try {
            NumVal va[3], vb[3];
            double na = 0, nb = 0;
            for (int i = 0; i < 3; ++i) {
                va[i] = eval_expr_checked(ga[i], pt, 1e-30, opt);
                vb[i] = eval_expr_checked(gb[i], pt, 1e-30, opt);
                na = std::max(na, va[i].val.abs().to_double());
                nb = std::max(nb, vb[i].val.abs().to_double());
            }
            // both gradients must be alive, or the minors say nothing
            if (na < 1e-10 || nb < 1e-10) continue;
            for (int i = 0; i < 3; ++i) {
                int j = (i + 1) % 3;
                BigFloat minor = va[i].val * vb[j].val - va[j].val * vb[i].val;
                if (minor.abs().cmp(tol) >= 0) return false;
            }
            ++good;
        } catch (const NumericError&) {
            continue;
        } catch (const DivisionByZero&) {
            continue;
        }
    }
    return good == points;
}

} // namespace sfint
