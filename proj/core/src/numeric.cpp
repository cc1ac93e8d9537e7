#include "sfint/numeric.hpp"

#include "sfint/quadrature.hpp"

#include <sstream>

namespace sfint {

BigFloat::BigFloat(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }

BigFloat::BigFloat(long v, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_si(v_, v, MPFR_RNDN);
}

BigFloat::BigFloat(double v, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, v, MPFR_RNDN);
}

BigFloat::BigFloat(const Rat& v, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, v.raw().get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& o) {
    mpfr_init2(v_, o.precision());
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, o.precision());
    mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
    if (this != &o) {
        mpfr_set_prec(v_, o.precision());
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

namespace {

mpfr_prec_t join_prec(const BigFloat& a, const BigFloat& b) {
    return std::max(a.precision(), b.precision());
}

} // namespace

BigFloat BigFloat::operator+(const BigFloat& o) const {
    BigFloat r(join_prec(*this, o));
    mpfr_add(r.raw(), v_, o.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::operator-(const BigFloat& o) const {
    BigFloat r(join_prec(*this, o));
    mpfr_sub(r.raw(), v_, o.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::operator*(const BigFloat& o) const {
    BigFloat r(join_prec(*this, o));
    mpfr_mul(r.raw(), v_, o.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::operator/(const BigFloat& o) const {
    BigFloat r(join_prec(*this, o));
    mpfr_div(r.raw(), v_, o.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::operator-() const {
    BigFloat r(precision());
    mpfr_neg(r.raw(), v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::abs() const {
    BigFloat r(precision());
    mpfr_abs(r.raw(), v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::exp() const {
    BigFloat r(precision());
    mpfr_exp(r.raw(), v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::ln() const {
    BigFloat r(precision());
    mpfr_log(r.raw(), v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::pow_int(long e) const {
    BigFloat r(precision());
    mpfr_pow_si(r.raw(), v_, e, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::pow(const BigFloat& e) const {
    BigFloat r(join_prec(*this, e));
    mpfr_pow(r.raw(), v_, e.raw(), MPFR_RNDN);
    return r;
}

BigFloat BigFloat::sqrt() const {
    BigFloat r(precision());
    mpfr_sqrt(r.raw(), v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::ulp() const {
    BigFloat r(precision());
    if (is_zero() || !is_finite()) {
        mpfr_set_ui_2exp(r.raw(), 1, -precision(), MPFR_RNDN);
        return r;
    }
    mpfr_exp_t e = mpfr_get_exp(v_);
    mpfr_set_ui_2exp(r.raw(), 1, e - precision(), MPFR_RNDN);
    return r;
}

std::string BigFloat::to_string(int digits) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", digits, v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

namespace {

struct Ctx {
    const std::map<VarId, BigFloat>& point;
    const EvalOptions& opt;
};

NumVal ev(const Expr& e, const Ctx& ctx);

NumVal nv_const(const Rat& r, mpfr_prec_t prec) {
    BigFloat v(r, prec);
    return {v, v.ulp()};
}

NumVal nv_add(const NumVal& a, const NumVal& b) {
    BigFloat v = a.val + b.val;
    return {v, a.err + b.err + v.ulp()};
}

NumVal nv_mul(const NumVal& a, const NumVal& b) {
    BigFloat v = a.val * b.val;
    BigFloat err = a.val.abs() * b.err + b.val.abs() * a.err + a.err * b.err + v.ulp();
    return {v, err};
}

NumVal nv_div(const NumVal& a, const NumVal& b) {
    BigFloat babs = b.val.abs();
    // reject when the denominator cannot be distinguished from zero
    BigFloat guard = b.err * BigFloat(4L, b.err.precision());
    if (babs.cmp(guard) <= 0 || b.val.is_zero())
        throw PoleAtPoint("denominator indistinguishable from zero");
    BigFloat v = a.val / b.val;
    BigFloat denom = babs - b.err;
    BigFloat err = (a.err + v.abs() * b.err) / denom + v.ulp();
    return {v, err};
}

NumVal nv_exp(const NumVal& a) {
    BigFloat v = a.val.exp();
    if (!v.is_finite()) throw NumericError("overflow in exp");
    return {v, v * a.err + v.ulp()};
}

NumVal nv_ln(const NumVal& a) {
    if (a.val.sign() <= 0) throw DomainError("logarithm of a non-positive value");
    if (a.val.cmp(a.err * BigFloat(4L, a.err.precision())) <= 0)
        throw DomainError("logarithm argument indistinguishable from zero");
    BigFloat v = a.val.ln();
    return {v, a.err / a.val + v.ulp()};
}

NumVal nv_pow(const NumVal& a, const Rat& e, mpfr_prec_t prec) {
    if (e.is_integer() && mpz_fits_slong_p(e.num().get_mpz_t())) {
        long k = mpz_get_si(e.num().get_mpz_t());
        if (k == 0) return nv_const(Rat(1), prec);
        if (a.val.is_zero()) {
            if (k < 0) throw PoleAtPoint("zero base with negative exponent");
            return {BigFloat(0L, prec), BigFloat(0L, prec)};
        }
        if (k < 0) {
            NumVal inv = nv_div(nv_const(Rat(1), prec), a);
            return nv_pow(inv, Rat(-k), prec);
        }
        BigFloat v = a.val.pow_int(k);
        if (!v.is_finite()) throw NumericError("overflow in power");
        // |d(b^k)| = |k| b^(k-1) db
        BigFloat der = BigFloat(k, prec) * a.val.pow_int(k - 1).abs();
        return {v, der * a.err + v.ulp()};
    }
    // fractional exponent: exp(e ln b), base must be positive
    if (a.val.sign() <= 0) throw DomainError("fractional power of a non-positive value");
    NumVal lnb = nv_ln(a);
    NumVal prod = nv_mul(nv_const(e, prec), lnb);
    return nv_exp(prod);
}

NumVal ev_integral(const Expr& e, const Ctx& ctx) {
    if (!ctx.opt.allow_inert) throw InertNodeError("inert integral in plain evaluation");
    VarId v = e.var_id();
    auto it = ctx.point.find(v);
    if (it == ctx.point.end()) throw NumericError("unbound variable " + var_name(v));
    BigFloat upper = it->second;
    const Expr& kernel = e.child(0);
    auto f = [&](const BigFloat& t) {
        std::map<VarId, BigFloat> pt = ctx.point;
        pt.insert_or_assign(v, t);
        return ev(kernel, Ctx{pt, ctx.opt});
    };
    BigFloat zero(0L, ctx.opt.prec);
    return integrate(f, zero, upper, ctx.opt);
}

NumVal ev(const Expr& e, const Ctx& ctx) {
    switch (e.kind()) {
    case ExprKind::Num:
        return nv_const(e.value(), ctx.opt.prec);
    case ExprKind::Var: {
        auto it = ctx.point.find(e.var_id());
        if (it == ctx.point.end()) throw NumericError("unbound variable " + var_name(e.var_id()));
        return {it->second, it->second.ulp()};
    }
    case ExprKind::Add: {
        NumVal acc = ev(e.child(0), ctx);
        for (size_t i = 1; i < e.child_count(); ++i) acc = nv_add(acc, ev(e.child(i), ctx));
        return acc;
    }
    case ExprKind::Mul: {
        NumVal acc = ev(e.child(0), ctx);
        for (size_t i = 1; i < e.child_count(); ++i) acc = nv_mul(acc, ev(e.child(i), ctx));
        return acc;
    }
    case ExprKind::Pow:
        return nv_pow(ev(e.child(0), ctx), e.exponent(), ctx.opt.prec);
    case ExprKind::Exp:
        return nv_exp(ev(e.child(0), ctx));
    case ExprKind::Ln:
        return nv_ln(ev(e.child(0), ctx));
    case ExprKind::Integral:
        return ev_integral(e, ctx);
    }
    throw NumericError("unhandled node");
}

} // namespace

NumVal eval_expr(const Expr& e, const std::map<VarId, BigFloat>& point, const EvalOptions& opt) {
    return ev(e, Ctx{point, opt});
}

NumVal eval_expr(const Expr& e, const std::map<VarId, Rat>& point, const EvalOptions& opt) {
    std::map<VarId, BigFloat> pt;
    for (auto& [v, r] : point) pt.insert_or_assign(v, BigFloat(r, opt.prec));
    return eval_expr(e, pt, opt);
}

NumVal eval_expr_checked(const Expr& e, const std::map<VarId, Rat>& point, double margin,
                         const EvalOptions& opt) {
    EvalOptions o = opt;
    const mpfr_prec_t cap = 2048;
    while (true) {
        NumVal r = eval_expr(e, point, o);
        if (r.err.cmp(margin) < 0) return r;
        if (o.prec >= cap) throw PrecisionLost("error bound stuck above requested margin");
        o.prec *= 2;
    }
}

bool numeric_zero(const NumVal& v, double tol) {
    BigFloat t(tol, v.val.precision());
    if (v.err.cmp(tol / 100) >= 0)
        throw PrecisionLost("error bound too large for zero test");
    return (v.val.abs() + v.err).cmp(t) < 0;
}

} // namespace sfint
