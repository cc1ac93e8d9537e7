#include "sfint/quadrature.hpp"

#include <map>
#include <mutex>

namespace sfint {

namespace {

struct GLRule {
    std::vector<BigFloat> nodes;   // on [-1, 1]
    std::vector<BigFloat> weights;
};

// P_n(x) and P_{n-1}(x)
std::pair<BigFloat, BigFloat> legendre(int n, const BigFloat& x) {
    mpfr_prec_t p = x.precision();
    BigFloat pk(1L, p), pk1(0L, p); // P_0, P_{-1}
    for (int k = 0; k < n; ++k) {
        BigFloat next =
            (BigFloat(2 * k + 1, p) * x * pk - BigFloat(k, p) * pk1) / BigFloat(k + 1, p);
        pk1 = pk;
        pk = next;
    }
    return {pk, pk1};
}

GLRule compute_rule(int n, mpfr_prec_t prec) {
    mpfr_prec_t wp = prec + 64;
    GLRule rule;
    BigFloat one(1L, wp), two(2L, wp);
    BigFloat pi(wp);
    mpfr_const_pi(pi.raw(), MPFR_RNDN);
    for (int i = 1; i <= n; ++i) {
        // Tricomi initial guess, then Newton
        BigFloat arg = pi * (BigFloat(4 * i - 1, wp) / BigFloat(4 * n + 2, wp));
        BigFloat x(wp);
        mpfr_cos(x.raw(), arg.raw(), MPFR_RNDN);
        BigFloat eps(wp);
        mpfr_set_ui_2exp(eps.raw(), 1, -(prec + 16), MPFR_RNDN);
        for (int it = 0; it < 200; ++it) {
            auto [pn, pn1] = legendre(n, x);
            BigFloat dpn = BigFloat(n, wp) * (x * pn - pn1) / (x * x - one);
            BigFloat dx = pn / dpn;
            x -= dx;
            if (dx.abs().cmp(eps) < 0) break;
        }
        auto [pn, pn1] = legendre(n, x);
        BigFloat dpn = BigFloat(n, wp) * (x * pn - pn1) / (x * x - one);
        BigFloat w = two / ((one - x * x) * dpn * dpn);
        rule.nodes.push_back(x);
        rule.weights.push_back(w);
    }
    return rule;
}

const GLRule& gl_rule(int n, mpfr_prec_t prec) {
    static std::mutex mu;
    static std::map<std::pair<int, mpfr_prec_t>, GLRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(n, prec);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, compute_rule(n, prec)).first;
    return it->second;
}

NumVal panel(const std::function<NumVal(const BigFloat&)>& f, const BigFloat& a,
             const BigFloat& b, const GLRule& rule, mpfr_prec_t prec) {
    BigFloat half = (b - a) / BigFloat(2L, prec);
    BigFloat mid = (a + b) / BigFloat(2L, prec);
    BigFloat acc(0L, prec), err(0L, prec);
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        NumVal fv = f(mid + half * rule.nodes[i]);
        if (!fv.val.is_finite()) throw QuadratureError("integrand not finite on panel");
        acc += rule.weights[i] * fv.val;
        err += rule.weights[i].abs() * fv.err;
    }
    return {acc * half, err * half.abs()};
}

NumVal adapt(const std::function<NumVal(const BigFloat&)>& f, const BigFloat& a,
             const BigFloat& b, const GLRule& rule, const BigFloat& tol, int depth,
             mpfr_prec_t prec) {
    NumVal whole = panel(f, a, b, rule, prec);
    BigFloat mid = (a + b) / BigFloat(2L, prec);
    NumVal left = panel(f, a, mid, rule, prec);
    NumVal right = panel(f, mid, b, rule, prec);
    BigFloat sum = left.val + right.val;
    BigFloat diff = (sum - whole.val).abs();
    BigFloat scale_tol = tol * (sum.abs() + BigFloat(1L, prec));
    if (diff.cmp(scale_tol) < 0)
        return {sum, left.err + right.err + diff};
    if (depth <= 0) throw QuadratureError("adaptive refinement depth exhausted");
    NumVal l = adapt(f, a, mid, rule, tol, depth - 1, prec);
    NumVal r = adapt(f, mid, b, rule, tol, depth - 1, prec);
    return {l.val + r.val, l.err + r.err};
}

} // namespace

NumVal integrate(const std::function<NumVal(const BigFloat&)>& f, const BigFloat& a,
                 const BigFloat& b, const EvalOptions& opt) {
    mpfr_prec_t prec = opt.prec;
    if (a.cmp(b) == 0) return {BigFloat(0L, prec), BigFloat(0L, prec)};
    if (a.cmp(b) > 0) {
        NumVal r = integrate(f, b, a, opt);
        return {-r.val, r.err};
    }
    const GLRule& rule = gl_rule(opt.quad_order, prec);
    BigFloat tol(prec);
    mpfr_set_ui_2exp(tol.raw(), 1, -(prec - 24), MPFR_RNDN);
    return adapt(f, a, b, rule, tol, opt.quad_max_depth, prec);
}

} // namespace sfint
