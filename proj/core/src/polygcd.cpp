#include "sfint/poly.hpp"
#include "sfint/ratfunc.hpp"

#include <algorithm>

namespace sfint {

namespace {

// Significant variable shared-or-present first: smallest var_order among vars.
std::optional<VarId> main_var(const Poly& a, const Poly& b) {
    std::optional<VarId> best;
    for (const Poly* p : {&a, &b})
        for (VarId v : p->vars())
            if (!best || var_order(v, *best) < 0) best = v;
    return best;
}

Poly content_in(const std::vector<Poly>& coeffs) {
    Poly g;
    for (auto& c : coeffs) {
        g = poly_gcd(g, c);
        if (g.is_constant() && !g.is_zero()) break;
    }
    return g;
}

std::vector<Poly> divide_coeffs(const std::vector<Poly>& coeffs, const Poly& d) {
    std::vector<Poly> out;
    out.reserve(coeffs.size());
    for (auto& c : coeffs) {
        auto q = poly_div_exact(c, d);
        if (!q) throw std::logic_error("inexact content division in gcd");
        out.push_back(*q);
    }
    return out;
}

} // namespace

std::optional<Poly> poly_div_exact(const Poly& a, const Poly& b) {
    if (b.is_zero()) return std::nullopt;
    if (a.is_zero()) return Poly();
    if (b.is_constant()) return a.scaled(b.constant_value().inverse());
    Poly q, r = a;
    const Mono& lmb = b.leading_mono();
    Rat lcb = b.leading_coeff();
    while (!r.is_zero()) {
        auto t = r.leading_mono().div(lmb);
        if (!t) return std::nullopt;
        Poly tp = Poly::term(*t, r.leading_coeff() / lcb);
        q = q + tp;
        r = r - tp * b;
    }
    return q;
}

Poly pseudo_rem(const Poly& a, const Poly& b, VarId v) {
    int db = b.degree_in(v);
    if (db == 0) throw std::invalid_argument("pseudo_rem: divisor free of main variable");
    Poly lcb = b.coeff_of(v, db);
    Poly r = a;
    int dr = r.degree_in(v);
    while (!r.is_zero() && dr >= db) {
        Poly lcr = r.coeff_of(v, dr);
        r = lcb * r - lcr * Poly::variable(v, dr - db) * b;
        int nd = r.degree_in(v);
        // degree must drop; eval_partial of zero handled by is_zero
        dr = nd;
        if (!r.is_zero() && dr >= db && r.coeff_of(v, dr).is_zero())
            throw std::logic_error("pseudo_rem: stale degree");
    }
    return r;
}

namespace {

void ftrim(std::vector<RatFunc>& u) {
    while (!u.empty() && u.back().is_zero()) u.pop_back();
}

// monic univariate gcd over the field of rational functions in the remaining
// variables; coefficient fractions stay reduced, which keeps the classical
// pseudo-remainder swell out of the Euclid loop
std::vector<RatFunc> field_gcd(std::vector<RatFunc> A, std::vector<RatFunc> B) {
    ftrim(A);
    ftrim(B);
    if (A.size() < B.size()) A.swap(B);
    while (!B.empty()) {
        RatFunc inv = B.back().inverse();
        while (A.size() >= B.size()) {
            RatFunc c = A.back() * inv;
            size_t k = A.size() - B.size();
            for (size_t i = 0; i + 1 < B.size(); ++i) A[k + i] = A[k + i] - c * B[i];
            A.pop_back();
            ftrim(A);
        }
        A.swap(B);
    }
    if (!A.empty()) {
        RatFunc inv = A.back().inverse();
        for (auto& c : A) c = c * inv;
    }
    return A;
}

mpz_class poly_height(const Poly& p) {
    mpz_class h = 0;
    for (auto& [m, c] : p.terms()) {
        mpz_class a = abs(c.num());
        if (a > h) h = a;
    }
    return h;
}

// balanced representative of c modulo xi, in (-xi/2, xi/2]
mpz_class balanced_mod(const mpz_class& c, const mpz_class& xi) {
    mpz_class r = c % xi;
    if (2 * r > xi)
        r -= xi;
    else if (2 * r <= -xi)
        r += xi;
    return r;
}

// reconstructs g(v, ...) from its image at v = xi by balanced xi-adic digits
std::optional<Poly> digits_to_poly(Poly g, VarId v, const mpz_class& xi, int degree_cap) {
    Poly out;
    int e = 0;
    while (!g.is_zero()) {
        if (e > degree_cap) return std::nullopt;
        Poly digit;
        for (auto& [m, c] : g.terms()) {
            mpz_class d = balanced_mod(c.num(), xi);
            if (d != 0) digit = digit + Poly::term(m, Rat(d));
        }
        if (!digit.is_zero()) out = out + digit * Poly::variable(v, e);
        Poly rem = g - digit;
        Poly next;
        for (auto& [m, c] : rem.terms()) next = next + Poly::term(m, Rat(mpz_class(c.num() / xi)));
        g = next;
        ++e;
    }
    return out.is_zero() ? std::nullopt : std::optional<Poly>(out);
}

// evaluation homomorphism gcd: substitute a large integer for the variables
// one at a time, take the integer gcd at the bottom and lift it back digit by
// digit.  The point is sized per level from the current coefficient heights,
// so successive variables land at wildly different magnitudes and stay free
// of accidental algebraic relations.
std::optional<Poly> heu_gcd(const Poly& a, const Poly& b, const std::vector<VarId>& vars,
                            size_t i, int shift) {
    if (i == vars.size()) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), a.constant_value().num().get_mpz_t(),
                b.constant_value().num().get_mpz_t());
        return Poly(Rat(g));
    }
    VarId v = vars[i];
    int cap = std::min(std::max(a.degree_in(v), 0), std::max(b.degree_in(v), 0));
    mpz_class xi = 2 * std::max(poly_height(a), poly_height(b)) + 29;
    for (int s = 0; s < shift; ++s) xi = xi * 3 + 7;
    Poly av = a.eval_partial({{v, Rat(xi)}});
    Poly bv = b.eval_partial({{v, Rat(xi)}});
    if (av.is_zero() || bv.is_zero()) return std::nullopt;
    auto low = heu_gcd(av, bv, vars, i + 1, shift);
    if (!low) return std::nullopt;
    return digits_to_poly(*low, v, xi, cap);
}

// gcd of integer-primitive polynomials, result integer-primitive positive.
Poly gcd_pp(Poly a, Poly b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.is_constant() || b.is_constant()) return Poly(Rat(1));
    if (poly_div_exact(a, b)) return b.primitive().second;
    if (poly_div_exact(b, a)) return a.primitive().second;
    {
        std::vector<VarId> vu = a.vars();
        for (VarId v : b.vars())
            if (std::find(vu.begin(), vu.end(), v) == vu.end()) vu.push_back(v);
        int coprime_votes = 0;
        for (int attempt = 0; attempt < 6; ++attempt) {
            auto g = heu_gcd(a, b, vu, 0, attempt);
            if (g) {
                Poly cand = g->primitive().second;
                if (cand.is_constant()) {
                    // twice in a row at independent points settles coprimality
                    if (++coprime_votes >= 2) return Poly(Rat(1));
                } else {
                    coprime_votes = 0;
                    if (poly_div_exact(a, cand) && poly_div_exact(b, cand))
                        return cand.primitive().second;
                }
            }
        }
    }
    auto mv = main_var(a, b);
    VarId v = *mv;
    if (!a.contains_var(v) || !b.contains_var(v)) {
        // v occurs in only one of them: gcd divides the other's content in v
        const Poly& flat = a.contains_var(v) ? b : a;
        const Poly& tall = a.contains_var(v) ? a : b;
        return gcd_pp(flat, content_in(to_univariate(tall, v)));
    }
    auto A = to_univariate(a, v);
    auto B = to_univariate(b, v);
    Poly ca = content_in(A), cb = content_in(B);
    Poly gamma = poly_gcd(ca, cb);
    std::vector<RatFunc> fa, fb;
    for (auto& c : divide_coeffs(A, ca)) fa.push_back(RatFunc(c));
    for (auto& c : divide_coeffs(B, cb)) fb.push_back(RatFunc(c));
    auto G = field_gcd(std::move(fa), std::move(fb));
    if (G.size() <= 1) return gamma;
    // clear coefficient denominators and take the primitive part in v
    Poly L(Rat(1));
    for (auto& c : G) {
        Poly g = poly_gcd(L, c.den());
        L = *poly_div_exact(L * c.den(), g);
    }
    Poly out;
    for (size_t i = 0; i < G.size(); ++i) {
        RatFunc ci = G[i] * RatFunc(L);
        out = out + ci.num().scaled(ci.den().constant_value().inverse()) *
                        Poly::variable(v, static_cast<int>(i));
    }
    Poly res = gamma * out.primitive().second;
    return res.primitive().second;
}

} // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.primitive().second;
    if (b.is_zero()) return a.primitive().second;
    Poly g = gcd_pp(a.primitive().second, b.primitive().second);
    return g.primitive().second;
}

Poly squarefree_part(const Poly& p) {
    if (p.is_zero()) return Poly();
    Poly pp = p.primitive().second;
    Poly g = pp;
    for (VarId v : pp.vars()) g = poly_gcd(g, pp.derivative(v));
    if (g.is_constant()) return pp;
    auto q = poly_div_exact(pp, g);
    if (!q) throw std::logic_error("squarefree: inexact division");
    return q->primitive().second;
}

Poly resultant(const Poly& a, const Poly& b, VarId v) {
    if (a.is_zero() || b.is_zero()) return Poly();
    int da = a.degree_in(v), db = b.degree_in(v);
    if (da == 0 && db == 0) return Poly(Rat(1));
    Poly A = a, B = b;
    Rat sign(1);
    if (da < db) {
        std::swap(A, B);
        std::swap(da, db);
        if ((da % 2) && (db % 2)) sign = -sign;
    }
    if (db == 0) return sign * B.pow(da);
    Poly g(Rat(1)), h(Rat(1));
    while (true) {
        da = A.degree_in(v);
        db = B.degree_in(v);
        int d = da - db;
        if ((da % 2) && (db % 2)) sign = -sign;
        Poly R = pseudo_rem(A, B, v);
        if (R.is_zero()) return Poly();
        A = B;
        Poly denom = g * h.pow(d);
        auto nb = poly_div_exact(R, denom);
        if (!nb) throw std::logic_error("subresultant: inexact division");
        B = *nb;
        g = A.coeff_of(v, A.degree_in(v));
        if (d > 0) {
            auto nh = poly_div_exact(g.pow(d), h.pow(d - 1));
            if (!nh) throw std::logic_error("subresultant: inexact h update");
            h = *nh;
        }
        if (B.degree_in(v) == 0) break;
    }
    int dA = A.degree_in(v);
    // res = sign * B^dA / h^(dA-1)
    Poly num = B.pow(dA);
    if (dA >= 1) {
        auto q = poly_div_exact(num, h.pow(dA - 1));
        if (!q) throw std::logic_error("subresultant: final division");
        return sign * *q;
    }
    return sign * num;
}

} // namespace sfint
