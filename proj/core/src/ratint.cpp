#include "sfint/ratint.hpp"

#include "sfint/sample.hpp"
#include "sfint/solve.hpp"

#include <algorithm>

namespace sfint {

namespace {

// Dense univariate polynomials in the integration variable, coefficients in
// the field of rational functions of everything else.  Index = power.
using Uni = std::vector<RatFunc>;

void utrim(Uni& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

int udeg(const Uni& a) { return static_cast<int>(a.size()) - 1; }

bool uiszero(const Uni& a) { return a.empty(); }

Uni from_poly_in(const Poly& p, VarId t) {
    Uni out;
    for (auto& c : to_univariate(p, t)) out.push_back(RatFunc(c));
    utrim(out);
    return out;
}

Uni uadd(const Uni& a, const Uni& b) {
    Uni out(std::max(a.size(), b.size()));
    for (size_t i = 0; i < out.size(); ++i) {
        if (i < a.size()) out[i] += a[i];
        if (i < b.size()) out[i] += b[i];
    }
    utrim(out);
    return out;
}

Uni uscale(const Uni& a, const RatFunc& c) {
    if (c.is_zero()) return {};
    Uni out = a;
    for (auto& x : out) x *= c;
    utrim(out);
    return out;
}

Uni usub(const Uni& a, const Uni& b) { return uadd(a, uscale(b, RatFunc(Rat(-1)))); }

Uni umul(const Uni& a, const Uni& b) {
    if (uiszero(a) || uiszero(b)) return {};
    Uni out(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    utrim(out);
    return out;
}

Uni ushift(const Uni& a, int k) {
    if (uiszero(a)) return {};
    Uni out(a.size() + k);
    for (size_t i = 0; i < a.size(); ++i) out[i + k] = a[i];
    return out;
}

Uni uderiv(const Uni& a) {
    if (a.size() <= 1) return {};
    Uni out(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) out[i - 1] = a[i] * RatFunc(Rat((long)i));
    utrim(out);
    return out;
}

Uni umonic(const Uni& a) {
    if (uiszero(a)) return a;
    return uscale(a, a.back().inverse());
}

std::pair<Uni, Uni> udivmod(const Uni& a, const Uni& b) {
    if (uiszero(b)) throw std::logic_error("univariate division by zero");
    Uni r = a, q;
    int db = udeg(b);
    RatFunc inv = b.back().inverse();
    while (udeg(r) >= db) {
        int k = udeg(r) - db;
        RatFunc c = r.back() * inv;
        if (q.size() < size_t(k + 1)) q.resize(k + 1);
        q[k] = c;
        r = usub(r, ushift(uscale(b, c), k));
    }
    utrim(q);
    return {q, r};
}

Uni uquo_exact(const Uni& a, const Uni& b) {
    auto [q, r] = udivmod(a, b);
    if (!uiszero(r)) throw std::logic_error("inexact univariate division");
    return q;
}

Uni ugcd(Uni a, Uni b) {
    utrim(a);
    utrim(b);
    while (!uiszero(b)) {
        Uni r = udivmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return umonic(a);
}

RatFunc uni_to_ratfunc(const Uni& a, VarId t) {
    RatFunc out;
    RatFunc tv = RatFunc::variable(t);
    for (size_t i = a.size(); i-- > 0;) out = out * tv + a[i];
    return out;
}

// polynomial proportional to a over the parameter field, primitive with
// positive leading coefficient
Poly clear_denoms(const Uni& a, VarId t) {
    Poly L(Rat(1));
    for (auto& c : a) {
        Poly g = poly_gcd(L, c.den());
        L = *poly_div_exact(L * c.den(), g);
    }
    Poly out;
    for (size_t i = 0; i < a.size(); ++i) {
        RatFunc ci = a[i] * RatFunc(L);
        out = out + ci.num().scaled(ci.den().constant_value().inverse()) *
                        Poly::variable(t, (int)i);
    }
    return out.primitive().second;
}

// resultant in t via the Euclidean remainder sequence over the field
RatFunc ures(const Uni& A, const Uni& B) {
    if (uiszero(A) || uiszero(B)) return RatFunc();
    if (udeg(A) < udeg(B)) {
        RatFunc r = ures(B, A);
        if ((udeg(A) & 1) && (udeg(B) & 1)) r = -r;
        return r;
    }
    if (udeg(B) == 0) return B[0].pow(udeg(A));
    Uni R = udivmod(A, B).second;
    if (uiszero(R)) return RatFunc();
    RatFunc r = B.back().pow(udeg(A) - udeg(R)) * ures(B, R);
    if ((udeg(R) & 1) && (udeg(B) & 1)) r = -r;
    return r;
}

// row reduction over the coefficient field; free unknowns go to zero,
// nothing comes back when the system is inconsistent
std::optional<std::vector<RatFunc>> gauss_solve(std::vector<std::vector<RatFunc>> M,
                                                std::vector<RatFunc> rhs) {
    size_t rows = M.size();
    size_t cols = rows ? M[0].size() : 0;
    std::vector<size_t> pivot_of_col(cols, SIZE_MAX);
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = SIZE_MAX;
        for (size_t i = r; i < rows; ++i)
            if (!M[i][c].is_zero()) {
                p = i;
                break;
            }
        if (p == SIZE_MAX) continue;
        std::swap(M[p], M[r]);
        std::swap(rhs[p], rhs[r]);
        RatFunc inv = M[r][c].inverse();
        for (size_t j = c; j < cols; ++j) M[r][j] *= inv;
        rhs[r] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || M[i][c].is_zero()) continue;
            RatFunc f = M[i][c];
            for (size_t j = c; j < cols; ++j) M[i][j] -= f * M[r][j];
            rhs[i] -= f * rhs[r];
        }
        pivot_of_col[c] = r;
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (!rhs[i].is_zero()) return std::nullopt;
    std::vector<RatFunc> u(cols);
    for (size_t c = 0; c < cols; ++c)
        if (pivot_of_col[c] != SIZE_MAX) u[c] = rhs[pivot_of_col[c]];
    return u;
}

// One-step reduction of the proper fraction A/D, D monic:
//   A/D = (B/Dm)' + C/Ds  with  D = Dm * Ds,  Ds squarefree.
// B and C come from a square linear system over the parameter field.
bool hermite(const Uni& A, const Uni& D, VarId t, RatFunc& rational_part, Uni& C, Uni& Ds) {
    Uni Dm = ugcd(D, uderiv(D));
    Ds = uquo_exact(D, Dm);
    if (udeg(Dm) <= 0) {
        rational_part = RatFunc();
        C = A;
        return true;
    }
    Uni T = uquo_exact(umul(Ds, uderiv(Dm)), Dm);
    int nb = udeg(Dm);
    int nc = udeg(Ds);
    int rows = nb + nc;
    if (udeg(A) >= rows) return false;
    std::vector<std::vector<RatFunc>> M(rows, std::vector<RatFunc>(nb + nc));
    std::vector<RatFunc> rhs(rows);
    for (int i = 0; i <= udeg(A); ++i) rhs[i] = A[i];
    for (int i = 0; i < nb; ++i) {
        // d/dt of t^i against Ds, minus t^i against T
        Uni col = i > 0 ? ushift(uscale(Ds, RatFunc(Rat((long)i))), i - 1) : Uni{};
        col = usub(col, ushift(T, i));
        if (udeg(col) >= rows) return false;
        for (int k = 0; k <= udeg(col); ++k) M[k][i] = col[k];
    }
    for (int i = 0; i < nc; ++i) {
        Uni col = ushift(Dm, i);
        if (udeg(col) >= rows) return false;
        for (int k = 0; k <= udeg(col); ++k) M[k][nb + i] = col[k];
    }
    auto u = gauss_solve(std::move(M), std::move(rhs));
    if (!u) return false;
    Uni B(u->begin(), u->begin() + nb);
    C = Uni(u->begin() + nb, u->end());
    utrim(B);
    utrim(C);
    rational_part = uiszero(B) ? RatFunc() : uni_to_ratfunc(B, t) / uni_to_ratfunc(Dm, t);
    return true;
}

RatFunc ueval_at(const Uni& a, const RatFunc& at) {
    RatFunc out;
    for (size_t i = a.size(); i-- > 0;) out = out * at + a[i];
    return out;
}

// Logarithmic part of C/Ds, Ds squarefree monic and coprime to C.  Constant
// residues are read off the t-resultant of Ds and C - s Ds'; when they leave
// exactly one linear factor of Ds uncovered, its residue is computed directly
// at the root over the parameter field.  Anything beyond that marks the
// result incomplete.
bool log_terms(const Uni& C, const Uni& Ds, VarId t, std::vector<LogTerm>& out) {
    if (uiszero(C) || udeg(Ds) < 1) return true;
    VarId s = var_id("@s");
    Uni shifted = usub(C, uscale(uderiv(Ds), RatFunc::variable(s)));
    RatFunc resv = ures(Ds, shifted);
    if (resv.is_zero()) return false;
    Poly R = resv.num();
    int ds = R.degree_in(s);
    std::vector<VarId> params;
    for (VarId v : R.vars())
        if (v != s) params.push_back(v);
    std::vector<Rat> cands;
    if (ds > 0) {
        Poly image = R;
        bool have_image = true;
        if (!params.empty()) {
            Poly lead = R.coeff_of(s, ds);
            PointSampler sampler(0x5eed);
            int tries = 0;
            while (true) {
                if (++tries > 200) {
                    have_image = false;
                    break;
                }
                RatPoint pt = sampler.point(params);
                if (lead.eval(pt).is_zero()) continue;
                image = R.eval_partial(pt);
                break;
            }
        }
        if (have_image) {
            try {
                cands = rational_roots(image, s);
            } catch (const BudgetExceeded&) {
                cands.clear();
            }
        }
    }
    Uni rest = Ds;
    for (const Rat& c : cands) {
        if (c.is_zero()) continue; // a zero residue would mean gcd(C, Ds) != 1
        // confirm the root over the parameter field
        Poly val;
        Rat ck(1);
        for (int k = 0; k <= ds; ++k) {
            val = val + R.coeff_of(s, k).scaled(ck);
            ck = ck * c;
        }
        if (!val.is_zero()) continue;
        Uni vc = ugcd(Ds, usub(C, uscale(uderiv(Ds), RatFunc(c))));
        if (udeg(vc) < 1) continue;
        out.push_back({RatFunc(c), clear_denoms(vc, t)});
        rest = uquo_exact(rest, vc);
    }
    if (udeg(rest) < 1) return true;
    if (udeg(rest) == 1) {
        RatFunc root = -rest[0] / rest[1];
        RatFunc dv = ueval_at(uderiv(Ds), root);
        if (!dv.is_zero()) {
            RatFunc rho = ueval_at(C, root) / dv;
            if (!rho.is_zero() && !rho.contains_var(t)) {
                out.push_back({rho, clear_denoms(rest, t)});
                return true;
            }
        }
    }
    return false;
}

} // namespace

Expr RatIntResult::to_expr() const {
    Expr e = Expr::from_ratfunc(rational_part);
    for (auto& lt : logs) e = e + Expr::from_ratfunc(lt.coeff) * Expr::ln(Expr::from_poly(lt.arg));
    return e;
}

RatIntResult integrate_rational(const RatFunc& f, VarId t) {
    RatIntResult res;
    if (!f.contains_var(t)) {
        res.rational_part = f * RatFunc::variable(t);
        return res;
    }
    Uni A = from_poly_in(f.num(), t);
    Uni B = from_poly_in(f.den(), t);
    auto [P, Ar] = udivmod(A, B);
    RatFunc acc;
    if (!uiszero(P)) {
        Uni polyint(P.size() + 1);
        for (size_t i = 0; i < P.size(); ++i) polyint[i + 1] = P[i] / RatFunc(Rat((long)i + 1));
        acc = uni_to_ratfunc(polyint, t);
    }
    if (!uiszero(Ar)) {
        RatFunc lead = B.back();
        Uni D = umonic(B);
        Uni A2 = uscale(Ar, lead.inverse());
        RatFunc ratpart;
        Uni C, Ds;
        if (!hermite(A2, D, t, ratpart, C, Ds)) {
            res.complete = false;
            res.rational_part = acc;
            return res;
        }
        acc = acc + ratpart;
        if (!uiszero(C)) {
            Uni g = ugcd(C, Ds);
            if (udeg(g) >= 1) {
                C = uquo_exact(C, g);
                Ds = uquo_exact(Ds, g);
            }
        }
        if (!log_terms(C, Ds, t, res.logs)) res.complete = false;
    }
    res.rational_part = acc;
    return res;
}

std::optional<RatFunc> integrate_exp_multiple(const RatFunc& g,
                                              const std::vector<std::pair<Poly, Rat>>& powers,
                                              const RatFunc& R, VarId t) {
    RatFunc L = g.derivative(t);
    for (auto& [p, e] : powers) {
        if (p.is_zero()) return std::nullopt;
        L = L + e * (RatFunc(p.derivative(t)) / RatFunc(p));
    }
    std::vector<Poly> cands;
    auto push = [&](const Poly& v) {
        if (v.is_zero()) return;
        Poly n = v.primitive().second;
        for (auto& c : cands)
            if (c == n) return;
        cands.push_back(n);
    };
    Poly dr = R.den();
    Poly dl = L.den();
    push(Poly(Rat(1)));
    push(dr);
    push(dl);
    push(dr * dl);
    push(dr * dr);
    push(dr * dr * dl);
    push(dr * dl * dl);
    push(dr * dr * dl * dl);
    for (const Poly& V : cands) {
        RatFunc rhs_r = R * RatFunc(V) * RatFunc(V) * RatFunc(L.den());
        if (!rhs_r.is_polynomial()) continue;
        Uni rhs = from_poly_in(rhs_r.num().scaled(rhs_r.den().constant_value().inverse()), t);
        Uni Vu = from_poly_in(V, t);
        Uni Vd = uderiv(Vu);
        Uni Ldu = from_poly_in(L.den(), t);
        Uni Lnu = from_poly_in(L.num(), t);
        int m = std::max(udeg(rhs), udeg(Vu) + 1) + 2;
        std::vector<Uni> cols;
        int maxdeg = udeg(rhs);
        for (int j = 0; j <= m; ++j) {
            // coefficient of u_j in Ld (U'V - UV') + Ln U V
            Uni dtj = j > 0 ? ushift(Uni{RatFunc(Rat((long)j))}, j - 1) : Uni{};
            Uni tj = ushift(Uni{RatFunc(Rat(1))}, j);
            Uni col = umul(Ldu, usub(umul(dtj, Vu), umul(tj, Vd)));
            col = uadd(col, umul(Lnu, umul(tj, Vu)));
            maxdeg = std::max(maxdeg, udeg(col));
            cols.push_back(std::move(col));
        }
        int rows = maxdeg + 1;
        std::vector<std::vector<RatFunc>> M(rows, std::vector<RatFunc>(m + 1));
        std::vector<RatFunc> b(rows);
        for (int k = 0; k <= udeg(rhs); ++k) b[k] = rhs[k];
        for (int j = 0; j <= m; ++j)
            for (int k = 0; k <= udeg(cols[j]); ++k) M[k][j] = cols[j][k];
        auto u = gauss_solve(std::move(M), std::move(b));
        if (!u) continue;
        Uni Up(u->begin(), u->end());
        utrim(Up);
        RatFunc W = uni_to_ratfunc(Up, t) / RatFunc(V);
        if (W.derivative(t) + L * W == R) return W;
    }
    return std::nullopt;
}

Expr exp_power_expr(const RatFunc& g, const std::vector<std::pair<Poly, Rat>>& powers) {
    std::vector<Expr> factors;
    if (!g.is_zero()) factors.push_back(Expr::exp(Expr::from_ratfunc(g)));
    for (auto& [arg, c] : powers) {
        if (c.is_zero() || arg.is_constant()) continue;
        factors.push_back(Expr::pow(Expr::from_poly(arg), c));
    }
    if (factors.empty()) return Expr::num(Rat(1));
    return Expr::mul(std::move(factors));
}

} // namespace sfint
