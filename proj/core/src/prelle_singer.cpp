#include "sfint/ode1solve.hpp"

#include "sfint/coeffsys.hpp"
#include "sfint/solve.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace sfint {

namespace {

// du/dt = P/Q together with the data every stage needs.  `ids` are the
// variables the defining identities run over: the two ODE variables plus the
// carried parameter, when there is one.
struct Flow {
    VarId t = -1, u = -1;
    std::vector<VarId> ids;
    Poly P, Q, div;

    Poly X(const Poly& p) const { return Q * p.derivative(t) + P * p.derivative(u); }
};

struct DarbouxPoly {
    Poly p;
    Poly cofactor; // X(p) = cofactor * p
};

struct Pool {
    std::vector<DarbouxPoly> entries;

    // Normalizes, checks the eigenpolynomial property by exact division and
    // deduplicates.  Pure-parameter polynomials are skipped: their cofactor
    // is zero and they only decorate a factor already found.
    bool add(const Flow& fl, const Poly& cand) {
        if (entries.size() >= 24) return false;
        Poly p = cand.primitive().second;
        if (p.is_constant()) return false;
        if (!p.contains_var(fl.t) && !p.contains_var(fl.u)) return false;
        if (p.leading_coeff(MonoOrder::GrLex).sign() < 0) p = p.scaled(Rat(-1));
        for (auto& e : entries)
            if (e.p == p) return false;
        Poly cof;
        Poly xp = fl.X(p);
        if (!xp.is_zero()) {
            auto q = poly_div_exact(xp, p);
            if (!q) return false;
            cof = *q;
        }
        entries.push_back({p, cof});
        return true;
    }
};

// exp(g) * prod p_i^{e_i}
struct MuParts {
    RatFunc g;
    std::vector<std::pair<Poly, Rat>> powers;
};

struct SpanAnsatz {
    Poly poly;
    std::vector<VarId> unknowns;
    std::vector<Mono> monos;
};

void enum_monos(const std::vector<VarId>& vs, size_t i, int rem, const Mono& cur,
                std::vector<Mono>& out) {
    if (i + 1 == vs.size()) {
        out.push_back(rem ? cur.mul(Mono::var(vs[i], rem)) : cur);
        return;
    }
    for (int e = rem; e >= 0; --e)
        enum_monos(vs, i + 1, rem - e, e ? cur.mul(Mono::var(vs[i], e)) : cur, out);
}

SpanAnsatz span_ansatz(const std::vector<VarId>& vs, int degree, const std::string& prefix) {
    SpanAnsatz a;
    int counter = 0;
    for (int d = 0; d <= degree; ++d) {
        std::vector<Mono> monos;
        enum_monos(vs, 0, d, Mono::one(), monos);
        std::sort(monos.begin(), monos.end(),
                  [](const Mono& x, const Mono& y) { return mono_cmp(x, y, MonoOrder::GrLex) > 0; });
        for (const Mono& m : monos) {
            VarId uk = var_id(prefix + std::to_string(counter++));
            a.unknowns.push_back(uk);
            a.monos.push_back(m);
            a.poly = a.poly + Poly::term(m, Rat(1)) * Poly::variable(uk);
        }
    }
    return a;
}

// Every way of pinning the free unknowns of a solution branch: all zero,
// then each one alone set to 1.
std::vector<std::map<VarId, Rat>> free_choices(const Assignment& sol) {
    std::set<VarId> frees;
    for (auto& [uk, val] : sol)
        for (VarId v : val.vars()) frees.insert(v);
    std::vector<std::map<VarId, Rat>> out;
    std::map<VarId, Rat> zeros;
    for (VarId f : frees) zeros[f] = Rat(0);
    out.push_back(zeros);
    for (VarId f : frees) {
        auto m = zeros;
        m[f] = Rat(1);
        out.push_back(m);
    }
    return out;
}

std::optional<Rat> eval_unknown(const Assignment& sol, VarId uk, const std::map<VarId, Rat>& fv) {
    try {
        auto it = sol.find(uk);
        if (it == sol.end()) {
            auto jt = fv.find(uk);
            return jt != fv.end() ? jt->second : Rat(0);
        }
        return it->second.eval(fv);
    } catch (const DivisionByZero&) {
        return std::nullopt;
    }
}

std::optional<Poly> eval_ansatz(const SpanAnsatz& az, const Assignment& sol,
                                const std::map<VarId, Rat>& fv) {
    Poly p;
    for (size_t i = 0; i < az.unknowns.size(); ++i) {
        auto val = eval_unknown(sol, az.unknowns[i], fv);
        if (!val) return std::nullopt;
        if (!val->is_zero()) p = p + Poly::term(az.monos[i], *val);
    }
    return p;
}

bool small_int(const Rat& r, long& out) {
    if (!r.is_integer()) return false;
    mpz_class n = r.num();
    if (!n.fits_slong_p()) return false;
    out = n.get_si();
    return out >= -64 && out <= 64;
}

// Potentials F with dF/dt = mu P and dF/du = -mu Q, most explicit first.
// Closed forms come from rational integration (plain or against the
// exponential part); when those run out, the potential is left as inert
// integrals along the axes, exact but evaluated only by quadrature.
std::vector<Expr> potential_candidates(const Flow& fl, const MuParts& mu) {
    std::vector<Expr> out;

    bool rational = mu.g.is_zero();
    std::vector<long> ipow;
    if (rational)
        for (auto& [p, e] : mu.powers) {
            long k = 0;
            if (!small_int(e, k)) {
                rational = false;
                break;
            }
            ipow.push_back(k);
        }

    if (rational) {
        RatFunc m{Rat(1)};
        for (size_t i = 0; i < mu.powers.size(); ++i)
            m = m * RatFunc(mu.powers[i].first).pow(ipow[i]);
        RatIntResult f1 = integrate_rational(m * RatFunc(fl.P), fl.t);
        bool usable = f1.complete;
        RatFunc d1 = f1.rational_part.derivative(fl.u);
        for (auto& lt : f1.logs) {
            // a residue depending on u would add a stray c'(u) ln(arg) term
            if (lt.coeff.contains_var(fl.u)) {
                usable = false;
                break;
            }
            d1 = d1 + lt.coeff * RatFunc(lt.arg.derivative(fl.u)) / RatFunc(lt.arg);
        }
        if (usable) {
            RatFunc delta = -(m * RatFunc(fl.Q)) - d1;
            if (!delta.contains_var(fl.t)) {
                RatIntResult f2 = integrate_rational(delta, fl.u);
                if (f2.complete) out.push_back(f1.to_expr() + f2.to_expr());
            }
        }
    } else {
        auto W1 = integrate_exp_multiple(mu.g, mu.powers, RatFunc(fl.P), fl.t);
        if (W1) {
            RatFunc Lu = mu.g.derivative(fl.u);
            for (auto& [p, e] : mu.powers)
                Lu = Lu + RatFunc(p.derivative(fl.u).scaled(e)) / RatFunc(p);
            RatFunc delta = -RatFunc(fl.Q) - (Lu * *W1 + W1->derivative(fl.u));
            Expr Phi = exp_power_expr(mu.g, mu.powers);
            if (delta.is_zero()) {
                out.push_back(Phi * Expr::from_ratfunc(*W1));
            } else {
                // mu*delta is a function of u alone; pin t at a regular
                // rational point and finish the integral in u
                for (long t0 = 0; t0 <= 12 && out.empty(); ++t0) {
                    try {
                        RatFunc g0 = mu.g.substitute(fl.t, RatFunc(Rat(t0)));
                        std::vector<std::pair<Poly, Rat>> pw0;
                        bool ok = true;
                        for (auto& [p, e] : mu.powers) {
                            Poly p0 = p.eval_partial({{fl.t, Rat(t0)}});
                            if (p0.is_zero()) {
                                ok = false;
                                break;
                            }
                            pw0.push_back({p0, e});
                        }
                        if (!ok) continue;
                        RatFunc d0 = delta.substitute(fl.t, RatFunc(Rat(t0)));
                        auto W2 = integrate_exp_multiple(g0, pw0, d0, fl.u);
                        if (!W2) break;
                        out.push_back(Phi * Expr::from_ratfunc(*W1) +
                                      exp_power_expr(g0, pw0) * Expr::from_ratfunc(*W2));
                    } catch (const DivisionByZero&) {
                        continue;
                    }
                }
            }
        }
    }

    // axis-path potentials with inert integrals
    Expr Phi = exp_power_expr(mu.g, mu.powers);
    Expr kt = Phi * Expr::from_ratfunc(RatFunc(fl.P));
    Expr ku = Expr::num(Rat(-1)) * Phi * Expr::from_ratfunc(RatFunc(fl.Q));
    try {
        RatFunc g0 = mu.g.substitute(fl.t, RatFunc(Rat(0)));
        std::vector<std::pair<Poly, Rat>> pw0;
        bool ok = true;
        for (auto& [p, e] : mu.powers) {
            Poly p0 = p.eval_partial({{fl.t, Rat(0)}});
            if (p0.is_zero()) {
                ok = false;
                break;
            }
            pw0.push_back({p0, e});
        }
        if (ok) {
            Poly Q0 = fl.Q.eval_partial({{fl.t, Rat(0)}});
            Expr leg = Q0.is_zero()
                           ? Expr::num(Rat(0))
                           : Expr::integral(Expr::num(Rat(-1)) * exp_power_expr(g0, pw0) *
                                                Expr::from_poly(Q0),
                                            fl.u);
            out.push_back(Expr::integral(kt, fl.t) + leg);
        }
    } catch (const DivisionByZero&) {
    }
    try {
        RatFunc g0 = mu.g.substitute(fl.u, RatFunc(Rat(0)));
        std::vector<std::pair<Poly, Rat>> pw0;
        bool ok = true;
        for (auto& [p, e] : mu.powers) {
            Poly p0 = p.eval_partial({{fl.u, Rat(0)}});
            if (p0.is_zero()) {
                ok = false;
                break;
            }
            pw0.push_back({p0, e});
        }
        if (ok) {
            Poly P0 = fl.P.eval_partial({{fl.u, Rat(0)}});
            Expr leg = P0.is_zero()
                           ? Expr::num(Rat(0))
                           : Expr::integral(exp_power_expr(g0, pw0) * Expr::from_poly(P0), fl.t);
            out.push_back(leg + Expr::integral(ku, fl.u));
        }
    } catch (const DivisionByZero&) {
    }
    return out;
}

bool try_mu(const Flow& fl, const Ode1& ode, const MuParts& mu, uint64_t seed,
            std::set<std::string>& seen, std::optional<Ode1Solution>& result) {
    std::string key = mu.g.to_string();
    std::vector<std::string> parts;
    for (auto& [p, e] : mu.powers)
        if (!e.is_zero()) parts.push_back(p.to_string() + "^" + e.to_string());
    std::sort(parts.begin(), parts.end());
    for (auto& s : parts) key += "|" + s;
    if (!seen.insert(key).second) return false;
    for (Expr& cand : potential_candidates(fl, mu))
        if (verify_ode1_integral(ode, cand, seed)) {
            result = Ode1Solution{cand, "integrating factor"};
            return true;
        }
    return false;
}

std::vector<VarId> combo_vars(size_t k) {
    std::vector<VarId> nvars;
    for (size_t i = 0; i < k; ++i) nvars.push_back(var_id("@n" + std::to_string(i)));
    return nvars;
}

// mu = prod p_i^{n_i}: sum n_i cofactor_i + div = 0, linear in the n_i.
bool combo(const Flow& fl, const Ode1& ode, const Pool& pool, uint64_t seed,
           std::set<std::string>& seen, std::optional<Ode1Solution>& result) {
    if (pool.entries.empty()) return false;
    std::vector<VarId> nvars = combo_vars(pool.entries.size());
    Poly eq = fl.div;
    for (size_t i = 0; i < pool.entries.size(); ++i)
        eq = eq + pool.entries[i].cofactor * Poly::variable(nvars[i]);
    std::vector<Assignment> sols;
    try {
        sols = solve_system(extract_system(eq, fl.ids), nvars);
    } catch (const BudgetExceeded&) {
        return false;
    }
    for (auto& sol : sols)
        for (auto& fv : free_choices(sol)) {
            MuParts mu;
            bool ok = true, any = false;
            for (size_t i = 0; i < pool.entries.size(); ++i) {
                auto n = eval_unknown(sol, nvars[i], fv);
                if (!n) {
                    ok = false;
                    break;
                }
                if (n->is_zero()) continue;
                mu.powers.push_back({pool.entries[i].p, *n});
                any = true;
            }
            if (!ok || !any) continue;
            if (try_mu(fl, ode, mu, seed, seen, result)) return true;
        }
    return false;
}

} // namespace

std::optional<Ode1Solution> darboux_integrating_factor(const Ode1& ode, const Ode1Options& opt) {
    if (ode.rhs.is_zero()) return std::nullopt;
    Flow fl;
    fl.t = ode.indep;
    fl.u = ode.dep;
    fl.ids = {ode.indep, ode.dep};
    if (ode.param >= 0) fl.ids.push_back(ode.param);
    fl.P = ode.rhs.num();
    fl.Q = ode.rhs.den();
    fl.div = fl.P.derivative(fl.u) + fl.Q.derivative(fl.t);

    std::set<std::string> seen;
    std::optional<Ode1Solution> result;
    Pool pool;

    if (fl.div.is_zero()) {
        MuParts unit;
        if (try_mu(fl, ode, unit, opt.seed, seen, result)) return result;
    }

    // factors in plain sight
    for (const Poly& cand : {fl.Q, fl.P, squarefree_part(fl.Q), squarefree_part(fl.P)})
        pool.add(fl, cand);
    if (combo(fl, ode, pool, opt.seed, seen, result)) return result;

    // single-power factors p^n: for fixed n the defining identity
    // n X(p) + div p = 0 is linear in the coefficients of p
    int dP = fl.P.total_degree(), dQ = fl.Q.total_degree();
    int d1cap = std::max(opt.darboux_degree, std::min(6, std::max(dP, dQ)));
    const Rat nvals[] = {Rat(-1), Rat(-2), Rat(1),      Rat(2),
                         Rat(-3), Rat(3),  Rat(-1, 2), Rat(1, 2)};
    for (int d = 1; d <= d1cap; ++d) {
        bool grew = false;
        for (const Rat& n : nvals) {
            SpanAnsatz az = span_ansatz(fl.ids, d, "@p");
            Poly eq = fl.X(az.poly).scaled(n) + fl.div * az.poly;
            std::vector<Assignment> sols;
            try {
                sols = solve_system(extract_system(eq, fl.ids), az.unknowns);
            } catch (const BudgetExceeded&) {
                continue;
            }
            for (auto& sol : sols)
                for (auto& fv : free_choices(sol)) {
                    auto p = eval_ansatz(az, sol, fv);
                    if (!p || p->is_zero()) continue;
                    if (!pool.add(fl, *p)) continue;
                    grew = true;
                    MuParts mu;
                    mu.powers.push_back({pool.entries.back().p, n});
                    if (try_mu(fl, ode, mu, opt.seed, seen, result)) return result;
                }
        }
        if (grew && combo(fl, ode, pool, opt.seed, seen, result)) return result;
    }

    // general eigenpolynomial listing: X(p) = lambda p, bilinear in the
    // coefficients of p and lambda
    int dlam = std::max({dP - 1, dQ - 1, 0});
    for (int d = 1; d <= opt.darboux_degree; ++d) {
        SpanAnsatz pz = span_ansatz(fl.ids, d, "@p");
        SpanAnsatz lz = span_ansatz(fl.ids, dlam, "@l");
        Poly eq = fl.X(pz.poly) - lz.poly * pz.poly;
        std::vector<VarId> unknowns = pz.unknowns;
        unknowns.insert(unknowns.end(), lz.unknowns.begin(), lz.unknowns.end());
        SolveOptions so;
        so.max_branches = 256;
        std::vector<Assignment> sols;
        try {
            sols = solve_system(extract_system(eq, fl.ids), unknowns, so);
        } catch (const BudgetExceeded&) {
            continue;
        }
        bool grew = false;
        for (auto& sol : sols)
            for (auto& fv : free_choices(sol)) {
                auto p = eval_ansatz(pz, sol, fv);
                if (p && !p->is_zero() && pool.add(fl, *p)) grew = true;
            }
        if (grew && combo(fl, ode, pool, opt.seed, seen, result)) return result;
    }

    // exponential part exp(A/B): B from the pool, A one degree higher,
    // jointly linear in the coefficients of A and the powers n_i
    std::vector<Poly> Bs{Poly(Rat(1))};
    for (auto& e : pool.entries) Bs.push_back(e.p);
    for (auto& e : pool.entries)
        if (e.p.total_degree() <= 4) Bs.push_back(e.p * e.p);
    for (size_t i = 0; i < pool.entries.size(); ++i)
        for (size_t j = i + 1; j < pool.entries.size(); ++j)
            if (pool.entries[i].p.total_degree() + pool.entries[j].p.total_degree() <= 8)
                Bs.push_back(pool.entries[i].p * pool.entries[j].p);
    if (Bs.size() > 12) Bs.resize(12);
    std::vector<VarId> nvars = combo_vars(pool.entries.size());
    for (const Poly& B : Bs) {
        SpanAnsatz az = span_ansatz(fl.ids, B.total_degree() + 1, "@e");
        Poly eq = B * B * fl.div + fl.X(az.poly) * B - az.poly * fl.X(B);
        for (size_t i = 0; i < pool.entries.size(); ++i)
            eq = eq + B * B * pool.entries[i].cofactor * Poly::variable(nvars[i]);
        std::vector<VarId> unknowns = az.unknowns;
        unknowns.insert(unknowns.end(), nvars.begin(), nvars.end());
        std::vector<Assignment> sols;
        try {
            sols = solve_system(extract_system(eq, fl.ids), unknowns);
        } catch (const BudgetExceeded&) {
            continue;
        }
        for (auto& sol : sols)
            for (auto& fv : free_choices(sol)) {
                auto A = eval_ansatz(az, sol, fv);
                if (!A) continue;
                MuParts mu;
                bool ok = true, any = !A->is_zero();
                for (size_t i = 0; i < pool.entries.size(); ++i) {
                    auto n = eval_unknown(sol, nvars[i], fv);
                    if (!n) {
                        ok = false;
                        break;
                    }
                    if (n->is_zero()) continue;
                    mu.powers.push_back({pool.entries[i].p, *n});
                    any = true;
                }
                if (!ok || !any) continue;
                if (!A->is_zero()) mu.g = RatFunc(*A) / RatFunc(B);
                if (try_mu(fl, ode, mu, opt.seed, seen, result)) return result;
            }
    }
    return std::nullopt;
}

} // namespace sfint
