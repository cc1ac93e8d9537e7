#include "sfint/solve.hpp"

#include <algorithm>
#include <deque>

namespace sfint {

namespace {

struct Budget {
    long reductions;
    int branches;
    int max_degree;

    void charge_reduction() {
        if (--reductions < 0) throw BudgetExceeded("polynomial reduction budget exhausted");
    }
    void charge_branch() {
        if (--branches < 0) throw BudgetExceeded("case split budget exhausted");
    }
    void check_degree(const Poly& p) {
        if (p.total_degree() > max_degree)
            throw BudgetExceeded("intermediate polynomial degree too large");
    }
};

bool is_nonzero_constant(const Poly& p) { return !p.is_zero() && p.is_constant(); }

bool is_unknown(VarId v, const std::vector<VarId>& unknowns) {
    return std::find(unknowns.begin(), unknowns.end(), v) != unknowns.end();
}

bool involves_unknown(const Poly& p, const std::vector<VarId>& unknowns) {
    for (VarId v : p.vars())
        if (is_unknown(v, unknowns)) return true;
    return false;
}

// primitive, positive leading coefficient, zeros and duplicates dropped;
// returns false when a contradictory constant equation shows up
bool normalize_eqs(std::vector<Poly>& eqs) {
    std::vector<Poly> out;
    for (auto& e : eqs) {
        if (e.is_zero()) continue;
        if (is_nonzero_constant(e)) return false;
        Poly n = e.primitive().second;
        if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
    }
    eqs = std::move(out);
    return true;
}

// ---- rational roots ----

std::vector<mpz_class> divisors_of(const mpz_class& n0) {
    mpz_class n = ::abs(n0);
    std::vector<mpz_class> divs;
    mpz_class d(1);
    while (d * d <= n) {
        if (n % d == 0) {
            divs.push_back(d);
            divs.push_back(n / d);
        }
        ++d;
        if (d > 2000000)
            throw BudgetExceeded("constant term too large to enumerate divisors");
    }
    std::sort(divs.begin(), divs.end());
    divs.erase(std::unique(divs.begin(), divs.end()), divs.end());
    return divs;
}

} // namespace

std::vector<Rat> rational_roots(const Poly& p, VarId v) {
    if (p.is_zero()) throw std::invalid_argument("zero polynomial has every root");
    std::vector<Rat> roots;
    auto coeffs = to_univariate(p.primitive().second, v);
    // strip zero roots
    size_t low = 0;
    while (low < coeffs.size() && coeffs[low].is_zero()) ++low;
    if (low > 0) {
        roots.push_back(Rat(0));
        coeffs.erase(coeffs.begin(), coeffs.begin() + low);
    }
    if (coeffs.size() <= 1) return roots;
    for (auto& c : coeffs)
        if (!c.is_constant())
            throw std::invalid_argument("polynomial is not univariate in the given variable");
    mpz_class a0 = coeffs.front().constant_value().num();
    mpz_class an = coeffs.back().constant_value().num();
    // coefficients are integers after primitive()
    auto ps = divisors_of(a0);
    auto qs = divisors_of(an);
    std::map<VarId, Rat> pt;
    for (auto& pp : ps)
        for (auto& qq : qs) {
            for (int sign : {1, -1}) {
                Rat cand(sign * pp, qq);
                pt[v] = cand;
                if (p.eval(pt).is_zero() &&
                    std::find(roots.begin(), roots.end(), cand) == roots.end())
                    roots.push_back(cand);
            }
        }
    std::sort(roots.begin(), roots.end());
    return roots;
}

// ---- Groebner ----

namespace {

Poly reduce_by(Poly p, const std::vector<Poly>& basis, Budget& budget) {
    Poly result;
    while (!p.is_zero()) {
        const Mono& lm = p.leading_mono(MonoOrder::Lex);
        bool reduced = false;
        for (const Poly& g : basis) {
            const Mono& lg = g.leading_mono(MonoOrder::Lex);
            auto q = lm.div(lg);
            if (!q) continue;
            budget.charge_reduction();
            Rat c = p.leading_coeff(MonoOrder::Lex) / g.leading_coeff(MonoOrder::Lex);
            p = p - Poly::term(*q, c) * g;
            budget.check_degree(p);
            reduced = true;
            break;
        }
        if (!reduced) {
            Poly lt = Poly::term(lm, p.leading_coeff(MonoOrder::Lex));
            result = result + lt;
            p = p - lt;
        }
    }
    return result;
}

Poly spoly(const Poly& f, const Poly& g) {
    const Mono& lf = f.leading_mono(MonoOrder::Lex);
    const Mono& lg = g.leading_mono(MonoOrder::Lex);
    Mono l = lf.lcm(lg);
    Poly a = Poly::term(*l.div(lf), f.leading_coeff(MonoOrder::Lex).inverse());
    Poly b = Poly::term(*l.div(lg), g.leading_coeff(MonoOrder::Lex).inverse());
    return a * f - b * g;
}

std::vector<Poly> groebner_impl(std::vector<Poly> basis, Budget& budget) {
    if (!normalize_eqs(basis)) return {Poly(Rat(1))};
    std::deque<std::pair<size_t, size_t>> pairs;
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = i + 1; j < basis.size(); ++j) pairs.push_back({i, j});
    while (!pairs.empty()) {
        auto [i, j] = pairs.front();
        pairs.pop_front();
        const Mono& li = basis[i].leading_mono(MonoOrder::Lex);
        const Mono& lj = basis[j].leading_mono(MonoOrder::Lex);
        if (li.coprime_with(lj)) continue; // product criterion
        Poly r = reduce_by(spoly(basis[i], basis[j]), basis, budget);
        if (r.is_zero()) continue;
        r = r.primitive().second;
        if (is_nonzero_constant(r)) return {Poly(Rat(1))};
        size_t k = basis.size();
        basis.push_back(r);
        for (size_t t = 0; t < k; ++t) pairs.push_back({t, k});
    }
    // minimize: drop members whose lead is divisible by another lead
    std::vector<Poly> minimal;
    for (size_t i = 0; i < basis.size(); ++i) {
        const Mono& li = basis[i].leading_mono(MonoOrder::Lex);
        bool drop = false;
        for (size_t j = 0; j < basis.size(); ++j) {
            if (i == j) continue;
            const Mono& lj = basis[j].leading_mono(MonoOrder::Lex);
            if (lj.divides(li) && !(li.divides(lj) && j > i)) {
                drop = true;
                break;
            }
        }
        if (!drop) minimal.push_back(basis[i]);
    }
    // interreduce
    std::vector<Poly> out;
    for (size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Poly> others;
        for (size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        Poly r = reduce_by(minimal[i], others, budget);
        if (!r.is_zero()) out.push_back(r.primitive().second);
    }
    std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) {
        return mono_cmp(a.leading_mono(MonoOrder::Lex), b.leading_mono(MonoOrder::Lex),
                        MonoOrder::Lex) > 0;
    });
    return out;
}

} // namespace

std::vector<Poly> groebner_lex(const std::vector<Poly>& eqs, const SolveOptions& opt) {
    Budget budget{opt.max_reductions, opt.max_branches, opt.max_degree};
    return groebner_impl(eqs, budget);
}

// ---- branch search ----

namespace {

struct State {
    std::vector<Poly> eqs;
    std::vector<std::pair<VarId, RatFunc>> subs; // chronological
    bool groebner_done = false;
};

Poly substitute_poly(const Poly& p, VarId v, const Poly& value) { return p.substitute(v, value); }

// substitute a rational value into a polynomial equation, keeping the
// numerator as the new equation
Poly substitute_ratfunc(const Poly& p, VarId v, const RatFunc& value) {
    if (value.is_polynomial()) return substitute_poly(p, v, value.num());
    RatFunc acc;
    int d = p.degree_in(v);
    for (int k = d; k >= 0; --k) acc = acc * value + RatFunc(p.coeff_of(v, k));
    return acc.num();
}

// like normalize_eqs, but an equation free of unknowns is a contradiction
// even when parameters keep it nonconstant
bool normalize_state(State& st, const std::vector<VarId>& unknowns) {
    std::vector<Poly> out;
    for (auto& e : st.eqs) {
        if (e.is_zero()) continue;
        if (!involves_unknown(e, unknowns)) return false;
        Poly n = e.primitive().second;
        if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
    }
    st.eqs = std::move(out);
    return true;
}

// eliminate any unknown that appears linearly with a coefficient free of
// unknowns: such a coefficient is invertible over the parameter field, so
// the elimination loses no solutions and needs no case split
bool pivot_reduce(State& st, const std::vector<VarId>& unknowns) {
    bool progressed = true;
    while (progressed) {
        progressed = false;
        if (!normalize_state(st, unknowns)) return false;
        std::stable_sort(st.eqs.begin(), st.eqs.end(), [](const Poly& a, const Poly& b) {
            return a.term_count() < b.term_count();
        });
        for (size_t ei = 0; ei < st.eqs.size() && !progressed; ++ei) {
            for (VarId u : unknowns) {
                const Poly& eq = st.eqs[ei];
                if (eq.degree_in(u) != 1) continue;
                Poly c = eq.coeff_of(u, 1);
                if (involves_unknown(c, unknowns)) continue;
                Poly rest = eq.coeff_of(u, 0);
                if (c.is_constant()) {
                    Poly value = rest.scaled(-c.constant_value().inverse());
                    st.subs.push_back({u, RatFunc(value)});
                    for (auto& e : st.eqs) e = substitute_poly(e, u, value);
                } else {
                    RatFunc value(-rest, c);
                    st.subs.push_back({u, value});
                    for (auto& e : st.eqs) e = substitute_ratfunc(e, u, value);
                }
                progressed = true;
                break;
            }
        }
    }
    return normalize_state(st, unknowns);
}

std::vector<VarId> active_unknowns(const State& st, const std::vector<VarId>& unknowns) {
    std::vector<VarId> out;
    for (VarId u : unknowns) {
        bool substituted = false;
        for (auto& [v, val] : st.subs)
            if (v == u) {
                substituted = true;
                break;
            }
        if (!substituted) out.push_back(u);
    }
    return out;
}

// back-substitution can hit a parametrization pole: an eliminated unknown's
// denominator may vanish under later choices, and then the branch carries
// no solution at all
std::optional<Assignment> finish(const State& st, const std::vector<VarId>& unknowns) {
    Assignment a;
    for (VarId u : active_unknowns(st, unknowns)) a[u] = RatFunc::variable(u);
    try {
        for (auto it = st.subs.rbegin(); it != st.subs.rend(); ++it) {
            RatFunc val = it->second;
            for (VarId w : val.vars()) {
                auto found = a.find(w);
                if (found != a.end()) val = val.substitute(w, found->second);
            }
            a[it->first] = val;
        }
    } catch (const DivisionByZero&) {
        return std::nullopt;
    }
    return a;
}

void solve_rec(State st, const std::vector<VarId>& unknowns, Budget& budget,
               std::vector<Assignment>& out, const SolveOptions& opt) {
    if (!pivot_reduce(st, unknowns)) return;
    if (st.eqs.empty()) {
        budget.charge_branch();
        if (auto a = finish(st, unknowns)) out.push_back(std::move(*a));
        return;
    }

    // an equation reduced to a single monomial forces one of its unknowns
    // to vanish
    for (const Poly& eq : st.eqs) {
        if (eq.term_count() != 1) continue;
        std::vector<VarId> in_mono;
        for (VarId v : eq.vars())
            if (is_unknown(v, unknowns)) in_mono.push_back(v);
        for (VarId u : in_mono) {
            budget.charge_branch();
            State next = st;
            next.subs.push_back({u, RatFunc()});
            for (auto& e : next.eqs) e = substitute_poly(e, u, Poly());
            solve_rec(std::move(next), unknowns, budget, out, opt);
        }
        return; // the branches cover every way to satisfy this equation
    }

    // univariate equation: branch on each rational root (normalize_state
    // already ruled out single-variable equations in a parameter)
    for (const Poly& eq : st.eqs) {
        auto vs = eq.vars();
        if (vs.size() != 1) continue;
        VarId u = vs[0];
        std::vector<Rat> roots;
        try {
            roots = rational_roots(eq, u);
        } catch (const BudgetExceeded&) {
            continue;
        }
        for (const Rat& r : roots) {
            budget.charge_branch();
            State next = st;
            next.subs.push_back({u, RatFunc(Rat(r))});
            for (auto& e : next.eqs) e = substitute_poly(e, u, Poly(r));
            solve_rec(std::move(next), unknowns, budget, out, opt);
        }
        return; // roots exhaust this equation
    }

    // Groebner step: triangularize once per branch line; only pays off for
    // small systems, and parameter coefficients are out of its reach
    if (!st.groebner_done) {
        bool param_free = true;
        for (const Poly& eq : st.eqs) {
            for (VarId v : eq.vars())
                if (!is_unknown(v, unknowns)) {
                    param_free = false;
                    break;
                }
            if (!param_free) break;
        }
        if (param_free && active_unknowns(st, unknowns).size() <= 8) {
            try {
                Budget gb{opt.max_reductions, budget.branches, opt.max_degree};
                std::vector<Poly> basis = groebner_impl(st.eqs, gb);
                if (basis.size() == 1 && is_nonzero_constant(basis[0])) return;
                State next = st;
                next.eqs = std::move(basis);
                next.groebner_done = true;
                solve_rec(std::move(next), unknowns, budget, out, opt);
                return;
            } catch (const BudgetExceeded&) {
                // fall through to case splitting on the raw system
            }
        }
    }

    // equation linear in an unknown whose coefficient still contains
    // unknowns: split on whether that coefficient vanishes
    size_t best_idx = SIZE_MAX;
    VarId best_u = -1;
    size_t best_size = SIZE_MAX;
    for (size_t ei = 0; ei < st.eqs.size(); ++ei)
        for (VarId u : active_unknowns(st, unknowns)) {
            if (st.eqs[ei].degree_in(u) != 1) continue;
            Poly c = st.eqs[ei].coeff_of(u, 1);
            size_t sz = c.term_count() + st.eqs[ei].term_count();
            if (sz < best_size) {
                best_size = sz;
                best_idx = ei;
                best_u = u;
            }
        }
    if (best_idx != SIZE_MAX) {
        Poly c = st.eqs[best_idx].coeff_of(best_u, 1);
        Poly rest = st.eqs[best_idx].coeff_of(best_u, 0);
        // generic branch: coefficient nonzero, solve rationally
        {
            budget.charge_branch();
            State next = st;
            RatFunc value(-rest, c);
            next.subs.push_back({best_u, value});
            next.eqs.clear();
            for (auto& e : st.eqs) next.eqs.push_back(substitute_ratfunc(e, best_u, value));
            next.groebner_done = false;
            solve_rec(std::move(next), unknowns, budget, out, opt);
        }
        // degenerate branch: under c = 0 the split equation says rest = 0,
        // so it can be replaced by the pair
        {
            budget.charge_branch();
            State next = st;
            next.eqs.erase(next.eqs.begin() + best_idx);
            next.eqs.push_back(c);
            next.eqs.push_back(rest);
            next.groebner_done = false;
            solve_rec(std::move(next), unknowns, budget, out, opt);
        }
        return;
    }

    throw BudgetExceeded("system resists the available solving strategies");
}

bool assignment_sound(const Assignment& a, const std::vector<Poly>& original) {
    for (const Poly& eq : original) {
        RatFunc acc(eq);
        for (auto& [u, val] : a)
            if (acc.contains_var(u)) acc = acc.substitute(u, val);
        if (!acc.is_zero()) return false;
    }
    return true;
}

int nonzero_count(const Assignment& a) {
    int n = 0;
    for (auto& [u, v] : a)
        if (!v.is_zero()) ++n;
    return n;
}

bool assignment_less(const Assignment& a, const Assignment& b) {
    int na = nonzero_count(a), nb = nonzero_count(b);
    if (na != nb) return na < nb;
    auto ia = a.begin();
    auto ib = b.begin();
    for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
        const RatFunc &va = ia->second, &vb = ib->second;
        if (va == vb) continue;
        if (va.is_constant() && vb.is_constant()) return va.constant_value() < vb.constant_value();
        return va.to_string() < vb.to_string();
    }
    return a.size() < b.size();
}

std::vector<Assignment> solve_impl(const std::vector<Poly>& eqs,
                                   const std::vector<VarId>& unknowns, const SolveOptions& opt) {
    State st;
    st.eqs = eqs;
    Budget budget{opt.max_reductions, opt.max_branches, opt.max_degree};
    std::vector<Assignment> raw;
    solve_rec(std::move(st), unknowns, budget, raw, opt);

    std::vector<Assignment> out;
    for (auto& a : raw) {
        if (!assignment_sound(a, eqs)) continue;
        if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
    }
    std::sort(out.begin(), out.end(), assignment_less);
    return out;
}

} // namespace

std::vector<Assignment> solve_system(const std::vector<Poly>& eqs,
                                     const std::vector<VarId>& unknowns, const SolveOptions& opt) {
    for (const Poly& e : eqs)
        for (VarId v : e.vars())
            if (std::find(unknowns.begin(), unknowns.end(), v) == unknowns.end())
                throw std::invalid_argument("equation variable " + var_name(v) +
                                            " is not an unknown");
    return solve_impl(eqs, unknowns, opt);
}

std::vector<Assignment> solve_parametric(const std::vector<Poly>& eqs,
                                         const std::vector<VarId>& unknowns,
                                         const SolveOptions& opt) {
    return solve_impl(eqs, unknowns, opt);
}

std::optional<std::map<VarId, Rat>> specialize(const Assignment& a,
                                               const std::vector<VarId>& unknowns) {
    for (long choice : {0L, 1L}) {
        std::map<VarId, Rat> pt;
        bool ok = true;
        bool all_zero = true;
        for (VarId u : unknowns) {
            auto it = a.find(u);
            if (it == a.end()) {
                ok = false;
                break;
            }
            RatFunc val = it->second;
            std::map<VarId, Rat> frees;
            for (VarId w : val.vars()) frees[w] = Rat(choice);
            Rat r;
            try {
                r = frees.empty() ? val.constant_value() : val.eval(frees);
            } catch (const DivisionByZero&) {
                ok = false;
                break;
            }
            pt[u] = r;
            if (!r.is_zero()) all_zero = false;
        }
        if (ok && !all_zero) return pt;
    }
    return std::nullopt;
}

} // namespace sfint
