#include "sfint/sfunction.hpp"

#include "sfint/ansatz.hpp"
#include "sfint/coeffsys.hpp"
#include "sfint/residual.hpp"
#include "sfint/solve.hpp"

#include <algorithm>

namespace sfint {

namespace {

const char* prefix_for(int k) { return k == 1 ? "a" : k == 2 ? "b" : "c"; }

} // namespace

std::vector<SFound> sfunction_search(const Ode2& ode, const SearchOptions& opt,
                                     std::vector<std::string>* trace) {
    std::vector<SFound> out;
    std::vector<int> ks = opt.sn == 0 ? std::vector<int>{1, 2, 3} : std::vector<int>{opt.sn};
    for (int k : ks) {
        Poly den = opt.den ? *opt.den : ode.N();
        if (den.is_zero()) continue;
        if (opt.sfun) {
            RatFunc s = *opt.sfun;
            if (residual_s(ode, k, s.num(), s.den()).is_zero()) {
                out.push_back({k, s, -1});
                if (trace) trace->push_back("k=" + std::to_string(k) + " supplied S accepted");
            } else if (trace) {
                trace->push_back("k=" + std::to_string(k) + " supplied S rejected");
            }
            continue;
        }
        int nmax = std::max(ode.degree_bound(), 1);
        std::vector<int> degrees;
        if (opt.deg)
            degrees.push_back(*opt.deg);
        else
            for (int n = 1; n <= nmax; ++n) degrees.push_back(n);
        for (int n : degrees) {
            Ansatz az = make_ansatz(n, prefix_for(k));
            Poly res = residual_s(ode, k, az.poly, den);
            auto eqs = extract_system(res);
            std::vector<Assignment> sols;
            try {
                sols = solve_system(eqs, az.unknowns);
            } catch (const BudgetExceeded&) {
                if (trace)
                    trace->push_back("k=" + std::to_string(k) + " deg=" + std::to_string(n) +
                                     " budget exceeded");
                if (opt.deg) throw;
                continue;
            }
            std::vector<RatFunc> accepted;
            for (auto& sol : sols) {
                auto point = specialize(sol, az.unknowns);
                if (!point) continue;
                Poly P = az.poly.eval_partial(*point);
                if (P.is_zero()) {
                    if (!residual_s(ode, k, Poly(), den).is_zero()) continue;
                    RatFunc s;
                    if (std::find(accepted.begin(), accepted.end(), s) == accepted.end())
                        accepted.push_back(s);
                    continue;
                }
                RatFunc s(P, den);
                if (std::find(accepted.begin(), accepted.end(), s) == accepted.end())
                    accepted.push_back(s);
            }
            if (trace)
                trace->push_back("k=" + std::to_string(k) + " deg=" + std::to_string(n) +
                                 " branches=" + std::to_string(accepted.size()));
            if (!accepted.empty()) {
                for (auto& s : accepted) out.push_back({k, s, n});
                break;
            }
        }
    }
    return out;
}

SFunctionSet complete_sfunctions(const Ode2& ode, int k, const RatFunc& s) {
    SFunctionSet set;
    set.source = k;
    RatFunc phi = ode.phi();
    RatFunc zf = RatFunc::variable(var_z());
    switch (k) {
    case 1:
        set.s1 = s;
        set.s2 = -phi - zf * s;
        break;
    case 2:
        set.s2 = s;
        set.s1 = -(phi + s) / zf;
        break;
    case 3: {
        RatFunc shifted = s + zf;
        if (shifted.is_zero()) throw DegenerateS("S3 = -z leaves the set undetermined");
        set.s1 = -phi / shifted;
        set.s2 = *set.s1 * s;
        set.s3 = s;
        break;
    }
    default:
        throw std::invalid_argument("S index out of range");
    }
    if (!set.s3) {
        if (!set.s1->is_zero()) set.s3 = *set.s2 / *set.s1;
    }
    return set;
}

Ode1 associated_1ode(const SFunctionSet& set, int en) {
    switch (en) {
    case 1:
        if (!set.s1) throw DegenerateS("no S1 available");
        return Ode1{var_y(), var_z(), -*set.s1, var_x()};
    case 2:
        if (!set.s2) throw DegenerateS("no S2 available");
        return Ode1{var_x(), var_z(), -*set.s2, var_y()};
    case 3:
        if (!set.s3) throw DegenerateS("no S3 available");
        return Ode1{var_x(), var_y(), -*set.s3, var_z()};
    default:
        throw std::invalid_argument("associated equation index out of range");
    }
}

std::array<Ode1, 3> associated_1odes(const SFunctionSet& set) {
    return {associated_1ode(set, 1), associated_1ode(set, 2), associated_1ode(set, 3)};
}

Expr nonlocal_symmetry_form(const RatFunc& s) {
    if (s.is_zero()) return Expr::num(Rat(1));
    return Expr::exp(Expr::integral(Expr::from_ratfunc(-s), var_x()));
}

} // namespace sfint
