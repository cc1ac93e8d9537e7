#include "sfint/invade.hpp"

#include "sfint/ode1solve.hpp"
#include "sfint/reduce.hpp"

#include <chrono>

namespace sfint {

namespace {

using Clock = std::chrono::steady_clock;

long long ms_since(Clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (auto& p : parts) {
        if (!out.empty()) out += "; ";
        out += p;
    }
    return out;
}

} // namespace

Report invade(const Ode2& ode, const SearchOptions& opt) {
    Report rep;
    rep.ode_m = ode.M().to_string();
    rep.ode_n = ode.N().to_string();
    rep.options["sn"] = opt.sn == 0 ? "all" : std::to_string(opt.sn);
    rep.options["en"] = opt.en == 0 ? "all" : std::to_string(opt.en);
    if (opt.deg) rep.options["deg"] = std::to_string(*opt.deg);
    if (opt.den) rep.options["den"] = opt.den->to_string();
    if (opt.sfun) rep.options["sfun"] = opt.sfun->to_string();
    rep.options["seed"] = std::to_string(opt.seed);

    auto push_stage = [&rep](const std::string& name, const std::string& status,
                             const std::string& output, Clock::time_point t0) {
        rep.stages.push_back({name, status, output, ms_since(t0)});
    };

    auto t0 = Clock::now();
    std::vector<std::string> notes;
    std::vector<SFound> found;
    try {
        found = sfunction_search(ode, opt, &notes);
    } catch (const std::runtime_error& e) {
        notes.push_back(std::string("aborted: ") + e.what());
    }
    for (auto& f : found) {
        std::string key = "s" + std::to_string(f.k);
        if (!rep.s_functions.count(key)) rep.s_functions[key] = f.s.to_string();
    }
    push_stage("sfunction", found.empty() ? "fail" : "ok", join(notes), t0);
    if (found.empty()) return rep;

    std::vector<int> ens = opt.en == 0 ? std::vector<int>{1, 2, 3} : std::vector<int>{opt.en};
    Ode1Options oopt;
    oopt.darboux_degree = opt.darboux_degree;
    oopt.seed = opt.seed;

    for (auto& f : found) {
        SFunctionSet set;
        try {
            set = complete_sfunctions(ode, f.k, f.s);
        } catch (const DegenerateS& e) {
            push_stage("exodes", "fail", e.what(), Clock::now());
            continue;
        }
        for (int k = 1; k <= 3; ++k) {
            auto member = k == 1 ? set.s1 : k == 2 ? set.s2 : set.s3;
            std::string key = "s" + std::to_string(k);
            if (member && !rep.s_functions.count(key)) rep.s_functions[key] = member->to_string();
        }
        for (int en : ens) {
            t0 = Clock::now();
            Ode1 assoc;
            try {
                assoc = associated_1ode(set, en);
            } catch (const DegenerateS& e) {
                push_stage("exodes", "skip", e.what(), t0);
                continue;
            }
            rep.associated_odes.push_back(assoc.to_string());
            push_stage("exodes", "ok", assoc.to_string(), t0);

            t0 = Clock::now();
            auto hs = solve_1ode(assoc, oopt);
            if (!hs) {
                push_stage("hfunction", "fail", "no closed-form solution found", t0);
                continue;
            }
            rep.h_functions.push_back(hs->H.to_string());
            push_stage("hfunction", "ok", hs->H.to_string() + " (" + hs->method + ")", t0);

            t0 = Clock::now();
            Reduction red;
            try {
                red = reduce_characteristic(ode, hs->H, en);
            } catch (const EliminationFailed& e) {
                push_stage("pdeassol", "fail", e.what(), t0);
                continue;
            }
            rep.reduced_ode = red.reduced.to_string();

            Expr fexpr = Expr::var(red.hvar);
            std::string fnote = "H is already a first integral";
            if (!red.reduced.rhs.is_zero()) {
                auto fs = solve_1ode(red.reduced, oopt);
                if (!fs) {
                    push_stage("pdeassol", "fail",
                               red.reduced.to_string() + "; reduced equation unsolved", t0);
                    continue;
                }
                fexpr = fs->H;
                fnote = fexpr.to_string() + " (" + fs->method + ")";
            }
            push_stage("pdeassol", "ok", red.reduced.to_string() + "; " + fnote, t0);

            t0 = Clock::now();
            std::vector<Expr> candidates;
            try {
                candidates =
                    compose_first_integral(ode, fexpr, hs->H, en, red.hvar, red.reduced.rhs);
            } catch (const ConstantResult& e) {
                push_stage("verify", "fail", e.what(), t0);
                continue;
            }
            bool done = false;
            for (Expr& cand : candidates) {
                VerifyRecord rec;
                try {
                    rec = verify_first_integral(ode, cand, opt.seed);
                } catch (const AllPointsDegenerate&) {
                    continue;
                }
                if (!rec.passed) continue;
                rep.first_integral = cand.to_string();
                rep.verification = rec;
                rep.exit_code = 0;
                push_stage("verify", "ok", cand.to_string(), t0);
                done = true;
                break;
            }
            if (done) return rep;
            push_stage("verify", "fail", "no composition verified", t0);
        }
    }
    return rep;
}

} // namespace sfint
