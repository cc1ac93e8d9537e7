// Acceptance suite: one line per criterion, exit 0 only when every
// criterion holds.  Tolerances and time ceilings are fixed here on purpose;
// loosening them is not a fix.

#include "cli.hpp"
#include "sfint/ansatz.hpp"
#include "sfint/coeffsys.hpp"
#include "sfint/dx.hpp"
#include "sfint/invade.hpp"
#include "sfint/numeric.hpp"
#include "sfint/parse.hpp"
#include "sfint/reduce.hpp"
#include "sfint/residual.hpp"
#include "sfint/sample.hpp"
#include "sfint/solve.hpp"
#include "sfint/verify.hpp"

#include <sys/resource.h>

#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>
#include <vector>

using namespace sfint;

namespace {

using Clock = std::chrono::steady_clock;

double secs_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

long max_rss_kb() {
    rusage ru{};
    getrusage(RUSAGE_SELF, &ru);
    return ru.ru_maxrss;
}

int failures = 0;

void report(int number, const std::string& name, bool passed, const std::string& detail,
            double secs) {
    if (!passed) ++failures;
    std::printf("%s  criterion %d: %s (%.2f s)%s%s\n", passed ? "PASS" : "FAIL", number,
                name.c_str(), secs, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
}

Ode2 worked_example() {
    return Ode2(parse_poly("x^5*z - x^4*z^2 - 3*z*x^4 + 4*x^3*z^2 - x*y + x*z + y*z - z^2 - y"),
                parse_poly("x^5 - y"));
}

Ode2 second_example() {
    return Ode2(parse_poly("-(x^2*z^8 + y*z^4*x - z*x + y)"),
                parse_poly("x*z^2*(3*y*z^4*x - 4*z*x + 3*y^2)"));
}

Ode2 inert_example() {
    return Ode2(parse_poly("-(x^5*y*z^2 + 4*x^4*y^2*z - x*z^2 + x*z - 4*y*z + 4*y)*z*x^3"),
                parse_poly("x^8*y^2*z^2 + x^8*y^2*z + z*y*x^4 + x^4*y + 1"));
}

std::vector<cli::CorpusEntry> corpus() {
    return cli::load_corpus(std::string(SFINT_DATA_DIR) + "/corpus.jsonl");
}

bool cross_equal(const RatFunc& a, const RatFunc& b) {
    return (a.num() * b.den() - b.num() * a.den()).is_zero();
}

// |e| at `points` random admissible points, all below tol
bool numerically_zero_at(const Expr& e, int points, double tol, uint64_t seed) {
    std::vector<VarId> vars{var_x(), var_y(), var_z()};
    for (VarId v : e.free_vars())
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    PointSampler sampler(seed);
    EvalOptions opt;
    opt.allow_inert = true;
    int good = 0;
    for (int tries = 0; good < points && tries < 40 * points; ++tries) {
        RatPoint pt = sampler.point(vars);
        try {
            NumVal v = eval_expr_checked(e, pt, tol / 1000, opt);
            if (!numeric_zero(v, tol)) return false;
            ++good;
        } catch (const NumericError&) {
        } catch (const DivisionByZero&) {
        }
    }
    return good == points;
}

void criterion_1() {
    auto t0 = Clock::now();
    std::string detail;
    bool ok = true;
    Ode2 ode = worked_example();

    // degree one coefficient branch, exactly a0 = 0, a1 = -1, a2 = 0, a3 = 1
    Ansatz az = make_ansatz(1, "a");
    auto sols = solve_system(extract_system(residual_s(ode, 1, az.poly, ode.N())), az.unknowns);
    if (sols.size() != 1) {
        ok = false;
        detail += "expected one coefficient branch, got " + std::to_string(sols.size()) + "; ";
    } else {
        Rat want[4] = {Rat(0), Rat(-1), Rat(0), Rat(1)};
        for (int i = 0; i < 4; ++i) {
            const RatFunc& v = sols[0].at(az.unknowns[i]);
            if (!v.is_constant() || v.constant_value() != want[i]) {
                ok = false;
                detail += "coefficient branch mismatch; ";
                break;
            }
        }
    }

    SearchOptions opt;
    auto found = sfunction_search(ode, opt);
    if (found.size() != 1 || !cross_equal(found[0].s, parse_ratfunc("(z - x)/(x^5 - y)"))) {
        ok = false;
        detail += "S1 mismatch; ";
    }

    Reduction red = reduce_characteristic(ode, parse_expr("(z - x)/(x^5 - y)"), 1);
    if (red.reduced.rhs != parse_ratfunc("-h*(h*x^4 - 4*h*x^3 + 1)")) {
        ok = false;
        detail += "reduced equation mismatch; ";
    }

    Report rep = invade(ode);
    if (rep.exit_code != 0 ||
        !functionally_dependent(parse_expr(rep.first_integral),
                                parse_expr("(z*x^4 - y)*exp(-x)/(z - x)"))) {
        ok = false;
        detail += "first integral not equivalent to the reference; ";
    }

    double secs = secs_since(t0);
    if (secs >= 5.0) {
        ok = false;
        detail += "over the 5 s ceiling; ";
    }
    report(1, "worked example end to end", ok, detail, secs);
}

void criterion_2() {
    auto t0 = Clock::now();
    std::string detail;
    bool ok = true;
    for (auto& e : corpus()) {
        if (e.expected_i.empty()) continue;
        auto row0 = Clock::now();
        Ode2 ode(parse_poly(e.m_text), parse_poly(e.n_text));
        VerifyRecord rec = verify_first_integral(ode, parse_expr(e.expected_i));
        double rs = secs_since(row0);
        if (!rec.passed || rec.max_abs_residual >= 1e-30) {
            ok = false;
            detail += e.id + " residual; ";
        }
        if (rs >= 5.0) {
            ok = false;
            detail += e.id + " over 5 s; ";
        }
    }
    long rss = max_rss_kb();
    if (rss >= 200 * 1024) {
        ok = false;
        detail += "resident set " + std::to_string(rss / 1024) + " MB; ";
    }
    double secs = secs_since(t0);
    if (secs >= 30.0) {
        ok = false;
        detail += "over the 30 s ceiling; ";
    }
    report(2, "first integral verification suite", ok, detail, secs);
}

void criterion_3() {
    auto t0 = Clock::now();
    std::string detail;
    bool ok = true;
    auto entries = corpus();
    for (int i = 0; i < 10; ++i) {
        auto& e = entries[i];
        auto row0 = Clock::now();
        Ode2 ode(parse_poly(e.m_text), parse_poly(e.n_text));
        SearchOptions opt;
        auto found = sfunction_search(ode, opt);
        RatFunc want = parse_ratfunc(e.expected_s1);
        bool hit = false;
        for (auto& f : found)
            if (f.k == 1 && cross_equal(f.s, want)) hit = true;
        if (!hit) {
            ok = false;
            detail += e.id + " S1 mismatch; ";
        }
        double rs = secs_since(row0);
        if (rs >= 10.0) {
            ok = false;
            detail += e.id + " over 10 s; ";
        }
    }
    report(3, "default search reproduces the S column", ok, detail, secs_since(t0));
}

void criterion_4() {
    auto t0 = Clock::now();
    std::string detail;
    bool ok = true;
    auto entries = corpus();
    for (int i = 0; i < 10; ++i) {
        auto& e = entries[i];
        Ode2 ode(parse_poly(e.m_text), parse_poly(e.n_text));
        CompatRecord rec =
            verify_compatibility(ode, parse_expr(e.expected_r), parse_ratfunc(e.expected_s1));
        if (!rec.passed) {
            ok = false;
            detail += e.id + "; ";
        }
    }
    report(4, "integrating factor compatibility residuals", ok, detail, secs_since(t0));
}

void criterion_5() {
    auto t0 = Clock::now();
    std::string detail;
    bool ok = true;
    auto entries = corpus();
    int want_deg[5] = {1, 4, 4, 1, 6};
    for (int i = 10; i < 15; ++i) {
        auto& e = entries[i];
        auto row0 = Clock::now();
        Ode2 ode(parse_poly(e.m_text), parse_poly(e.n_text));
        SearchOptions opt;
        if (auto it = e.options.find("den"); it != e.options.end())
            opt.den = parse_poly(it->second);
        auto found = sfunction_search(ode, opt);
        RatFunc want = parse_ratfunc(e.expected_s1);
        bool hit = false;
        for (auto& f : found)
            if (f.k == 1 && cross_equal(f.s, want) && f.degree == want_deg[i - 10]) hit = true;
        if (!hit) {
            ok = false;
            detail += e.id + "; ";
        }
        double rs = secs_since(row0);
        if (rs >= 60.0) {
            ok = false;
            detail += e.id + " over 60 s; ";
        }
    }
    report(5, "higher degree searches reproduce the S column", ok, detail, secs_since(t0));
}

void criterion_6() {
    auto t0 = Clock::now();
    std::string detail;
    bool ok = true;
    Ode2 ode = second_example();
    SearchOptions opt;
    opt.sn = 2;
    auto found = sfunction_search(ode, opt);
    RatFunc want = parse_ratfunc("y/(x*z^2*(3*x*y*z^4 - 4*x*z + 3*y^2))");
    bool hit = false;
    for (auto& f : found)
        if (f.k == 2 && cross_equal(f.s, want)) hit = true;
    if (!hit) {
        ok = false;
        detail += "S2 mismatch; ";
    }

    Expr H1 = parse_expr("z^3*y - ln(z^4*x + y)");
    Expr H2 = parse_expr("-(z^4*x + y)/(x*exp(z^3*y))");
    Expr H3 = parse_expr("-x*exp(z^3*y)/(z^4*x + y)");
    if (!numerically_zero_at(dx_total(ode, H2), 30, 1e-30, 11)) {
        ok = false;
        detail += "Dx[H2] nonzero; ";
    }
    if (!numerically_zero_at(dx_total(ode, H3), 30, 1e-30, 12)) {
        ok = false;
        detail += "Dx[H3] nonzero; ";
    }
    if (!numerically_zero_at(dx_total(ode, H1) + parse_expr("1/x"), 30, 1e-30, 13)) {
        ok = false;
        detail += "Dx[H1] differs from -1/x; ";
    }
    report(6, "second usage example checks", ok, detail, secs_since(t0));
}

void criterion_7() {
    auto t0 = Clock::now();
    std::string detail;
    bool ok = true;
    Ode2 ode = inert_example();
    SearchOptions opt;
    opt.sn = 3;
    opt.den = parse_poly("x");

    auto s0 = Clock::now();
    auto found = sfunction_search(ode, opt);
    double search_secs = secs_since(s0);
    bool hit = false;
    for (auto& f : found)
        if (f.k == 3 && cross_equal(f.s, parse_ratfunc("4*y/x"))) hit = true;
    if (!hit) {
        ok = false;
        detail += "S3 mismatch; ";
    }
    if (search_secs >= 1.0) {
        ok = false;
        detail += "search over 1 s; ";
    }

    opt.en = 3;
    Report rep = invade(ode, opt);
    if (rep.exit_code != 0) {
        ok = false;
        detail += "no verified first integral; ";
    } else {
        if (rep.first_integral.find("Integral") == std::string::npos) {
            ok = false;
            detail += "integral is not in inert form; ";
        }
        if (rep.verification.method != "numeric" || rep.verification.max_abs_residual >= 1e-25) {
            ok = false;
            detail += "quadrature residual too large; ";
        }
    }
    report(7, "inert composition example", ok, detail, secs_since(t0));
}

bool recovers(const Assignment& a, const std::map<VarId, Rat>& plant) {
    for (auto& [v, r] : plant) {
        auto it = a.find(v);
        if (it == a.end()) return false;
        RatFunc val = it->second;
        std::map<VarId, Rat> sub;
        for (VarId w : val.vars()) sub[w] = plant.at(w);
        Rat got;
        try {
            got = sub.empty() ? val.constant_value() : val.eval(sub);
        } catch (const DivisionByZero&) {
            return false;
        }
        if (got != r) return false;
    }
    return true;
}

void criterion_8() {
    auto t0 = Clock::now();
    std::string detail;
    bool ok = true;

    // (a) planted random quadratic coefficient systems
    {
        std::mt19937_64 rng(2024);
        std::uniform_int_distribution<int> num(-3, 3);
        std::uniform_int_distribution<int> den(1, 2);
        std::uniform_int_distribution<int> nvars(2, 3);
        std::uniform_int_distribution<int> cf(-2, 2);
        int recovered = 0;
        const int total = 500;
        for (int trial = 0; trial < total; ++trial) {
            int n = nvars(rng);
            std::vector<VarId> unknowns;
            std::map<VarId, Rat> plant;
            std::vector<Poly> shifted;
            for (int i = 0; i < n; ++i) {
                VarId v = var_id("u" + std::to_string(i));
                unknowns.push_back(v);
                Rat r(num(rng), den(rng));
                plant[v] = r;
                shifted.push_back(Poly::variable(v) - Poly(r));
            }
            std::vector<Poly> sys;
            for (int i = 0; i < n; ++i) {
                Poly lin(Rat(den(rng)));
                for (int j = 0; j < n; ++j) lin = lin + Rat(cf(rng)) * Poly::variable(unknowns[j]);
                Poly eq = shifted[i] * lin;
                for (int j = 0; j < n; ++j) eq = eq + Rat(cf(rng)) * shifted[j];
                sys.push_back(eq);
            }
            try {
                auto sols = solve_system(sys, unknowns);
                for (auto& s : sols)
                    if (recovers(s, plant)) {
                        ++recovered;
                        break;
                    }
            } catch (const BudgetExceeded&) {
            }
        }
        if (recovered != total) {
            ok = false;
            detail += "planted solutions: " + std::to_string(recovered) + "/" +
                      std::to_string(total) + "; ";
        }
    }

    // (b) every accepted S substitutes to the zero residual
    {
        struct Case {
            Ode2 ode;
            SearchOptions opt;
        };
        std::vector<Case> cases;
        cases.push_back({worked_example(), {}});
        {
            SearchOptions o;
            o.sn = 2;
            cases.push_back({second_example(), o});
        }
        {
            SearchOptions o;
            o.sn = 3;
            o.den = parse_poly("x");
            cases.push_back({inert_example(), o});
        }
        auto entries = corpus();
        for (int i : {5, 9}) {
            Ode2 ode(parse_poly(entries[i].m_text), parse_poly(entries[i].n_text));
            cases.push_back({ode, {}});
        }
        for (auto& c : cases) {
            auto found = sfunction_search(c.ode, c.opt);
            if (found.empty()) {
                ok = false;
                detail += "round-trip search came up empty; ";
                continue;
            }
            for (auto& f : found)
                if (!residual_s(c.ode, f.k, f.s.num(), f.s.den()).is_zero()) {
                    ok = false;
                    detail += "nonzero residual after substitution; ";
                }
        }
    }

    // (c) derivatives against central finite differences, 60 digit working
    // precision, rational step 1e-20, relative agreement 1e-30
    {
        const char* trees[] = {
            "x^3*y - z/x",
            "x/(y*z) + y/(x*z)",
            "(x + y + z)^3",
            "(x - y)/(x + z)",
            "(x^5 - y)/(x*z + 1)",
            "exp(x)",
            "exp(-x)*y",
            "exp(x*y - z)",
            "exp(x^2/(y + 1))",
            "ln(x)",
            "ln(x^2 + y^2)",
            "ln(x*z^4 + y)",
            "x*ln(y/x)",
            "exp(-x)*(z*x^4 - y)/(z - x)",
            "z^3*y - ln(z^4*x + y)",
            "exp(1/(y*z^2 + x))/(y*z^2 + x)^2",
            "(y*x + z)*exp(-z)/(z + y)",
            "x^(1/2)",
            "(x^2 + y^2)^(3/2)",
            "exp(z)*ln(x + y)/x",
        };
        EvalOptions opt;
        opt.prec = 400;
        Rat h(1, 1);
        for (int i = 0; i < 20; ++i) h = h / Rat(10);
        h = h * h; // 1e-20 exactly, built without long literals
        PointSampler sampler(77);
        std::vector<VarId> vars{var_x(), var_y(), var_z()};
        int checked = 0, agreed = 0;
        for (const char* s : trees) {
            Expr e = parse_expr(s);
            for (VarId v : vars) {
                Expr de = e.derivative(v);
                for (int attempt = 0; attempt < 12 && checked < 3 * 20; ++attempt) {
                    RatPoint pt = sampler.point(vars);
                    // positive points keep roots and logs real
                    for (auto& [w, val]  : pt)
                        if (val.sign() <= 0) val = Rat(1) - val;
                    RatPoint hi = pt, lo = pt;
                    hi[v] = pt[v] + h;
                    lo[v] = pt[v] - h;
                    try {
                        NumVal fhi = eval_expr_checked(e, hi, 1e-70, opt);
                        NumVal flo = eval_expr_checked(e, lo, 1e-70, opt);
                        NumVal dv = eval_expr_checked(de, pt, 1e-70, opt);
                        BigFloat step(h * Rat(2), 400);
                        BigFloat fd = (fhi.val - flo.val) / step;
                        BigFloat diff = (fd - dv.val).abs();
                        BigFloat scale = dv.val.abs();
                        if (scale.cmp(1e-3) < 0) scale = BigFloat(1L, 400);
                        ++checked;
                        if ((diff / scale).cmp(1e-30) < 0) ++agreed;
                        break;
                    } catch (const NumericError&) {
                    } catch (const DivisionByZero&) {
                    }
                }
                if (checked >= 3 * 20) break;
            }
        }
        if (checked < 20 || agreed != checked) {
            ok = false;
            detail += "finite differences: " + std::to_string(agreed) + "/" +
                      std::to_string(checked) + "; ";
        }
    }

    // (d) negative control
    {
        Ode2 ode(parse_poly("x"), parse_poly("1"));
        Report rep = invade(ode);
        if (rep.exit_code != 0 ||
            !functionally_dependent(parse_expr(rep.first_integral), parse_expr("z - x^2/2"))) {
            ok = false;
            detail += "negative control failed; ";
        }
    }

    report(8, "property suites", ok, detail, secs_since(t0));
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    std::printf("%d/8 criteria passed\n", 8 - failures);
    return failures == 0 ? 0 : 1;
}
