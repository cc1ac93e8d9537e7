#include "cli.hpp"

#include "sfint/dx.hpp"
#include "sfint/gensol.hpp"
#include "sfint/ode1solve.hpp"
#include "sfint/parse.hpp"
#include "sfint/reduce.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

namespace sfint::cli {

namespace {

using Clock = std::chrono::steady_clock;

long long ms_since(Clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (auto& p : parts) {
        if (!out.empty()) out += "; ";
        out += p;
    }
    return out;
}

int parse_choice(const std::string& text, const char* flag) {
    if (text == "all") return 0;
    if (text == "1" || text == "2" || text == "3") return text[0] - '0';
    throw UsageError(std::string(flag) + " must be 1, 2, 3 or all");
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read ODE file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// accepts "z' = <expr>" as printed by the package, or a bare expression
std::string rhs_of(const std::string& text) {
    std::string t = trim(text);
    if (t.rfind("z'", 0) == 0) {
        std::string rest = trim(t.substr(2));
        if (rest.empty() || rest[0] != '=') throw UsageError("expected '=' after z' in ODE text");
        return trim(rest.substr(1));
    }
    return t;
}

SearchOptions search_options(const CliConfig& cfg) {
    SearchOptions opt;
    opt.sn = parse_choice(cfg.sn, "--sn");
    opt.en = parse_choice(cfg.en, "--en");
    if (cfg.deg) {
        if (*cfg.deg < 1) throw UsageError("--deg must be positive");
        opt.deg = cfg.deg;
    }
    if (!cfg.den.empty()) opt.den = parse_poly(cfg.den);
    if (!cfg.sfun.empty()) opt.sfun = parse_ratfunc(cfg.sfun);
    opt.seed = cfg.seed;
    return opt;
}

Report base_report(const Ode2& ode, const SearchOptions& opt) {
    Report rep;
    rep.ode_m = ode.M().to_string();
    rep.ode_n = ode.N().to_string();
    rep.options["sn"] = opt.sn == 0 ? "all" : std::to_string(opt.sn);
    rep.options["en"] = opt.en == 0 ? "all" : std::to_string(opt.en);
    if (opt.deg) rep.options["deg"] = std::to_string(*opt.deg);
    if (opt.den) rep.options["den"] = opt.den->to_string();
    if (opt.sfun) rep.options["sfun"] = opt.sfun->to_string();
    rep.options["seed"] = std::to_string(opt.seed);
    return rep;
}

long prec_from_digits(int digits) {
    if (digits < 1) throw UsageError("--digits must be positive");
    return static_cast<long>(std::ceil(digits * 3.3219280948873623)) + 16;
}

std::string residual_str(double v) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(2) << v;
    return os.str();
}

void emit(const CliConfig& cfg, const Report& rep, std::ostream& out,
          const std::vector<std::string>& lines) {
    if (cfg.output == "json") {
        out << rep.to_json() << "\n";
    } else {
        for (auto& l : lines) out << l << "\n";
    }
}

int cmd_dx(const CliConfig& cfg, std::ostream& out) {
    if (cfg.expr.empty()) throw UsageError("dx needs --expr");
    Ode2 ode = ode_from_config(cfg);
    SearchOptions opt = search_options(cfg);
    Report rep = base_report(ode, opt);
    auto t0 = Clock::now();
    Expr d = dx_total(ode, parse_expr(cfg.expr));
    rep.stages.push_back({"dx", "ok", d.to_string(), ms_since(t0)});
    rep.exit_code = 0;
    emit(cfg, rep, out, {ode.to_string(), "Dx[" + trim(cfg.expr) + "] = " + d.to_string()});
    return 0;
}

// runs the search stage and records it; the found list is empty on failure
std::vector<SFound> search_stage(const Ode2& ode, const SearchOptions& opt, Report& rep) {
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
    rep.stages.push_back({"sfunction", found.empty() ? "fail" : "ok", join(notes), ms_since(t0)});
    return found;
}

std::vector<std::string> s_lines(const Report& rep) {
    std::vector<std::string> lines;
    for (int k = 1; k <= 3; ++k) {
        auto it = rep.s_functions.find("s" + std::to_string(k));
        if (it != rep.s_functions.end())
            lines.push_back("S" + std::to_string(k) + " = " + it->second);
    }
    return lines;
}

int cmd_sfunction(const CliConfig& cfg, std::ostream& out) {
    Ode2 ode = ode_from_config(cfg);
    SearchOptions opt = search_options(cfg);
    Report rep = base_report(ode, opt);
    auto found = search_stage(ode, opt, rep);
    rep.exit_code = found.empty() ? 1 : 0;
    std::vector<std::string> lines{ode.to_string()};
    if (found.empty()) {
        lines.push_back("no S-function found");
    } else {
        for (auto& f : found) {
            std::string line = "S" + std::to_string(f.k) + " = " + f.s.to_string();
            if (f.degree >= 0) line += "   (ansatz degree " + std::to_string(f.degree) + ")";
            lines.push_back(line);
        }
    }
    emit(cfg, rep, out, lines);
    return rep.exit_code;
}

// completes the S set from the first workable search hit
std::optional<SFunctionSet> completed_set(const Ode2& ode, const std::vector<SFound>& found,
                                          Report& rep) {
    for (auto& f : found) {
        try {
            SFunctionSet set = complete_sfunctions(ode, f.k, f.s);
            for (int k = 1; k <= 3; ++k) {
                auto member = k == 1 ? set.s1 : k == 2 ? set.s2 : set.s3;
                std::string key = "s" + std::to_string(k);
                if (member && !rep.s_functions.count(key))
                    rep.s_functions[key] = member->to_string();
            }
            return set;
        } catch (const DegenerateS& e) {
            rep.stages.push_back({"exodes", "fail", e.what(), 0});
        }
    }
    return std::nullopt;
}

std::vector<int> en_list(const SearchOptions& opt) {
    return opt.en == 0 ? std::vector<int>{1, 2, 3} : std::vector<int>{opt.en};
}

int cmd_exodes(const CliConfig& cfg, std::ostream& out) {
    Ode2 ode = ode_from_config(cfg);
    SearchOptions opt = search_options(cfg);
    Report rep = base_report(ode, opt);
    auto found = search_stage(ode, opt, rep);
    std::vector<std::string> lines{ode.to_string()};
    if (auto set = found.empty() ? std::nullopt : completed_set(ode, found, rep)) {
        for (int en : en_list(opt)) {
            auto t0 = Clock::now();
            try {
                Ode1 assoc = associated_1ode(*set, en);
                rep.associated_odes.push_back(assoc.to_string());
                rep.stages.push_back({"exodes", "ok", assoc.to_string(), ms_since(t0)});
                lines.push_back("1ODE[" + std::to_string(en) + "]: " + assoc.to_string());
            } catch (const DegenerateS& e) {
                rep.stages.push_back({"exodes", "skip", e.what(), ms_since(t0)});
                lines.push_back("1ODE[" + std::to_string(en) + "]: " + e.what());
            }
        }
    }
    for (auto& l : s_lines(rep)) lines.push_back(l);
    rep.exit_code = rep.associated_odes.empty() ? 1 : 0;
    if (rep.exit_code != 0) lines.push_back("no associated equation available");
    emit(cfg, rep, out, lines);
    return rep.exit_code;
}

int cmd_hfunction(const CliConfig& cfg, std::ostream& out) {
    Ode2 ode = ode_from_config(cfg);
    SearchOptions opt = search_options(cfg);
    Report rep = base_report(ode, opt);
    auto found = search_stage(ode, opt, rep);
    std::vector<std::string> lines{ode.to_string()};
    Ode1Options oopt;
    oopt.darboux_degree = opt.darboux_degree;
    oopt.seed = opt.seed;
    if (auto set = found.empty() ? std::nullopt : completed_set(ode, found, rep)) {
        for (int en : en_list(opt)) {
            auto t0 = Clock::now();
            Ode1 assoc;
            try {
                assoc = associated_1ode(*set, en);
            } catch (const DegenerateS& e) {
                rep.stages.push_back({"exodes", "skip", e.what(), ms_since(t0)});
                continue;
            }
            rep.associated_odes.push_back(assoc.to_string());
            rep.stages.push_back({"exodes", "ok", assoc.to_string(), ms_since(t0)});
            t0 = Clock::now();
            auto hs = solve_1ode(assoc, oopt);
            if (!hs) {
                rep.stages.push_back({"hfunction", "fail", "no closed-form solution found",
                                      ms_since(t0)});
                lines.push_back("1ODE[" + std::to_string(en) + "]: " + assoc.to_string() +
                                "   (unsolved)");
                continue;
            }
            rep.h_functions.push_back(hs->H.to_string());
            rep.stages.push_back(
                {"hfunction", "ok", hs->H.to_string() + " (" + hs->method + ")", ms_since(t0)});
            lines.push_back("1ODE[" + std::to_string(en) + "]: " + assoc.to_string());
            lines.push_back("H[" + std::to_string(en) + "] = " + hs->H.to_string() + "   (" +
                            hs->method + ")");
        }
    }
    rep.exit_code = rep.h_functions.empty() ? 1 : 0;
    if (rep.exit_code != 0) lines.push_back("no H-function found");
    emit(cfg, rep, out, lines);
    return rep.exit_code;
}

int cmd_pdeassol(const CliConfig& cfg, std::ostream& out) {
    Ode2 ode = ode_from_config(cfg);
    SearchOptions opt = search_options(cfg);
    Report rep = base_report(ode, opt);
    auto found = search_stage(ode, opt, rep);
    std::vector<std::string> lines{ode.to_string()};
    Ode1Options oopt;
    oopt.darboux_degree = opt.darboux_degree;
    oopt.seed = opt.seed;
    if (auto set = found.empty() ? std::nullopt : completed_set(ode, found, rep)) {
        for (int en : en_list(opt)) {
            auto t0 = Clock::now();
            Ode1 assoc;
            try {
                assoc = associated_1ode(*set, en);
            } catch (const DegenerateS& e) {
                rep.stages.push_back({"exodes", "skip", e.what(), ms_since(t0)});
                continue;
            }
            rep.associated_odes.push_back(assoc.to_string());
            rep.stages.push_back({"exodes", "ok", assoc.to_string(), ms_since(t0)});
            t0 = Clock::now();
            auto hs = solve_1ode(assoc, oopt);
            if (!hs) {
                rep.stages.push_back({"hfunction", "fail", "no closed-form solution found",
                                      ms_since(t0)});
                continue;
            }
            rep.h_functions.push_back(hs->H.to_string());
            rep.stages.push_back(
                {"hfunction", "ok", hs->H.to_string() + " (" + hs->method + ")", ms_since(t0)});
            lines.push_back("H[" + std::to_string(en) + "] = " + hs->H.to_string());
            t0 = Clock::now();
            Reduction red;
            try {
                red = reduce_characteristic(ode, hs->H, en);
            } catch (const EliminationFailed& e) {
                rep.stages.push_back({"pdeassol", "fail", e.what(), ms_since(t0)});
                lines.push_back("characteristic reduction failed: " + std::string(e.what()));
                continue;
            }
            rep.reduced_ode = red.reduced.to_string();
            lines.push_back("characteristic 1ODE: " + red.reduced.to_string());
            std::string fnote = "H is already a first integral";
            if (!red.reduced.rhs.is_zero()) {
                auto fs = solve_1ode(red.reduced, oopt);
                if (!fs) {
                    rep.stages.push_back({"pdeassol", "fail",
                                          red.reduced.to_string() + "; reduced equation unsolved",
                                          ms_since(t0)});
                    lines.push_back("reduced equation unsolved");
                    continue;
                }
                fnote = fs->H.to_string() + " (" + fs->method + ")";
                lines.push_back("F = " + fs->H.to_string());
            } else {
                lines.push_back("F = " + var_name(red.hvar));
            }
            rep.stages.push_back(
                {"pdeassol", "ok", red.reduced.to_string() + "; " + fnote, ms_since(t0)});
        }
    }
    rep.exit_code = rep.reduced_ode.empty() ? 1 : 0;
    if (rep.exit_code != 0) lines.push_back("no characteristic reduction available");
    emit(cfg, rep, out, lines);
    return rep.exit_code;
}

int cmd_invade(const CliConfig& cfg, std::ostream& out) {
    Ode2 ode = ode_from_config(cfg);
    SearchOptions opt = search_options(cfg);
    Report rep = invade(ode, opt);
    std::vector<std::string> lines{ode.to_string()};
    for (auto& st : rep.stages) {
        std::string line = "[" + st.name + "] " + st.status;
        if (!st.output.empty()) line += ": " + st.output;
        line += " (" + std::to_string(st.millis) + " ms)";
        lines.push_back(line);
    }
    for (auto& l : s_lines(rep)) lines.push_back(l);
    if (rep.exit_code == 0) {
        lines.push_back("I = " + rep.first_integral);
        lines.push_back("verified: " + rep.verification.method + ", " +
                        std::to_string(rep.verification.points) + " points, max residual " +
                        residual_str(rep.verification.max_abs_residual));
    } else {
        lines.push_back("no verified first integral found");
    }
    emit(cfg, rep, out, lines);
    return rep.exit_code;
}

int cmd_verify(const CliConfig& cfg, std::ostream& out) {
    if (cfg.integral.empty()) throw UsageError("verify needs --integral");
    Ode2 ode = ode_from_config(cfg);
    SearchOptions opt = search_options(cfg);
    Report rep = base_report(ode, opt);
    Expr I = parse_expr(cfg.integral);
    auto t0 = Clock::now();
    VerifyRecord rec = verify_first_integral(ode, I, cfg.seed, 100, prec_from_digits(cfg.precision_digits));
    rep.first_integral = I.to_string();
    rep.verification = rec;
    rep.exit_code = rec.passed ? 0 : 1;
    rep.stages.push_back({"verify", rec.passed ? "ok" : "fail", I.to_string(), ms_since(t0)});
    std::string line = "Dx[I] " + std::string(rec.passed ? "vanishes" : "does not vanish") + " (" +
                       rec.method;
    if (rec.method == "numeric")
        line += ", " + std::to_string(rec.points) + " points, max residual " +
                residual_str(rec.max_abs_residual);
    line += ")";
    emit(cfg, rep, out, {ode.to_string(), line});
    return rep.exit_code;
}

int cmd_gensol(const CliConfig& cfg, std::ostream& out) {
    Ode2 ode = ode_from_config(cfg);
    SearchOptions opt = search_options(cfg);
    Report rep;
    std::optional<Expr> I;
    if (!cfg.integral.empty()) {
        rep = base_report(ode, opt);
        I = parse_expr(cfg.integral);
        rep.first_integral = I->to_string();
    } else {
        rep = invade(ode, opt);
        if (rep.exit_code == 0) I = parse_expr(rep.first_integral);
    }
    std::vector<std::string> lines{ode.to_string()};
    auto t0 = Clock::now();
    std::optional<Expr> sol;
    if (I) sol = gensol(ode, *I, cfg.seed);
    if (sol) {
        rep.stages.push_back({"gensol", "ok", sol->to_string(), ms_since(t0)});
        rep.exit_code = 0;
        lines.push_back("I = " + rep.first_integral);
        lines.push_back("general solution: " + sol->to_string() + " = C2");
    } else {
        rep.stages.push_back({"gensol", "fail",
                              I ? "no explicit general solution found" : "no first integral",
                              ms_since(t0)});
        rep.exit_code = 1;
        lines.push_back(I ? "no explicit general solution found"
                          : "no first integral to solve from");
    }
    emit(cfg, rep, out, lines);
    return rep.exit_code;
}

bool cross_equal(const RatFunc& a, const RatFunc& b) {
    return (a.num() * b.den() - b.num() * a.den()).is_zero();
}

} // namespace

Ode2 ode_from_config(const CliConfig& cfg) {
    bool has_mn = !cfg.m_text.empty() || !cfg.n_text.empty();
    bool has_src = !cfg.ode_source.empty();
    if (has_mn && has_src) throw UsageError("give either an ODE argument or --M/--N, not both");
    if (has_mn) {
        if (cfg.m_text.empty() || cfg.n_text.empty())
            throw UsageError("--M and --N must be given together");
        return Ode2(parse_poly(cfg.m_text), parse_poly(cfg.n_text));
    }
    if (!has_src) throw UsageError("no ODE given (argument or --M/--N)");
    std::string text = cfg.ode_source;
    std::error_code ec;
    if (std::filesystem::is_regular_file(text, ec)) text = slurp(text);
    return Ode2(parse_ratfunc(rhs_of(text)));
}

std::vector<CorpusEntry> load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read corpus file " + path);
    std::vector<CorpusEntry> entries;
    std::set<std::string> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
            CorpusEntry e;
            e.id = j.at("id").get<std::string>();
            e.m_text = j.at("M").get<std::string>();
            e.n_text = j.at("N").get<std::string>();
            if (j.count("expected_s1")) e.expected_s1 = j["expected_s1"].get<std::string>();
            if (j.count("expected_s2")) e.expected_s2 = j["expected_s2"].get<std::string>();
            if (j.count("expected_s3")) e.expected_s3 = j["expected_s3"].get<std::string>();
            if (j.count("expected_I")) e.expected_i = j["expected_I"].get<std::string>();
            if (j.count("expected_R")) e.expected_r = j["expected_R"].get<std::string>();
            if (j.count("expected_deg")) e.expected_deg = j["expected_deg"].get<int>();
            if (j.count("options"))
                for (auto& [k, v] : j["options"].items())
                    e.options[k] = v.is_string() ? v.get<std::string>() : v.dump();
            if (!seen.insert(e.id).second)
                throw UsageError("duplicate corpus id " + e.id);
            entries.push_back(std::move(e));
        } catch (const nlohmann::json::exception& ex) {
            throw UsageError("corpus line " + std::to_string(lineno) + ": " + ex.what());
        }
    }
    return entries;
}

CorpusOutcome check_corpus_entry(const CorpusEntry& entry, std::uint64_t seed) {
    CorpusOutcome res;
    res.id = entry.id;
    res.s_check = res.i_check = res.r_check = "-";
    auto t0 = Clock::now();
    bool ok = true;
    try {
        Ode2 ode(parse_poly(entry.m_text), parse_poly(entry.n_text));
        SearchOptions opt;
        opt.seed = seed;
        int sn = 1;
        if (auto it = entry.options.find("sn"); it != entry.options.end()) sn = std::stoi(it->second);
        opt.sn = sn;
        if (auto it = entry.options.find("deg"); it != entry.options.end())
            opt.deg = std::stoi(it->second);
        if (auto it = entry.options.find("den"); it != entry.options.end())
            opt.den = parse_poly(it->second);
        const std::string& want_text =
            sn == 1 ? entry.expected_s1 : sn == 2 ? entry.expected_s2 : entry.expected_s3;

        std::optional<SFound> hit;
        if (!want_text.empty()) {
            RatFunc want = parse_ratfunc(want_text);
            auto found = sfunction_search(ode, opt);
            for (auto& f : found)
                if (f.k == sn && cross_equal(f.s, want)) {
                    hit = f;
                    break;
                }
            if (!hit) {
                res.s_check = "fail: no matching S";
                ok = false;
            } else if (entry.expected_deg && hit->degree != *entry.expected_deg) {
                res.s_check = "fail: matched at ansatz degree " + std::to_string(hit->degree) +
                              ", expected " + std::to_string(*entry.expected_deg);
                ok = false;
            } else {
                res.s_check = "ok";
            }
        }

        if (ok && !entry.expected_i.empty()) {
            SearchOptions iopt = opt;
            if (hit && hit->degree > 0) iopt.deg = hit->degree;
            Report rep = invade(ode, iopt);
            if (rep.exit_code != 0) {
                res.i_check = "fail: no verified first integral";
                ok = false;
            } else if (functionally_dependent(parse_expr(rep.first_integral),
                                              parse_expr(entry.expected_i), seed)) {
                res.i_check = "ok";
            } else {
                res.i_check = "fail: found integral independent of the expected one";
                ok = false;
            }
        }

        if (!entry.expected_r.empty() && !want_text.empty() && sn == 1) {
            auto rec = verify_compatibility(ode, parse_expr(entry.expected_r),
                                            parse_ratfunc(want_text), seed);
            if (rec.passed) {
                res.r_check = "ok";
            } else {
                res.r_check = "fail: residuals above tolerance";
                ok = false;
            }
        }
        res.passed = ok && (res.s_check != "-" || res.i_check != "-" || res.r_check != "-");
    } catch (const std::exception& e) {
        res.passed = false;
        res.note = e.what();
    }
    res.millis = ms_since(t0);
    return res;
}

int corpus_run(const std::string& path, std::ostream& out, std::ostream& err, int jobs,
               std::uint64_t seed, const std::string& output) {
    std::vector<CorpusEntry> entries;
    try {
        entries = load_corpus(path);
    } catch (const std::exception& e) {
        err << "corpus error: " << e.what() << "\n";
        return 2;
    }
    int n = static_cast<int>(entries.size());
    unsigned hw = std::thread::hardware_concurrency();
    int workers = jobs > 0 ? jobs : static_cast<int>(hw ? std::min(hw, 8u) : 1u);
    workers = std::max(1, std::min(workers, std::max(n, 1)));

    std::vector<CorpusOutcome> results(n);
    std::atomic<int> next{0};
    auto work = [&] {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= n) return;
            results[i] = check_corpus_entry(entries[i], seed);
        }
    };
    std::vector<std::thread> pool;
    for (int i = 1; i < workers; ++i) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();

    int passed = 0;
    for (auto& r : results)
        if (r.passed) ++passed;

    if (output == "json") {
        nlohmann::json j;
        j["entries"] = nlohmann::json::array();
        for (auto& r : results) {
            j["entries"].push_back({{"id", r.id},
                                    {"passed", r.passed},
                                    {"s", r.s_check},
                                    {"i", r.i_check},
                                    {"r", r.r_check},
                                    {"note", r.note},
                                    {"millis", r.millis}});
        }
        j["passed"] = passed;
        j["total"] = n;
        out << j.dump(2) << "\n";
    } else {
        for (auto& r : results) {
            out << std::left << std::setw(12) << r.id << (r.passed ? "pass" : "FAIL")
                << "   S " << r.s_check << "   I " << r.i_check << "   R " << r.r_check << "   "
                << r.millis << " ms";
            if (!r.note.empty()) out << "   " << r.note;
            out << "\n";
        }
        out << passed << "/" << n << " passed\n";
    }
    return passed == n ? 0 : 1;
}

int dispatch(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.subcommand == "dx") return cmd_dx(cfg, out);
        if (cfg.subcommand == "sfunction") return cmd_sfunction(cfg, out);
        if (cfg.subcommand == "exodes") return cmd_exodes(cfg, out);
        if (cfg.subcommand == "hfunction") return cmd_hfunction(cfg, out);
        if (cfg.subcommand == "pdeassol") return cmd_pdeassol(cfg, out);
        if (cfg.subcommand == "invade") return cmd_invade(cfg, out);
        if (cfg.subcommand == "verify") return cmd_verify(cfg, out);
        if (cfg.subcommand == "gensol") return cmd_gensol(cfg, out);
        if (cfg.subcommand == "corpus")
            return corpus_run(cfg.corpus_path, out, err, cfg.jobs, cfg.seed, cfg.output);
        throw UsageError("unknown subcommand '" + cfg.subcommand + "'");
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CliConfig cfg;
    CLI::App app{"Liouvillian first integrals of rational second order ODEs z'' = phi(x, y, y')"};
    app.require_subcommand(1);

    auto* s_dx = app.add_subcommand("dx", "apply the total derivative along solutions");
    s_dx->add_option("--expr", cfg.expr, "expression to differentiate")->required();
    auto* s_sf = app.add_subcommand("sfunction", "search for an S-function");
    auto* s_ex = app.add_subcommand("exodes", "construct the associated first order equations");
    auto* s_hf = app.add_subcommand("hfunction", "solve an associated first order equation");
    auto* s_pa = app.add_subcommand("pdeassol",
                                    "reduce the characteristic equation linking I to an H-function");
    auto* s_in = app.add_subcommand("invade", "full first integral search");
    auto* s_gs = app.add_subcommand("gensol", "general solution from a first integral");
    s_gs->add_option("--integral", cfg.integral, "start from this first integral");
    auto* s_vf = app.add_subcommand("verify", "check a candidate first integral");
    s_vf->add_option("--integral", cfg.integral, "the candidate first integral")->required();
    auto* s_co = app.add_subcommand("corpus", "run a regression corpus");
    s_co->add_option("path", cfg.corpus_path, "newline-delimited JSON corpus file")->required();
    s_co->add_option("--jobs", cfg.jobs, "worker threads (0 = one per core, capped at 8)")
        ->capture_default_str();

    for (auto* s : {s_dx, s_sf, s_ex, s_hf, s_pa, s_in, s_gs, s_vf}) {
        s->add_option("ode", cfg.ode_source,
                      "2ODE as \"z' = <rational expression in x, y, z>\" or a file containing one");
        s->add_option("--M", cfg.m_text, "numerator of z' (polynomial in x, y, z)");
        s->add_option("--N", cfg.n_text, "denominator of z'");
        s->add_option("--sn", cfg.sn, "S-function index: 1, 2, 3 or all")->capture_default_str();
        s->add_option("--en", cfg.en, "associated equation index: 1, 2, 3 or all")
            ->capture_default_str();
        s->add_option_function<int>(
            "--deg", [&cfg](const int& v) { cfg.deg = v; },
            "fixed ansatz degree instead of the default iteration");
        s->add_option("--den", cfg.den, "denominator override for the S-function ansatz");
        s->add_option("--sfun", cfg.sfun, "check this S-function instead of searching");
        s->add_option("--digits", cfg.precision_digits,
                      "minimum decimal working precision for verification")
            ->capture_default_str();
    }
    for (auto* s : {s_dx, s_sf, s_ex, s_hf, s_pa, s_in, s_gs, s_vf, s_co}) {
        s->add_option("--output", cfg.output, "report format: text or json")
            ->check(CLI::IsMember({"text", "json"}))
            ->capture_default_str();
        s->add_option("--seed", cfg.seed, "seed for the verification sample points")
            ->capture_default_str();
    }

    try {
        app.parse(argc, const_cast<char**>(argv));
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    cfg.subcommand = app.get_subcommands().front()->get_name();
    return dispatch(cfg, out, err);
}

} // namespace sfint::cli
