#pragma once

#include "sfint/invade.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sfint::cli {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CliConfig {
    std::string subcommand;
    std::string ode_source;  // "z' = <expr>", a bare expression, or a file path
    std::string m_text, n_text;
    std::string sn = "1";
    std::string en = "1";
    std::optional<int> deg;
    std::string den;
    std::string sfun;
    std::string expr;      // dx: the function to differentiate
    std::string integral;  // verify (and optionally gensol): a first integral
    int precision_digits = 50;
    std::string output = "text";
    std::uint64_t seed = 0;
    std::string corpus_path;
    int jobs = 0;  // corpus: worker threads, 0 = one per core
};

// Parse argv and dispatch.  0 = success / verified, 1 = clean failure
// (nothing found, verification failed), 2 = usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// The part after flag parsing, for driving the front end from tests.
int dispatch(const CliConfig& cfg, std::ostream& out, std::ostream& err);

// Builds the 2ODE named by cfg (inline text, file, or --M/--N pair).
Ode2 ode_from_config(const CliConfig& cfg);

struct CorpusEntry {
    std::string id;
    std::string m_text, n_text;
    std::string expected_s1, expected_s2, expected_s3;
    std::string expected_i;
    std::string expected_r;
    std::optional<int> expected_deg;
    std::map<std::string, std::string> options;
};

struct CorpusOutcome {
    std::string id;
    bool passed = false;
    std::string s_check;  // "ok", "fail: ...", "-" when not applicable
    std::string i_check;
    std::string r_check;
    std::string note;  // unexpected error text, empty otherwise
    long long millis = 0;
};

std::vector<CorpusEntry> load_corpus(const std::string& path);
CorpusOutcome check_corpus_entry(const CorpusEntry& entry, std::uint64_t seed);

// Runs every entry (in parallel when jobs != 1), prints one line per entry
// in file order plus a tally.  Exit 0 iff all entries pass.
int corpus_run(const std::string& path, std::ostream& out, std::ostream& err, int jobs = 0,
               std::uint64_t seed = 0, const std::string& output = "text");

} // namespace sfint::cli
