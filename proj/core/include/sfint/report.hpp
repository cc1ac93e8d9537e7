#pragma once

#include "sfint/verify.hpp"

#include <map>
#include <string>
#include <vector>

namespace sfint {

struct StageRecord {
    std::string name;
    std::string status; // "ok", "fail", "skip"
    std::string output;
    long long millis = 0;

    bool operator==(const StageRecord&) const = default;
};

// Machine-readable account of one pipeline run.  Serialization is stable:
// two runs with the same input, options and seed differ at most in the
// millis fields.
struct Report {
    std::string ode_m, ode_n;
    std::map<std::string, std::string> options;
    std::vector<StageRecord> stages;
    std::map<std::string, std::string> s_functions;
    std::vector<std::string> associated_odes;
    std::vector<std::string> h_functions;
    std::string reduced_ode;
    std::string first_integral;
    VerifyRecord verification;
    int exit_code = 1;

    bool operator==(const Report&) const = default;

    std::string to_json(int indent = 2) const;
    static Report from_json(const std::string& text);

    // the same document with every millis field zeroed, for comparisons
    Report without_timing() const;
};

} // namespace sfint
