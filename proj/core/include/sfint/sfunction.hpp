#pragma once

#include "sfint/ode.hpp"
#include "sfint/expr.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace sfint {

struct DegenerateS : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SearchOptions {
    int sn = 1;                   // which S-function to search; 0 = all
    int en = 1;                   // which associated equation to solve; 0 = all
    std::optional<int> deg;       // fixed ansatz degree instead of the 1..n_max loop
    std::optional<Poly> den;      // denominator override (replaces N wholesale)
    std::optional<RatFunc> sfun;  // user-supplied S, checked instead of searched
    int darboux_degree = 3;       // ansatz cap for the integrating-factor fallback
    uint64_t seed = 0;
};

struct SFound {
    int k;
    RatFunc s;
    int degree; // ansatz degree it came from; -1 when user-supplied
};

// Degree-iterated undetermined-coefficient search.  For each requested k the
// ansatz degree runs 1..degree_bound (or exactly opts.deg), the determining
// residual is collected into a coefficient system and every rational branch
// becomes a candidate S_k = P/denom.  The zero numerator is accepted only
// when the residual of 0 vanishes identically.  The first degree with
// accepted branches wins; an empty result means the search failed.  `trace`,
// when given, collects one line per degree tried.
std::vector<SFound> sfunction_search(const Ode2& ode, const SearchOptions& opt,
                                     std::vector<std::string>* trace = nullptr);

struct SFunctionSet {
    std::optional<RatFunc> s1, s2, s3;
    int source = 0; // which member was found directly
};

// Fills the remaining members from one known S via phi = -(S2 + z S1) and
// S3 = S2/S1.  s3 stays empty when S1 is identically zero; a degenerate
// k = 3 input (S3 = -z) throws.
SFunctionSet complete_sfunctions(const Ode2& ode, int k, const RatFunc& s);

// 1ODE_[1]: dz/dy = -S1 (x rides along), 1ODE_[2]: dz/dx = -S2 (y rides
// along), 1ODE_[3]: dy/dx = -S3 (z rides along).  Throws DegenerateS when
// the needed member is missing.
Ode1 associated_1ode(const SFunctionSet& set, int en);
std::array<Ode1, 3> associated_1odes(const SFunctionSet& set);

// Display form exp(integral of -S dx) of the nonlocal symmetry an S1
// defines; purely inert, no evaluation contract.
Expr nonlocal_symmetry_form(const RatFunc& s);

} // namespace sfint
