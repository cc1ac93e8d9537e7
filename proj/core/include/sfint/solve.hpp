#pragma once

#include "sfint/ratfunc.hpp"

#include <map>
#include <optional>

namespace sfint {

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SolveOptions {
    long max_reductions = 5000; // polynomial reduction budget per Groebner run
    int max_degree = 20;        // cap on intermediate total degree
    int max_branches = 512;     // cap on case splits
};

// One solution branch: every unknown maps to a rational function of the
// unknowns that remain free, and a free unknown maps to itself.
using Assignment = std::map<VarId, RatFunc>;

// Rational solution branches of eqs = 0 in the given unknowns.  Searches
// rational values and rational parametrizations only; algebraic-irrational
// solutions are out of scope and simply not returned.  Results are verified
// against the input system and come back sorted with the fewest nonzero
// assignments first.  Throws BudgetExceeded when no strategy fits within the
// configured budgets.
std::vector<Assignment> solve_system(const std::vector<Poly>& eqs,
                                     const std::vector<VarId>& unknowns,
                                     const SolveOptions& opt = {});

// Same search, but variables outside `unknowns` ride along as transcendental
// parameters: assignments may contain them, and an equation with no unknown
// left is a contradiction unless it is the zero polynomial.
std::vector<Assignment> solve_parametric(const std::vector<Poly>& eqs,
                                         const std::vector<VarId>& unknowns,
                                         const SolveOptions& opt = {});

// Rational point on a branch: free unknowns go to 0, or to 1 when the zero
// choice makes every assignment vanish or hits a parametrization pole.
std::optional<std::map<VarId, Rat>> specialize(const Assignment& a,
                                               const std::vector<VarId>& unknowns);

// Lex Groebner basis, variables ranked by the canonical variable order (so
// a0 eliminates before a1 and so on).  Interreduced, primitive, sorted by
// ascending leading monomial.
std::vector<Poly> groebner_lex(const std::vector<Poly>& eqs, const SolveOptions& opt = {});

// All rational roots of a univariate polynomial with rational coefficients.
std::vector<Rat> rational_roots(const Poly& p, VarId v);

} // namespace sfint
