#pragma once

#include "sfint/ode.hpp"
#include "sfint/ratint.hpp"

#include <optional>

namespace sfint {

// H is constant along solutions of the 1ODE: H_t + rhs * H_u = 0.
struct Ode1Solution {
    Expr H;
    std::string method;
};

struct Ode1Options {
    int darboux_degree = 3; // ansatz degree cap in the integrating factor search
    uint64_t seed = 0;
};

// Solves du/dt = rhs by a chain of strategies: linear in the dependent
// variable, separable, Bernoulli, exact differential form, then a Darboux
// integrating factor search.  Every strategy is also tried with the roles
// of t and u swapped.  Candidates are checked numerically before being
// returned; nothing comes back when all strategies fail.
std::optional<Ode1Solution> solve_1ode(const Ode1& ode, const Ode1Options& opt = {});

// The integrating factor stage alone: searches mu = prod p_i^{n_i} *
// exp(A/B) built from Darboux polynomials of the flow field, then
// integrates mu * (num dt - den du) to a potential, falling back to an
// inert integral representation when no closed form fits.
std::optional<Ode1Solution> darboux_integrating_factor(const Ode1& ode,
                                                       const Ode1Options& opt = {});

// Spot check: H_t + rhs H_u vanishes at `points` random admissible points.
bool verify_ode1_integral(const Ode1& ode, const Expr& H, uint64_t seed = 0, int points = 10);

} // namespace sfint
