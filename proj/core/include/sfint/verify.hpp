#pragma once

#include "sfint/ode.hpp"
#include "sfint/expr.hpp"

#include <cstdint>
#include <string>

namespace sfint {

struct AllPointsDegenerate : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct VerifyRecord {
    std::string method; // "exact" or "numeric"
    int points = 0;
    double max_abs_residual = 0.0;
    bool passed = false;

    bool operator==(const VerifyRecord&) const = default;
};

// Dx[I] must vanish: exactly, when I collapses to a rational function, and
// otherwise at `points` random pole-free rational points with |residual|
// below 1e-30 at the working precision.  The integral must also be
// nonconstant (some gradient component clearly nonzero at a sample point).
// Throws AllPointsDegenerate when no usable sample points exist.
VerifyRecord verify_first_integral(const Ode2& ode, const Expr& I, uint64_t seed = 0,
                                   int points = 100, long prec_bits = 192);

struct CompatRecord {
    double max_residual[3] = {0.0, 0.0, 0.0};
    int points = 0;
    bool passed = false;
};

// Residuals of the integrating-factor compatibility conditions
//   Dx[R] + R(S + phi_z),  S Dx[R] + R(Dx[S] + phi_y),  R_y - (R_z S + R S_z)
// sampled at `points` random points; pass iff all stay below 1e-30.
CompatRecord verify_compatibility(const Ode2& ode, const Expr& R, const RatFunc& S,
                                  uint64_t seed = 0, int points = 50, long prec_bits = 192);

// Rank-1 test of the stacked Jacobian [grad a; grad b] over (x, y, z): all
// three 2x2 minors below tol at `points` random points where both gradients
// are alive.  This is equality up to an invertible function of one variable,
// the right equivalence for first integrals.
bool functionally_dependent(const Expr& a, const Expr& b, uint64_t seed = 0, int points = 20,
                            double tol = 1e-25);

} // namespace sfint
