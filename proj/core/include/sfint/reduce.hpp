#pragma once

#include "sfint/ode.hpp"
#include "sfint/expr.hpp"

#include <vector>

namespace sfint {

struct EliminationFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConstantResult : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Reduction {
    Ode1 reduced;      // dh/dt = rhs(t, h), no parameter
    VarId hvar;
    VarId eliminated;  // variable (or placeholder of a transcendental operand)
                       // solved out of h = H; -1 when Dx[H] was already zero
    Expr substitution; // the value it was replaced with
};

// Solves h = H(x,y,z) for one variable (z, then y, then x, then a
// transcendental operand), substitutes into Dx[H] and divides by the
// characteristic weight of the k-th reduction (1 for t = x, z for t = y,
// phi for t = z).  The result must close up as a rational function of
// (t, h) alone; otherwise the next elimination target is tried.
Reduction reduce_characteristic(const Ode2& ode, const Expr& H, int k);

// I = f(t, h) with h replaced by H.  Direct substitution is returned alone
// when it is legal; when it would capture an integration variable of an
// inert part of f, the composition is rebuilt as a line integral along each
// coordinate axis instead (valid when the base slice is constant, which the
// caller's verification decides).  Throws ConstantResult when substitution
// yields a variable-free expression.
std::vector<Expr> compose_first_integral(const Ode2& ode, const Expr& f, const Expr& H, int k,
                                         VarId hvar, const RatFunc& reduced_rhs);

} // namespace sfint
