#pragma once

#include "sfint/expr.hpp"
#include "sfint/ode.hpp"

#include <cstdint>
#include <optional>

namespace sfint {

// Best-effort general solution from a verified first integral: solves
// I(x,y,z) = C1 for z when z appears rationally and linearly, then treats
// dy/dx = z(x, y, C1) with the first-order strategy chain (C1 carried as a
// parameter).  When the coefficients are transcendental in x, only the
// y-linear case is handled and the answer is the standard quadrature form
// with inert integrals, intended for display rather than evaluation.
// Empty when no path applies.
std::optional<Expr> gensol(const Ode2& ode, const Expr& I, uint64_t seed = 0);

} // namespace sfint
