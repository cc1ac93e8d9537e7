#pragma once

#include "sfint/expr.hpp"
#include "sfint/ode.hpp"

namespace sfint {

// Total derivative with respect to x along solutions:
//   Dx = d/dx + z d/dy + (M/N) d/dz
// and its denominator-cleared companion
//   D  = N d/dx + z N d/dy + M d/dz.

Poly dx_cleared(const Ode2& ode, const Poly& p);
RatFunc dx_total(const Ode2& ode, const RatFunc& f);
Expr dx_total(const Ode2& ode, const Expr& e);

} // namespace sfint
