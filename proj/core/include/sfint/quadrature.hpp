#pragma once

#include "sfint/numeric.hpp"

#include <functional>

namespace sfint {

// Adaptive Gauss-Legendre integration of f over [a, b].  The integrand
// returns a value with error bound; propagated evaluation error and the
// adaptive refinement estimate both feed the result's error field.  Throws
// QuadratureError when refinement stalls, and lets integrand exceptions
// (poles, domain errors) escape.
NumVal integrate(const std::function<NumVal(const BigFloat&)>& f, const BigFloat& a,
                 const BigFloat& b, const EvalOptions& opt);

} // namespace sfint
