#pragma once

#include "sfint/report.hpp"
#include "sfint/sfunction.hpp"

namespace sfint {

// Full pipeline: search an S-function, complete the set, pick the requested
// associated equation(s), solve for an H-function, reduce along the
// characteristic, solve the reduced equation, compose and verify.  The first
// composition that verifies wins.  A Report is always returned; exit_code 0
// means a verified first integral was found.
Report invade(const Ode2& ode, const SearchOptions& opt = {});

} // namespace sfint
