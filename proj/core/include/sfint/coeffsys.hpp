#pragma once

#include "sfint/poly.hpp"

namespace sfint {

// Collects a residual polynomial by the monomials in x, y, z; each
// coefficient (a polynomial in the remaining unknowns) must vanish.  The
// returned equations are primitive with positive leading coefficient,
// deduplicated, ordered by the graded lex rank of the monomial they came
// from, highest first.
std::vector<Poly> extract_system(const Poly& residual);

// Same, but collecting over an arbitrary variable set.
std::vector<Poly> extract_system(const Poly& residual, const std::vector<VarId>& vars);

} // namespace sfint
