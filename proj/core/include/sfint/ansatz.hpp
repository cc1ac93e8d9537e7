#pragma once

#include "sfint/poly.hpp"

namespace sfint {

// Polynomial with undetermined coefficients: all monomials in x, y, z of
// total degree at most `degree`, one fresh unknown per monomial.  Unknowns
// are numbered by ascending monomial degree, graded lex descending inside a
// degree, so degree 1 with prefix "a" reads a0 + a1*x + a2*y + a3*z.
struct Ansatz {
    Poly poly;
    std::vector<VarId> unknowns;
};

Ansatz make_ansatz(int degree, const std::string& prefix);

// monomials of total degree exactly d in x, y, z, graded lex descending
std::vector<Mono> monomials_of_degree(int d);

} // namespace sfint
