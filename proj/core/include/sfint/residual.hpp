#pragma once

#include "sfint/dx.hpp"

namespace sfint {

// Polynomial residuals of the determining equations for the three
// S-functions written with a polynomial numerator over a chosen denominator.
// A candidate numerator solves the determining equation exactly when the
// residual is the zero polynomial.
//
// With D = N d/dx + z N d/dy + M d/dz:
//
//  S1 = P/E:  N(D[P]E - P D[E]) - N^2 P^2 - (Mz N - M Nz) P E + (My N - M Ny) E^2
//  S2 = Q/E:  z N(D[Q]E - Q D[E]) + N^2 Q^2 - z(Mz N - M Nz) Q E + M N Q E
//             + z(Mx N - M Nx) E^2
//  S3 = T/E:  M(D[T]E - T D[E]) - (T + z E)((Mx N - M Nx)E - (My N - M Ny)T)
//
// When E = N the first two reduce to N^2 times a smaller determining
// polynomial; that smaller form is returned in that case so reported
// coefficient systems stay readable:
//
//  S1: -P^2 - (Nx + z Ny + Mz)P + D[P] - M Ny + My N
//  S2:  Q^2 - (Ny z^2 + (Mz + Nx)z - M)Q - (M Nx - Mx N - D[Q])z
Poly residual_s1(const Ode2& ode, const Poly& P, const Poly& E);
Poly residual_s2(const Ode2& ode, const Poly& Q, const Poly& E);
Poly residual_s3(const Ode2& ode, const Poly& T, const Poly& E);

Poly residual_s(const Ode2& ode, int sn, const Poly& numer, const Poly& denom);

// Residual of Dx[S] = S^2 + phi_z S - phi_y for a fully formed S1 candidate,
// cleared of denominators; used to confirm solutions independently.
RatFunc s1_equation_residual(const Ode2& ode, const RatFunc& S);

} // namespace sfint
