#pragma once

#include "sfint/expr.hpp"

#include <optional>

namespace sfint {

// coeff * ln(arg); arg is a polynomial in the integration variable and the
// parameters, primitive with positive leading coefficient.  coeff is free of
// the integration variable but may involve the parameters.
struct LogTerm {
    RatFunc coeff;
    Poly arg;
};

// Antiderivative of a rational function in one variable over the field of
// rational functions in the remaining ones:
//   d/dt (rational_part + sum coeff_i ln(arg_i)) = integrand
// holds exactly in t when `complete` is true; derivatives with respect to
// parameters are only matched up to additive functions of the parameters,
// since log arguments are normalized.  `complete` turns false when the
// logarithmic spectrum needs residues outside the coefficient field; the
// partial data is then not an antiderivative and callers should discard it.
struct RatIntResult {
    RatFunc rational_part;
    std::vector<LogTerm> logs;
    bool complete = true;

    Expr to_expr() const;
};

RatIntResult integrate_rational(const RatFunc& f, VarId t);

// Searches for a rational W with
//   d/dt [ exp(g) * prod v_i^{e_i} * W ] = exp(g) * prod v_i^{e_i} * R,
// that is W' + (g' + sum e_i v_i'/v_i) W = R, by linear algebra over a
// small family of candidate denominators.  Empty when none fits.
std::optional<RatFunc> integrate_exp_multiple(const RatFunc& g,
                                              const std::vector<std::pair<Poly, Rat>>& powers,
                                              const RatFunc& R, VarId t);

// exp(g) * prod arg_i^{c_i} as an expression tree; zero exponents and a zero
// g drop out.
Expr exp_power_expr(const RatFunc& g, const std::vector<std::pair<Poly, Rat>>& powers);

} // namespace sfint
