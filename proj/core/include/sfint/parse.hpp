#pragma once

#include "sfint/expr.hpp"

#include <stdexcept>

namespace sfint {

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
    size_t position;
};

// Infix grammar with +, -, *, /, ^ (right associative), parentheses, integer
// and decimal literals, variables, and the functions exp, ln and
// Integral(kernel, var).  Exponents must evaluate to rational constants.
Expr parse_expr(const std::string& text);

// Same grammar, restricted: the result must be a polynomial / rational
// function of the variables, otherwise a ParseError is raised.
Poly parse_poly(const std::string& text);
RatFunc parse_ratfunc(const std::string& text);

} // namespace sfint
