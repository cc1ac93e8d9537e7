#pragma once

#include "sfint/ratfunc.hpp"

namespace sfint {

// Rational second order ODE written as z' = M(x,y,z)/N(x,y,z) with y' = z.
// M and N are kept coprime, N with integer coprime coefficients and positive
// leading coefficient in graded lex order, so equal equations compare equal.
class Ode2 {
public:
    Ode2(const Poly& M, const Poly& N);
    explicit Ode2(const RatFunc& phi) : Ode2(phi.num(), phi.den()) {}

    const Poly& M() const { return M_; }
    const Poly& N() const { return N_; }
    RatFunc phi() const { return RatFunc(M_, N_); }

    // default total degree bound for polynomial searches
    int degree_bound() const;

    std::string to_string() const;

private:
    Poly M_, N_;
};

// First order ODE du/dt = rhs(t, u) with rational right hand side. The
// associated equations of a 2ODE carry the third coordinate along as a
// symbolic parameter; param is -1 when there is none (reduced equations).
struct Ode1 {
    VarId indep;
    VarId dep;
    RatFunc rhs;
    VarId param = -1;

    std::string to_string() const;
};

} // namespace sfint
