#include "sfint/dx.hpp"

namespace sfint {

Poly dx_cleared(const Ode2& ode, const Poly& p) {
    Poly zpoly = Poly::variable(var_z());
    return ode.N() * p.derivative(var_x()) + zpoly * ode.N() * p.derivative(var_y()) +
           ode.M() * p.derivative(var_z());
}

RatFunc dx_total(const Ode2& ode, const RatFunc& f) {
    RatFunc zf = RatFunc::variable(var_z());
    return f.derivative(var_x()) + zf * f.derivative(var_y()) + ode.phi() * f.derivative(var_z());
}

Expr dx_total(const Ode2& ode, const Expr& e) {
    Expr zf = Expr::var(var_z());
    Expr phi = Expr::from_ratfunc(ode.phi());
    return e.derivative(var_x()) + zf * e.derivative(var_y()) + phi * e.derivative(var_z());
}

} // namespace sfint
