#include "sfint/ode.hpp"

#include <sstream>

namespace sfint {

Ode2::Ode2(const Poly& M, const Poly& N) {
    RatFunc f(M, N); // reduces to lowest terms
    if (f.is_zero()) {
        M_ = Poly();
        N_ = Poly(Rat(1));
    } else {
        auto [cm, um] = f.num().primitive();
        auto [cn, un] = f.den().primitive();
        Rat r = cm / cn;
        M_ = um.scaled(Rat(mpz_class(r.num())));
        N_ = un.scaled(Rat(mpz_class(r.den())));
    }
    for (const Poly* p : {&M_, &N_})
        for (VarId v : p->vars())
            if (v != var_x() && v != var_y() && v != var_z())
                throw std::invalid_argument("equation may only involve x, y and z; found " +
                                            var_name(v));
}

int Ode2::degree_bound() const {
    return std::max(M_.total_degree() - 1, N_.total_degree());
}

std::string Ode2::to_string() const {
    std::ostringstream os;
    os << "z' = " << RatFunc(M_, N_);
    return os.str();
}

std::string Ode1::to_string() const {
    std::ostringstream os;
    os << "d" << var_name(dep) << "/d" << var_name(indep) << " = " << rhs;
    return os.str();
}

} // namespace sfint
