#include "sfint/ansatz.hpp"

#include <algorithm>

namespace sfint {

std::vector<Mono> monomials_of_degree(int d) {
    std::vector<Mono> out;
    for (int ex = d; ex >= 0; --ex)
        for (int ey = d - ex; ey >= 0; --ey) {
            int ez = d - ex - ey;
            Mono m = Mono::one();
            if (ex) m = m.mul(Mono::var(var_x(), ex));
            if (ey) m = m.mul(Mono::var(var_y(), ey));
            if (ez) m = m.mul(Mono::var(var_z(), ez));
            out.push_back(m);
        }
    std::sort(out.begin(), out.end(),
              [](const Mono& a, const Mono& b) { return mono_cmp(a, b, MonoOrder::GrLex) > 0; });
    return out;
}

Ansatz make_ansatz(int degree, const std::string& prefix) {
    Ansatz a;
    int counter = 0;
    for (int d = 0; d <= degree; ++d) {
        for (const Mono& m : monomials_of_degree(d)) {
            VarId u = var_id(prefix + std::to_string(counter++));
            a.unknowns.push_back(u);
            a.poly = a.poly + Poly::term(m, Rat(1)) * Poly::variable(u);
        }
    }
    return a;
}

} // namespace sfint
