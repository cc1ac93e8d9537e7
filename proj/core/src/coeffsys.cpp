#include "sfint/coeffsys.hpp"

namespace sfint {

std::vector<Poly> extract_system(const Poly& residual, const std::vector<VarId>& vars) {
    auto grouped = residual.collect(vars);
    std::vector<Poly> out;
    for (auto& [mono, coeff] : grouped) { // map is graded lex descending
        if (coeff.is_zero()) continue;
        Poly eq = coeff.primitive().second;
        bool seen = false;
        for (auto& e : out)
            if (e == eq) {
                seen = true;
                break;
            }
        if (!seen) out.push_back(eq);
    }
    return out;
}

std::vector<Poly> extract_system(const Poly& residual) {
    return extract_system(residual, {var_x(), var_y(), var_z()});
}

} // namespace sfint
