#include "sfint/residual.hpp"

namespace sfint {

namespace {

Poly zp() { return Poly::variable(var_z()); }

} // namespace

Poly residual_s1(const Ode2& ode, const Poly& P, const Poly& E) {
    const Poly &M = ode.M(), &N = ode.N();
    Poly Mz = M.derivative(var_z()), My = M.derivative(var_y());
    Poly Nz = N.derivative(var_z()), Ny = N.derivative(var_y());
    if (E == N) {
        Poly Nx = N.derivative(var_x());
        return -(P * P) - (Nx + zp() * Ny + Mz) * P + dx_cleared(ode, P) - M * Ny + My * N;
    }
    Poly DP = dx_cleared(ode, P), DE = dx_cleared(ode, E);
    return N * (DP * E - P * DE) - N * N * P * P - (Mz * N - M * Nz) * P * E +
           (My * N - M * Ny) * E * E;
}

Poly residual_s2(const Ode2& ode, const Poly& Q, const Poly& E) {
    const Poly &M = ode.M(), &N = ode.N();
    Poly Mz = M.derivative(var_z()), Mx = M.derivative(var_x());
    Poly Nz = N.derivative(var_z()), Nx = N.derivative(var_x());
    Poly z = zp();
    if (E == N) {
        Poly Ny = N.derivative(var_y());
        return Q * Q - (Ny * z * z + (Mz + Nx) * z - M) * Q -
               (M * Nx - Mx * N - dx_cleared(ode, Q)) * z;
    }
    Poly DQ = dx_cleared(ode, Q), DE = dx_cleared(ode, E);
    return z * N * (DQ * E - Q * DE) + N * N * Q * Q - z * (Mz * N - M * Nz) * Q * E +
           M * N * Q * E + z * (Mx * N - M * Nx) * E * E;
}

Poly residual_s3(const Ode2& ode, const Poly& T, const Poly& E) {
    const Poly &M = ode.M(), &N = ode.N();
    Poly Mx = M.derivative(var_x()), My = M.derivative(var_y());
    Poly Nx = N.derivative(var_x()), Ny = N.derivative(var_y());
    Poly DT = dx_cleared(ode, T), DE = dx_cleared(ode, E);
    return M * (DT * E - T * DE) -
           (T + zp() * E) * ((Mx * N - M * Nx) * E - (My * N - M * Ny) * T);
}

Poly residual_s(const Ode2& ode, int sn, const Poly& numer, const Poly& denom) {
    switch (sn) {
    case 1:
        return residual_s1(ode, numer, denom);
    case 2:
        return residual_s2(ode, numer, denom);
    case 3:
        return residual_s3(ode, numer, denom);
    }
    throw std::invalid_argument("S-function index must be 1, 2 or 3");
}

RatFunc s1_equation_residual(const Ode2& ode, const RatFunc& S) {
    RatFunc phi = ode.phi();
    RatFunc phi_z = phi.derivative(var_z());
    RatFunc phi_y = phi.derivative(var_y());
    return dx_total(ode, S) - S * S - phi_z * S + phi_y;
}

} // namespace sfint
