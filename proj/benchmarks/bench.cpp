#include "sfint/ansatz.hpp"
#include "sfint/coeffsys.hpp"
#include "sfint/parse.hpp"
#include "sfint/residual.hpp"
#include "sfint/sfunction.hpp"
#include "sfint/solve.hpp"

#include <benchmark/benchmark.h>

using namespace sfint;

namespace {

Ode2 sample_ode() {
    return Ode2(parse_poly("x^5*z - x^4*z^2 - 3*z*x^4 + 4*x^3*z^2 - x*y + x*z + y*z - z^2 - y"),
                parse_poly("x^5 - y"));
}

void bm_poly_mul(benchmark::State& state) {
    Poly a = parse_poly("(x + 2*y + 3*z + 1)^4");
    Poly b = parse_poly("(x - y + z - 2)^4");
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(bm_poly_mul);

void bm_residual_build(benchmark::State& state) {
    Ode2 ode = sample_ode();
    Ansatz az = make_ansatz(static_cast<int>(state.range(0)), "a");
    for (auto _ : state) benchmark::DoNotOptimize(residual_s(ode, 1, az.poly, ode.N()));
}
BENCHMARK(bm_residual_build)->Arg(1)->Arg(2)->Arg(3);

void bm_coefficient_solve(benchmark::State& state) {
    Ode2 ode = sample_ode();
    Ansatz az = make_ansatz(1, "a");
    auto eqs = extract_system(residual_s(ode, 1, az.poly, ode.N()));
    for (auto _ : state) benchmark::DoNotOptimize(solve_system(eqs, az.unknowns));
}
BENCHMARK(bm_coefficient_solve);

void bm_degree_one_search(benchmark::State& state) {
    Ode2 ode = sample_ode();
    SearchOptions opt;
    for (auto _ : state) benchmark::DoNotOptimize(sfunction_search(ode, opt));
}
BENCHMARK(bm_degree_one_search);

} // namespace

BENCHMARK_MAIN();
