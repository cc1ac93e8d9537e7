#pragma once

#include "sfint/poly.hpp"

#include <functional>
#include <map>
#include <random>

namespace sfint {

struct SamplingFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using RatPoint = std::map<VarId, Rat>;
using PointGuard = std::function<bool(const RatPoint&)>;

// Deterministic rational test points: denominators from 1 to 100, values in
// [-2, 2].  Guards are exact rational predicates; a candidate failing any
// guard is discarded and redrawn.
class PointSampler {
public:
    explicit PointSampler(uint64_t seed = 0) : rng_(seed) {}

    Rat rand_rat();
    RatPoint point(const std::vector<VarId>& vars);
    RatPoint point(const std::vector<VarId>& vars, const std::vector<PointGuard>& guards,
                   int max_tries = 2000);

private:
    std::mt19937_64 rng_;
};

// |p(point)| >= margin, evaluated exactly
PointGuard nonvanishing_guard(const Poly& p, const Rat& margin = Rat(1, 1000));

} // namespace sfint
