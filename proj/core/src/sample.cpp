#include "sfint/sample.hpp"

namespace sfint {

Rat PointSampler::rand_rat() {
    std::uniform_int_distribution<long> den_dist(1, 100);
    long den = den_dist(rng_);
    std::uniform_int_distribution<long> num_dist(-2 * den, 2 * den);
    return Rat(num_dist(rng_), den);
}

RatPoint PointSampler::point(const std::vector<VarId>& vars) {
    RatPoint pt;
    for (VarId v : vars) pt[v] = rand_rat();
    return pt;
}

RatPoint PointSampler::point(const std::vector<VarId>& vars, const std::vector<PointGuard>& guards,
                             int max_tries) {
    for (int t = 0; t < max_tries; ++t) {
        RatPoint pt = point(vars);
        bool ok = true;
        for (auto& g : guards)
            if (!g(pt)) {
                ok = false;
                break;
            }
        if (ok) return pt;
    }
    throw SamplingFailed("no admissible test point after " + std::to_string(max_tries) +
                         " attempts");
}

PointGuard nonvanishing_guard(const Poly& p, const Rat& margin) {
    return [p, margin](const RatPoint& pt) {
        Rat v = p.eval(pt);
        return v.abs() >= margin;
    };
}

} // namespace sfint
