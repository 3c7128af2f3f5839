#include "k2u/factors.hpp"

#include <cmath>
#include <stdexcept>

namespace k2u::factors {

namespace {

constexpr double kRootTolerance = 1e-14;
constexpr int kMaxIterations = 200;

struct Root {
    double x;
    int iterations;
};

// g(lo) > 0 > g(hi) is required; g is only evaluated strictly inside.
template <class G>
Root bisect(G g, double lo, double hi)
{
    int it = 0;
    while (hi - lo > kRootTolerance && it < kMaxIterations) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
        ++it;
    }
    return {0.5 * (lo + hi), it};
}

} // namespace

FactorResult solve_capacity_factor(double a, double b0)
{
    if (!(b0 >= 0.0) || !(a > b0) || !std::isfinite(a))
        throw std::invalid_argument("need a > b0 >= 0");
    // g(y) = ln(a/(b0+y)) - y is decreasing, positive near 0 and negative
    // at a - b0 where the logarithm vanishes.
    auto g = [&](double y) { return std::log(a / (b0 + y)) - y; };
    const double hi = a - b0;
    if (b0 == 0.0) {
        // ln(a/y) diverges at 0; start the bracket where it is finite.
        double lo = hi;
        while (g(lo) <= 0.0)
            lo *= 0.5;
        const auto r = bisect(g, lo, hi);
        return {1.0 / r.x, r.x, r.x, std::fabs(g(r.x)), r.iterations};
    }
    if (!(g(0.0) > 0.0))
        throw std::invalid_argument("no sign change on (0, a - b0)");
    const auto r = bisect(g, 0.0, hi);
    return {1.0 / r.x, r.x, r.x, std::fabs(g(r.x)), r.iterations};
}

FactorResult solve_speedup_factor()
{
    auto g = [](double x) { return std::log(2.0 / (1.0 + x)) - (1.0 + x) / 2.0; };
    const auto r = bisect(g, 0.0, 1.0);
    const double value = (1.0 + r.x) / 2.0;
    return {1.0 / value, value, r.x, std::fabs(g(r.x)), r.iterations};
}

} // namespace k2u::factors
