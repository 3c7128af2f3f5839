#include "k2u/kpoint.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "k2u/numeric.hpp"

namespace k2u {

namespace {

void require_positive(double x, const char *name)
{
    if (!(x > 0.0) || !std::isfinite(x))
        throw std::invalid_argument(std::string(name) + " must be positive and finite");
}

void require_covers(const KPointInstance &inst, double alpha, double beta)
{
    require_positive(alpha, "alpha");
    require_positive(beta, "beta");
    for (const auto &e : inst.entries) {
        if (e.alpha > alpha * (1.0 + 1e-12) || e.beta > beta * (1.0 + 1e-12))
            throw std::invalid_argument(
                "uniform alpha/beta must bound every entry's coefficients");
    }
}

double beta_product(const KPointInstance &inst, double beta)
{
    double prod = 1.0;
    for (const auto &e : inst.entries)
        prod *= beta * e.u + 1.0;
    return prod;
}

} // namespace

void validate(const KPointInstance &inst)
{
    for (const auto &e : inst.entries) {
        if (!(e.u > 0.0) || e.u > 1.0)
            throw std::invalid_argument("entry utilization must be in (0, 1]");
        require_positive(e.alpha, "entry alpha");
        require_positive(e.beta, "entry beta");
    }
    require_positive(inst.c_over_t, "c_over_t");
}

Verdict hyperbolic_bound(const KPointInstance &inst, double alpha, double beta)
{
    validate(inst);
    require_covers(inst, alpha, beta);
    const double ratio = alpha / beta;
    const double bound = (ratio + 1.0) / beta_product(inst, beta) - ratio;
    return Verdict::compare("hyperbolic", inst.c_over_t, bound,
                            bound > 0.0 ? "" : "bound nonpositive");
}

double utilization_bound_constrained(std::size_t k, double alpha, double beta)
{
    if (k < 1)
        throw std::invalid_argument("k must be >= 1");
    require_positive(alpha, "alpha");
    require_positive(beta, "beta");

    const double kd = static_cast<double>(k);
    // root - 1 with root = (alpha + beta)^(1/k), via expm1 so that large k
    // keeps its precision.
    const double root_minus_one = std::expm1(std::log(alpha + beta) / kd);
    const double root = root_minus_one + 1.0;

    if (root < 1.0)
        return 1.0;
    if (k >= 2 && root < alpha) {
        const double km1 = kd - 1.0;
        return km1 * std::expm1(std::log1p(beta / alpha) / km1) / beta;
    }
    // ((k-1)(root-1) + (root-alpha)) / beta == (k (root-1) + 1 - alpha) / beta
    return (kd * root_minus_one + (1.0 - alpha)) / beta;
}

Verdict utilization_bound_constrained_test(const KPointInstance &inst, double alpha,
                                           double beta)
{
    validate(inst);
    require_covers(inst, alpha, beta);
    double total = inst.c_over_t;
    for (const auto &e : inst.entries)
        total += e.u;
    return Verdict::compare("utilization-constrained", total,
                            utilization_bound_constrained(inst.k(), alpha, beta));
}

Verdict utilization_bound_exclusive(const KPointInstance &inst, double alpha, double beta)
{
    validate(inst);
    require_covers(inst, alpha, beta);
    const double ratio = alpha / beta;
    double sum = 0.0;
    for (const auto &e : inst.entries)
        sum += e.u;
    const double bound = std::log((ratio + 1.0) / (inst.c_over_t + ratio));
    return Verdict::compare("utilization-exclusive", beta * sum, bound,
                            bound > 0.0 ? "" : "bound nonpositive");
}

Verdict extreme_points_bound(const KPointInstance &inst)
{
    validate(inst);
    // Walk from the last entry so that `suffix` is prod_{j>=i} (beta_j U_j + 1).
    double suffix = 1.0;
    double sum = 0.0;
    for (auto it = inst.entries.rbegin(); it != inst.entries.rend(); ++it) {
        suffix *= it->beta * it->u + 1.0;
        sum += it->u * (it->alpha + it->beta) / suffix;
    }
    const double bound = 1.0 - sum;
    auto v = Verdict::compare("extreme-points", inst.c_over_t, bound);
    if (bound <= 0.0) {
        v.accepted = false;
        v.note = "bound nonpositive";
    }
    return v;
}

} // namespace k2u
