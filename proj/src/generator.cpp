#include <cmath>
#include <random>

#include "k2u/taskmodel.hpp"

namespace k2u {

namespace {

// Uniform in [0, 1) from the top 53 bits; independent of the standard
// library's distribution implementations.
double unit(std::mt19937_64 &rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform in (0, 1].
double unit_open_low(std::mt19937_64 &rng)
{
    return 1.0 - unit(rng);
}

constexpr int kMaxDiscards = 100000;

std::vector<double> uunifast_discard(std::size_t n, double total, std::mt19937_64 &rng)
{
    if (n == 1)
        return {total};
    std::vector<double> utils(n);
    for (int attempt = 0; attempt < kMaxDiscards; ++attempt) {
        double remaining = total;
        bool ok = true;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const double next =
                remaining * std::pow(unit_open_low(rng), 1.0 / static_cast<double>(n - i - 1));
            utils[i] = remaining - next;
            remaining = next;
            ok = ok && utils[i] > 0.0 && utils[i] <= 1.0;
        }
        utils[n - 1] = remaining;
        ok = ok && remaining > 0.0 && remaining <= 1.0;
        if (ok)
            return utils;
    }
    throw ModelError(std::nullopt, "total_util",
                     "could not draw per-task utilizations <= 1 for this target");
}

} // namespace

TaskSet generate_taskset(const GeneratorParams &p)
{
    if (p.n < 1)
        throw ModelError(std::nullopt, "n", "must be >= 1");
    if (!(p.total_util > 0.0))
        throw ModelError(std::nullopt, "total_util", "must be > 0");
    if (p.total_util > static_cast<double>(p.n))
        throw ModelError(std::nullopt, "total_util", "exceeds the task count (some U_i > 1)");
    if (!(p.period_lo > 0.0) || !(p.period_lo < p.period_hi))
        throw ModelError(std::nullopt, "period_range", "need 0 < lo < hi");
    if (!(p.max_suspension_fraction >= 0.0) || p.max_suspension_fraction > 1.0)
        throw ModelError(std::nullopt, "max_suspension_fraction", "must be in [0, 1]");

    std::mt19937_64 rng(p.seed);
    std::mt19937_64 extras(p.seed ^ 0x9E3779B97F4A7C15ULL);

    const auto utils = p.total_util == static_cast<double>(p.n)
                           ? std::vector<double>(p.n, 1.0)
                           : uunifast_discard(p.n, p.total_util, rng);

    const double log_lo = std::log(p.period_lo);
    const double log_hi = std::log(p.period_hi);

    std::vector<Task> tasks;
    tasks.reserve(p.n);
    for (double u : utils) {
        Task t;
        t.period = std::exp(log_lo + unit(rng) * (log_hi - log_lo));
        t.wcet = u * t.period;
        switch (p.deadlines) {
        case DeadlineClass::implicit:
            t.deadline = t.period;
            break;
        case DeadlineClass::constrained:
            t.deadline = t.wcet + unit(rng) * (t.period - t.wcet);
            break;
        case DeadlineClass::arbitrary:
            t.deadline = t.wcet + unit(rng) * (4.0 * t.period - t.wcet);
            break;
        }
        const double cp_fraction = unit_open_low(extras);
        const double s_fraction = unit(extras);
        if (p.with_critical_path)
            t.critical_path = t.wcet * cp_fraction;
        if (p.max_suspension_fraction > 0.0)
            t.suspension = p.max_suspension_fraction * s_fraction * (t.period - t.wcet);
        tasks.push_back(std::move(t));
    }

    TaskSet set(std::move(tasks), 1);
    return p.deadlines == DeadlineClass::implicit ? set.sorted_rm() : set.sorted_dm();
}

} // namespace k2u
