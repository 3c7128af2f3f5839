#include "k2u/rta_bounds.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace k2u::rta_bounds {

namespace {

std::optional<std::string> common_problem(const TaskSet &set, std::size_t n)
{
    if (n >= set.size())
        throw std::out_of_range("task index " + std::to_string(n) + " out of range");
    if (set.processors() != 1)
        return std::string("uniprocessor bound");
    return std::nullopt;
}

} // namespace

RtBoundResult rt_bound_linear(const TaskSet &set, std::size_t n)
{
    RtBoundResult r;
    if (auto problem = common_problem(set, n)) {
        r.note = *problem;
        return r;
    }

    std::vector<std::size_t> hp(n);
    std::iota(hp.begin(), hp.end(), std::size_t{0});
    std::stable_sort(hp.begin(), hp.end(),
                     [&](std::size_t a, std::size_t b) { return set[a].period > set[b].period; });
    for (std::size_t i = 1; i < hp.size(); ++i)
        if (set[hp[i]].period == set[hp[i - 1]].period)
            r.ties = true;
    r.ordering_used = hp;

    double total_util = set[n].utilization();
    double hp_util = 0.0;
    double hp_wcet = 0.0;
    for (std::size_t i : hp) {
        hp_util += set[i].utilization();
        hp_wcet += set[i].wcet;
    }
    total_util += hp_util;
    if (!(total_util < 1.0)) {
        r.note = "total utilization " + std::to_string(total_util) + " is not below 1";
        return r;
    }

    // sum_i U_i * sum_{j>=i} C_j with a running suffix of C.
    double cross = 0.0;
    double suffix = 0.0;
    for (auto it = hp.rbegin(); it != hp.rend(); ++it) {
        suffix += set[*it].wcet;
        cross += set[*it].utilization() * suffix;
    }
    r.precondition_ok = true;
    r.bound = (set[n].wcet + hp_wcet - cross) / (1.0 - hp_util);
    return r;
}

RtBoundResult rt_bound_hyperbolic(const TaskSet &set, std::size_t n)
{
    RtBoundResult r;
    if (auto problem = common_problem(set, n)) {
        r.note = *problem;
        return r;
    }
    r.ordering_used.resize(n);
    std::iota(r.ordering_used.begin(), r.ordering_used.end(), std::size_t{0});

    double hp_product = 1.0;
    for (std::size_t i = 0; i < n; ++i)
        hp_product *= set[i].utilization() + 1.0;
    const double product = hp_product * (set[n].utilization() + 1.0);
    if (product > 2.0) {
        r.note = "prod (U_i + 1) = " + std::to_string(product) + " exceeds 2";
        return r;
    }
    r.precondition_ok = true;
    r.bound = set[n].wcet / (2.0 / hp_product - 1.0);
    return r;
}

} // namespace k2u::rta_bounds
