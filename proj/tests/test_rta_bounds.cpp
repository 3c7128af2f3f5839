#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>

#include "k2u/rta_bounds.hpp"
#include "k2u/uniproc.hpp"

#include "oracles.hpp"

using namespace k2u;
using namespace k2u::rta_bounds;
using doctest::Approx;

namespace {

// hp tasks in the given order, then tau_n with a long period.
TaskSet with_tail(std::vector<Task> hp, double c_n, double t_n = 1000)
{
    hp.push_back(Task::sporadic(c_n, t_n));
    return TaskSet(std::move(hp), 1);
}

double exact(const TaskSet &s, std::size_t n)
{
    std::vector<oracle::RawTask> raw;
    for (const auto &t : s.tasks())
        raw.push_back({t.wcet, t.period, t.deadline});
    return *oracle::response_time(raw, n, 1e12);
}

} // namespace

TEST_CASE("linear bound examples")
{
    auto s = with_tail({Task::sporadic(1, 2)}, 0.5);
    auto r = rt_bound_linear(s, 1);
    REQUIRE(r.bound);
    CHECK(*r.bound == Approx(2.0 / (1 - 0.0005)).epsilon(1e-3));
    CHECK(exact(s, 1) == Approx(1.5));

    // utilization of tau_n is negligible here; the hp-only formula is exact
    s = TaskSet({Task::sporadic(1, 2), Task::sporadic(0.5, 1e9)}, 1);
    CHECK(*rt_bound_linear(s, 1).bound == Approx(2.0));

    s = TaskSet({Task::sporadic(1, 2), Task::sporadic(1, 4), Task::sporadic(0.5, 1e9)}, 1);
    r = rt_bound_linear(s, 2);
    CHECK(*r.bound == Approx(6.0));
    CHECK(r.ordering_used == std::vector<std::size_t>{1, 0});
    CHECK(exact(s, 2) == Approx(3.5));

    r = rt_bound_linear(TaskSet({Task::sporadic(0.5, 3)}, 1), 0);
    CHECK(*r.bound == Approx(0.5));
    CHECK(r.precondition_ok);

    r = rt_bound_linear(TaskSet({Task::sporadic(1, 2), Task::sporadic(1, 2)}, 1), 1);
    CHECK_FALSE(r.bound);
    CHECK_FALSE(r.precondition_ok);

    r = rt_bound_linear(TaskSet({Task::sporadic(1, 4), Task::sporadic(1, 4), Task::sporadic(0.1, 100)}, 1), 2);
    CHECK(r.ties);

    CHECK_FALSE(rt_bound_linear(TaskSet({Task::sporadic(1, 4)}, 2), 0).bound);
}

TEST_CASE("hyperbolic bound examples")
{
    auto s = TaskSet({Task::sporadic(1, 2), Task::sporadic(0.5, 1e9)}, 1);
    auto r = rt_bound_hyperbolic(s, 1);
    REQUIRE(r.bound);
    CHECK(*r.bound == Approx(1.5));
    CHECK(exact(s, 1) == Approx(1.5));

    r = rt_bound_hyperbolic(TaskSet({Task::sporadic(0.5, 3)}, 1), 0);
    CHECK(*r.bound == Approx(0.5));

    r = rt_bound_hyperbolic(TaskSet({Task::sporadic(6, 10), Task::sporadic(3, 10), Task::sporadic(0.001, 1000)}, 1), 2);
    CHECK_FALSE(r.bound);
    CHECK(r.note.find("2.08") != std::string::npos);
}

TEST_CASE("hyperbolic bound misses the higher-priority execution scale")
{
    // same utilizations as the tight example, but the hp job is ten times longer:
    // the bound stays at 1.5 while tau_n waits for the whole 10-unit job
    const auto s = TaskSet({Task::sporadic(10, 20), Task::sporadic(0.5, 1e9)}, 1);
    const auto r = rt_bound_hyperbolic(s, 1);
    REQUIRE(r.bound);
    CHECK(*r.bound == Approx(1.5));
    CHECK(exact(s, 1) == Approx(10.5));
    CHECK(*r.bound < exact(s, 1));
    CHECK(*rt_bound_linear(s, 1).bound >= exact(s, 1));
}

TEST_CASE("linear bound is order invariant and dominates the exact response time")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(0, 1);
    int checked = 0;
    for (int trial = 0; trial < 5000; ++trial) {
        GeneratorParams p;
        p.n = 1 + rng() % 8;
        p.total_util = (0.05 + 0.9 * unit(rng)) * std::min<double>(1.0, 0.95 * p.n);
        p.seed = rng();
        const auto s = generate_taskset(p);
        const std::size_t n = s.size() - 1;
        const auto r = rt_bound_linear(s, n);
        REQUIRE(r.bound);
        ++checked;
        CHECK(*r.bound >= exact(s, n) * (1 - 1e-9));

        auto tasks = s.tasks();
        std::shuffle(tasks.begin(), tasks.begin() + static_cast<long>(n), rng);
        CHECK(*rt_bound_linear(TaskSet(tasks, 1), n).bound == Approx(*r.bound).epsilon(1e-9));

        // reducing one C never raises the bound
        tasks = s.tasks();
        const auto i = rng() % tasks.size();
        tasks[i].wcet *= unit(rng);
        if (tasks[i].wcet > 0) {
            CHECK(*rt_bound_linear(TaskSet(tasks, 1), n).bound <= *r.bound * (1 + 1e-12));
            const auto h = rt_bound_hyperbolic(s, n);
            if (h.bound)
                CHECK(*rt_bound_hyperbolic(TaskSet(tasks, 1), n).bound <= *h.bound * (1 + 1e-12));
        }
    }
    CHECK(checked == 5000);
}
