#include "k2u/uniproc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include "k2u/numeric.hpp"

namespace k2u::uniproc {

namespace {

void require_index(const TaskSet &set, std::size_t k)
{
    if (k >= set.size())
        throw std::out_of_range("task index " + std::to_string(k) + " out of range");
}

// Release instants m*T_i <= limit of tasks [0, k), plus `limit` itself.
std::vector<double> release_grid(const TaskSet &set, std::size_t k, double limit)
{
    std::vector<double> grid{limit};
    for (std::size_t i = 0; i < k; ++i) {
        const double period = set[i].period;
        for (double m = 1.0; m * period <= limit; m += 1.0)
            grid.push_back(m * period);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

double interference(const TaskSet &set, std::size_t k, double t)
{
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i)
        sum += robust_ceil(t / set[i].period) * set[i].wcet;
    return sum;
}

// Scans the grid for the first t with base + interference(t) <= t.
Verdict scan_demand(const TaskSet &set, std::size_t k, double base, double limit,
                    std::string name)
{
    for (double t : release_grid(set, k, limit)) {
        const double demand = base + interference(set, k, t);
        if (leq_tol(demand, t))
            return Verdict::compare(std::move(name), demand, t,
                                    "demand fits at t=" + format_number(t));
    }
    return Verdict::compare(std::move(name), base + interference(set, k, limit), limit,
                            "no point in (0, D_k] satisfies the demand");
}

constexpr double kMaxDeadlines = 2e7;

bool integral(double x) { return std::fabs(x - std::round(x)) <= kIntegralSlack * std::max(1.0, x); }

std::optional<double> hyperperiod(const TaskSet &set)
{
    constexpr std::int64_t kCap = 1'000'000'000'000LL;
    std::int64_t h = 1;
    for (const auto &t : set.tasks()) {
        if (!integral(t.period))
            return std::nullopt;
        const auto p = static_cast<std::int64_t>(std::llround(t.period));
        h = h / std::gcd(h, p) * p;
        if (h > kCap)
            return std::nullopt;
    }
    return static_cast<double>(h);
}

struct FpSetup {
    ConstrainedKPointSetup setup;
    bool ratio_rm = false; // arbitrary deadline with f >= 2: U_k/f substitution
    double u_k = 0.0;
    std::size_t k_count = 1; // 1-based priority position
};

std::optional<Verdict> fp_preconditions(const TaskSet &set, std::size_t k, int f,
                                        const std::string &name)
{
    require_index(set, k);
    if (f < 1)
        throw std::invalid_argument("f must be a positive integer");
    if (set.processors() != 1)
        return Verdict::not_applicable(name, "uniprocessor test, set has " +
                                                 std::to_string(set.processors()) + " processors");
    if (f == 1)
        return std::nullopt;

    const auto &tk = set[k];
    const double fd = static_cast<double>(f);
    if (tk.deadline <= tk.period) {
        for (std::size_t i = 0; i < k; ++i)
            if (set[i].period < tk.deadline && !leq_tol(fd * set[i].period, tk.deadline))
                return Verdict::not_applicable(name, "f*T_i <= D_k fails for task " +
                                                         std::to_string(i + 1));
        return std::nullopt;
    }
    for (std::size_t i = 0; i < k; ++i) {
        if (!leq_tol(fd * set[i].period, tk.deadline))
            return Verdict::not_applicable(name, "f*T_i <= D_k fails for task " +
                                                     std::to_string(i + 1));
        if (set[i].period > tk.period)
            return Verdict::not_applicable(name, "period-ratio test needs RM priorities");
    }
    if (!leq_tol(fd * tk.period, tk.deadline))
        return Verdict::not_applicable(name, "f*T_k <= D_k fails");
    return std::nullopt;
}

FpSetup fp_setup(const TaskSet &set, std::size_t k, int f)
{
    const auto &tk = set[k];
    FpSetup s;
    const bool arbitrary = tk.deadline > tk.period;
    s.setup = build_kpoint_constrained(set, k, arbitrary);
    s.ratio_rm = arbitrary && f >= 2;
    s.u_k = tk.utilization();
    s.k_count = k + 1;
    return s;
}

Verdict product_form(const TaskSet &set, const FpSetup &s, std::size_t k, int f,
                     std::string name)
{
    const double fd = static_cast<double>(f);
    double lhs = 1.0;
    if (s.ratio_rm) {
        lhs = s.u_k / fd + 1.0;
        for (std::size_t i = 0; i < k; ++i)
            lhs *= set[i].utilization() / fd + 1.0;
    } else {
        lhs = s.setup.instance.c_over_t / fd + 1.0;
        for (const auto &e : s.setup.instance.entries)
            lhs *= e.u / fd + 1.0;
    }
    return Verdict::compare(std::move(name), lhs, (fd + 1.0) / fd, "product");
}

Verdict sum_form(const TaskSet &set, const FpSetup &s, std::size_t k, int f,
                 std::string name)
{
    const double fd = static_cast<double>(f);
    const double kd = static_cast<double>(s.k_count);
    const double threshold = fd * kd * std::expm1(std::log1p(1.0 / fd) / kd);
    double lhs = 0.0;
    if (s.ratio_rm) {
        for (std::size_t i = 0; i <= k; ++i)
            lhs += set[i].utilization();
    } else {
        lhs = s.setup.instance.c_over_t;
        for (const auto &e : s.setup.instance.entries)
            lhs += e.u;
    }
    return Verdict::compare(std::move(name), lhs, threshold, "sum");
}

} // namespace

Verdict tda_exact(const TaskSet &set, std::size_t k)
{
    require_index(set, k);
    const std::string name = "tda";
    if (set.processors() != 1)
        return Verdict::not_applicable(name, "uniprocessor test");
    const auto &tk = set[k];
    if (tk.deadline > tk.period)
        return Verdict::not_applicable(name, "D_k > T_k: use busy-window");
    return scan_demand(set, k, tk.wcet, tk.deadline, name);
}

std::optional<double> rta_fixed_point(const TaskSet &set, std::size_t k, double horizon_factor)
{
    require_index(set, k);
    const auto &tk = set[k];
    const double horizon = horizon_factor * tk.period;
    double r = tk.wcet;
    while (true) {
        const double next = tk.wcet + interference(set, k, r);
        if (next <= r)
            return r;
        if (next > horizon)
            return std::nullopt;
        r = next;
    }
}

double dbf(const Task &task, double t)
{
    if (t < task.deadline)
        return 0.0;
    return (robust_floor((t - task.deadline) / task.period) + 1.0) * task.wcet;
}

Verdict edf_dbf_feasible(const TaskSet &set, std::optional<double> horizon)
{
    const std::string name = "edf-dbf";
    if (set.processors() != 1)
        return Verdict::not_applicable(name, "uniprocessor test");

    const auto summary = utilization_summary(set);
    const bool overloaded = !leq_tol(summary.total, 1.0);

    double max_deadline = 0.0;
    double slack_demand = 0.0; // sum (T_i - D_i) U_i
    bool implicit = true;
    for (const auto &t : set.tasks()) {
        max_deadline = std::max(max_deadline, t.deadline);
        slack_demand += (t.period - t.deadline) * t.utilization();
        implicit = implicit && t.deadline == t.period;
    }
    if (!horizon && implicit)
        return Verdict::compare(name, summary.total, 1.0, "implicit deadlines");
    if (!horizon && overloaded) {
        // dbf(t) >= U (t - max D) exceeds t beyond U max D / (U - 1): a
        // violating deadline exists before that point.
        horizon = summary.total * max_deadline / (summary.total - 1.0);
        double count = 0.0;
        for (const auto &t : set.tasks())
            count += *horizon / t.period + 1.0;
        if (count > kMaxDeadlines)
            return Verdict::compare(name, summary.total, 1.0, "total utilization exceeds 1");
    }

    double limit = 0.0;
    if (horizon) {
        if (!(*horizon > 0.0))
            throw std::invalid_argument("horizon must be > 0");
        limit = *horizon;
    } else {
        const auto h = hyperperiod(set);
        if (h)
            limit = *h + max_deadline;
        if (summary.total < 1.0) {
            const double busy = std::max(max_deadline, slack_demand / (1.0 - summary.total));
            limit = h ? std::min(limit, busy) : busy;
        } else if (!h) {
            // No finite exact horizon is known here; report a conservative reject.
            auto v = Verdict::compare(name, summary.total, 1.0);
            v.accepted = false;
            v.note = "undecided: utilization 1 without an integral hyperperiod";
            return v;
        }
    }

    double expected_points = 0.0;
    for (const auto &t : set.tasks())
        expected_points += std::max(0.0, (limit - t.deadline) / t.period + 1.0);
    if (expected_points > kMaxDeadlines) {
        if (horizon)
            throw std::invalid_argument("dbf horizon covers more than " +
                                        format_number(kMaxDeadlines) + " deadlines");
        auto v = Verdict::compare(name, summary.total, 1.0);
        v.accepted = false;
        v.note = "undecided: dbf horizon " + format_number(limit) + " is too long to scan";
        return v;
    }

    std::vector<double> points;
    points.reserve(static_cast<std::size_t>(expected_points) + set.size());
    for (const auto &t : set.tasks())
        for (double m = 0.0; t.deadline + m * t.period <= limit; m += 1.0)
            points.push_back(t.deadline + m * t.period);
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    for (double t : points) {
        double demand = 0.0;
        for (const auto &task : set.tasks())
            demand += dbf(task, t);
        if (!leq_tol(demand, t))
            return Verdict::compare(name, demand, t, "demand exceeds t=" + format_number(t));
    }
    return Verdict::compare(name, summary.total, 1.0,
                            "checked " + std::to_string(points.size()) + " deadlines up to " +
                                format_number(limit));
}

ConstrainedKPointSetup build_kpoint_constrained(const TaskSet &set, std::size_t k, bool arbitrary)
{
    require_index(set, k);
    if (set.processors() != 1)
        throw std::invalid_argument("k-point uniprocessor setup needs one processor");
    const auto &tk = set[k];
    if (!arbitrary && tk.deadline > tk.period)
        throw std::invalid_argument("D_k > T_k needs the arbitrary-deadline setup");

    const double d = tk.deadline;
    ConstrainedKPointSetup s;
    s.virtual_wcet = (arbitrary ? robust_ceil(d / tk.period) : 1.0) * tk.wcet;

    std::vector<std::pair<double, std::size_t>> last_release;
    for (std::size_t i = 0; i < k; ++i) {
        if (set[i].period < d) {
            last_release.emplace_back(robust_floor(d / set[i].period) * set[i].period, i);
        } else {
            s.hp2.push_back(i);
            s.virtual_wcet += set[i].wcet;
        }
    }
    std::stable_sort(last_release.begin(), last_release.end(),
                     [](const auto &a, const auto &b) { return a.first < b.first; });

    for (const auto &[t_i, i] : last_release) {
        s.hp1.push_back(i);
        s.points.push_back(t_i);
        s.instance.entries.push_back(
            {set[i].utilization(), 1.0, std::min(1.0, set[i].period / t_i)});
    }
    s.points.push_back(d);
    s.instance.c_over_t = s.virtual_wcet / d;
    return s;
}

Verdict fp_hyperbolic_test(const TaskSet &set, std::size_t k, int f)
{
    const std::string name = "fp-hyperbolic";
    if (auto na = fp_preconditions(set, k, f, name))
        return *na;
    const auto s = fp_setup(set, k, f);
    return either(product_form(set, s, k, f, name), sum_form(set, s, k, f, name), name);
}

Verdict fp_product_test(const TaskSet &set, std::size_t k, int f)
{
    const std::string name = "fp-product";
    if (auto na = fp_preconditions(set, k, f, name))
        return *na;
    return product_form(set, fp_setup(set, k, f), k, f, name);
}

Verdict fp_sum_test(const TaskSet &set, std::size_t k, int f)
{
    const std::string name = "fp-sum";
    if (auto na = fp_preconditions(set, k, f, name))
        return *na;
    return sum_form(set, fp_setup(set, k, f), k, f, name);
}

Verdict busy_window_sufficient(const TaskSet &set, std::size_t k)
{
    require_index(set, k);
    const std::string name = "busy-window";
    if (set.processors() != 1)
        return Verdict::not_applicable(name, "uniprocessor test");
    const auto &tk = set[k];
    if (tk.deadline <= tk.period)
        return Verdict::not_applicable(name, "D_k <= T_k: use tda");
    const double base = robust_ceil(tk.deadline / tk.period) * tk.wcet;
    return scan_demand(set, k, base, tk.deadline, name);
}

double speedup_witness(const TaskSet &set, std::size_t k)
{
    const auto s = build_kpoint_constrained(set, k, false);
    const double d = set[k].deadline;
    double demand = s.virtual_wcet;
    for (std::size_t i : s.hp1)
        demand += dbf(set[i], d);
    double util = 0.0;
    for (std::size_t i = 0; i < k; ++i)
        util += set[i].utilization();
    return std::max(demand / d, util);
}

} // namespace k2u::uniproc
