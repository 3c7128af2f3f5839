#include "k2u/multiproc.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "k2u/numeric.hpp"

namespace k2u::multiproc {

namespace {

void require_index(const TaskSet &set, std::size_t k)
{
    if (k >= set.size())
        throw std::out_of_range("task index " + std::to_string(k) + " out of range");
}

// Why the set is outside the implicit-deadline RM setting for task k, if it is.
std::optional<std::string> setting_problem(const TaskSet &set, std::size_t k)
{
    for (std::size_t i = 0; i <= k; ++i) {
        if (set[i].deadline != set[i].period)
            return "task " + std::to_string(i + 1) + " does not have an implicit deadline";
        if (i < k && set[i].period > set[k].period)
            return "task " + std::to_string(i + 1) + " has a longer period than the analysed task";
    }
    return std::nullopt;
}

double critical_path(const Task &t, std::size_t index)
{
    if (!t.critical_path)
        throw ModelError(index, "critical_path", "required by the DAG model");
    return *t.critical_path;
}

double hp_product(const TaskSet &set, std::size_t end, double m)
{
    double prod = 1.0;
    for (std::size_t j = 0; j < end; ++j)
        prod *= set[j].utilization() / m + 1.0;
    return prod;
}

double hp_sum(const TaskSet &set, std::size_t end)
{
    double sum = 0.0;
    for (std::size_t j = 0; j < end; ++j)
        sum += set[j].utilization();
    return sum;
}

const char *test_name(Model model)
{
    switch (model) {
    case Model::sporadic: return "grm";
    case Model::dag: return "grm-dag";
    case Model::suspending: return "grm-suspend";
    }
    return "grm";
}

// Leading term of the closed form and the end of the product range.
struct ClosedForm {
    double lead;
    std::size_t end;
};

ClosedForm closed_form_terms(const TaskSet &set, std::size_t k, Model model)
{
    const auto &tk = set[k];
    switch (model) {
    case Model::sporadic: return {tk.utilization(), k};
    case Model::dag: return {critical_path(tk, k) / tk.period, k + 1};
    case Model::suspending: return {(tk.wcet + tk.suspension) / tk.period, k};
    }
    return {tk.utilization(), k};
}

double max_utilization(const TaskSet &set, std::size_t k)
{
    double u = 0.0;
    for (std::size_t j = 0; j <= k; ++j)
        u = std::max(u, set[j].utilization());
    return u;
}

} // namespace

const char *to_string(Model m) noexcept
{
    switch (m) {
    case Model::sporadic: return "sporadic";
    case Model::dag: return "dag";
    case Model::suspending: return "suspending";
    }
    return "?";
}

GlobalSetup build_global_setup(const TaskSet &set, std::size_t k, Model model)
{
    require_index(set, k);
    if (auto problem = setting_problem(set, k))
        throw std::invalid_argument(*problem);

    const auto &tk = set[k];
    const double m = static_cast<double>(set.processors());
    GlobalSetup s;
    s.processors = set.processors();
    s.model = model;
    switch (model) {
    case Model::sporadic:
        s.effective_demand = tk.wcet;
        break;
    case Model::dag: {
        const double psi = critical_path(tk, k);
        s.effective_demand = psi + (tk.wcet - psi) / m;
        break;
    }
    case Model::suspending:
        s.effective_demand = tk.wcet + tk.suspension;
        break;
    }

    std::vector<std::pair<double, std::size_t>> last_release;
    for (std::size_t i = 0; i < k; ++i)
        last_release.emplace_back(robust_floor(tk.period / set[i].period) * set[i].period, i);
    std::stable_sort(last_release.begin(), last_release.end(),
                     [](const auto &a, const auto &b) { return a.first < b.first; });
    for (const auto &[t_i, i] : last_release) {
        const double ratio = std::min(1.0, set[i].period / t_i);
        s.points.push_back(t_i);
        s.instance.entries.push_back({set[i].utilization(), (1.0 + ratio) / m, ratio / m});
    }
    s.points.push_back(tk.period);
    s.instance.c_over_t = s.effective_demand / tk.period;
    return s;
}

double workload_w(const Task &task, double t)
{
    if (!(t > 0.0))
        throw std::invalid_argument("workload_w needs t > 0");
    return (robust_ceil(t / task.period) - 1.0) * task.wcet + 2.0 * task.wcet;
}

Verdict grm_naive_test(const TaskSet &set, std::size_t k)
{
    require_index(set, k);
    const std::string name = "grm-naive";
    if (auto problem = setting_problem(set, k))
        return Verdict::not_applicable(name, *problem);
    const auto setup = build_global_setup(set, k, Model::sporadic);
    const double m = static_cast<double>(set.processors());

    auto demand_at = [&](double t) {
        double d = setup.effective_demand;
        for (std::size_t i = 0; i < k; ++i)
            d += workload_w(set[i], t) / m;
        return d;
    };
    for (double t : setup.points) {
        const double d = demand_at(t);
        if (leq_tol(d, t))
            return Verdict::compare(name, d, t, "demand fits at t=" + format_number(t));
    }
    const double t = setup.points.back();
    return Verdict::compare(name, demand_at(t), t, "no setup point satisfies the demand");
}

Verdict grm_closed_form_product(const TaskSet &set, std::size_t k, Model model)
{
    require_index(set, k);
    const std::string name = test_name(model);
    if (auto problem = setting_problem(set, k))
        return Verdict::not_applicable(name, *problem);
    const auto [lead, end] = closed_form_terms(set, k, model);
    const double m = static_cast<double>(set.processors());
    return Verdict::compare(name, (lead + 2.0) * hp_product(set, end, m), 3.0, "product");
}

Verdict grm_closed_form_sum(const TaskSet &set, std::size_t k, Model model)
{
    require_index(set, k);
    const std::string name = test_name(model);
    if (auto problem = setting_problem(set, k))
        return Verdict::not_applicable(name, *problem);
    if (model == Model::suspending)
        return Verdict::not_applicable(name, "suspending model has no sum form");
    const auto [lead, end] = closed_form_terms(set, k, model);
    const double m = static_cast<double>(set.processors());
    return Verdict::compare(name, hp_sum(set, end) / m, std::log(3.0 / (lead + 2.0)), "sum");
}

Verdict grm_closed_form_test(const TaskSet &set, std::size_t k, Model model)
{
    auto product = grm_closed_form_product(set, k, model);
    if (model == Model::suspending || !product.applicable)
        return product;
    return either(product, grm_closed_form_sum(set, k, model), test_name(model));
}

Verdict fast_monotonic_bound(double delta_max, const std::vector<double> &utils, int processors)
{
    if (processors < 1)
        throw std::invalid_argument("processors must be >= 1");
    if (!(delta_max >= 0.0))
        throw std::invalid_argument("delta_max must be >= 0");
    const double m = static_cast<double>(processors);
    double prod = delta_max + 2.0;
    for (double u : utils)
        prod *= u / m + 1.0;
    return Verdict::compare("grm-fast", prod, 3.0);
}

Verdict fast_monotonic_test(const TaskSet &set)
{
    for (std::size_t i = 0; i < set.size(); ++i)
        if (set[i].deadline != set[i].period)
            return Verdict::not_applicable("grm-fast", "task " + std::to_string(i + 1) +
                                                           " does not have an implicit deadline");
    double delta_max = 0.0;
    for (std::size_t i = 0; i < set.size(); ++i)
        delta_max = std::max(delta_max, critical_path(set[i], i) / set[i].period);
    return fast_monotonic_bound(delta_max, utilization_summary(set).per_task, set.processors());
}

Verdict grm_tight_product(const TaskSet &set, std::size_t k)
{
    require_index(set, k);
    if (auto problem = setting_problem(set, k))
        return Verdict::not_applicable("grm-tight", *problem);
    const double m = static_cast<double>(set.processors());
    return Verdict::compare("grm-tight", (max_utilization(set, k) + 1.0) * hp_product(set, k, m),
                            2.0, "product");
}

Verdict grm_tight_sum(const TaskSet &set, std::size_t k)
{
    require_index(set, k);
    if (auto problem = setting_problem(set, k))
        return Verdict::not_applicable("grm-tight", *problem);
    const double m = static_cast<double>(set.processors());
    return Verdict::compare("grm-tight", hp_sum(set, k) / m,
                            std::log(2.0 / (max_utilization(set, k) + 1.0)), "sum");
}

Verdict grm_tight_test(const TaskSet &set, std::size_t k)
{
    auto product = grm_tight_product(set, k);
    if (!product.applicable)
        return product;
    return either(product, grm_tight_sum(set, k), "grm-tight");
}

Verdict bertogna_test(const TaskSet &set, std::size_t k)
{
    require_index(set, k);
    if (auto problem = setting_problem(set, k))
        return Verdict::not_applicable("bertogna", *problem);
    const double m = static_cast<double>(set.processors());
    const double umax = max_utilization(set, k);
    return Verdict::compare("bertogna", hp_sum(set, k + 1), m / 2.0 * (1.0 - umax) + umax);
}

RmUsPartition rm_us_classify(const TaskSet &set, double threshold)
{
    RmUsPartition p;
    for (std::size_t i = 0; i < set.size(); ++i)
        (set[i].utilization() > threshold ? p.top : p.rm).push_back(i);
    std::stable_sort(p.rm.begin(), p.rm.end(),
                     [&](std::size_t a, std::size_t b) { return set[a].period < set[b].period; });
    return p;
}

} // namespace k2u::multiproc
