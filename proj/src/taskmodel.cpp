#include "k2u/taskmodel.hpp"

#include <algorithm>
#include <cmath>

namespace k2u {

namespace {

std::string describe(std::optional<std::size_t> task, const std::string &field,
                     const std::string &what)
{
    std::string msg;
    if (task)
        msg += "task " + std::to_string(*task + 1) + ": ";
    if (!field.empty())
        msg += "field '" + field + "': ";
    return msg + what;
}

bool positive(double x) { return x > 0.0 && std::isfinite(x); }

} // namespace

ModelError::ModelError(std::optional<std::size_t> task, std::string field,
                       const std::string &what)
    : std::invalid_argument(describe(task, field, what)), task_(task),
      field_(std::move(field))
{
}

Task Task::sporadic(double wcet, double period)
{
    return sporadic(wcet, period, period);
}

Task Task::sporadic(double wcet, double period, double deadline)
{
    Task t;
    t.wcet = wcet;
    t.period = period;
    t.deadline = deadline;
    return t;
}

void validate_task(const Task &task, std::size_t index)
{
    if (!positive(task.wcet))
        throw ModelError(index, "wcet", "must be > 0");
    if (!positive(task.period))
        throw ModelError(index, "period", "must be > 0");
    if (!positive(task.deadline))
        throw ModelError(index, "deadline", "must be > 0");
    if (!(task.suspension >= 0.0) || !std::isfinite(task.suspension))
        throw ModelError(index, "suspension", "must be >= 0");
    if (task.suspension > 0.0 && task.wcet + task.suspension > task.period)
        throw ModelError(index, "suspension",
                         "C_i + S_i <= T_i violated (a suspending job would overrun its period)");
    if (task.critical_path) {
        const double cp = *task.critical_path;
        if (!(cp >= 0.0) || !std::isfinite(cp))
            throw ModelError(index, "critical_path", "must be >= 0");
        if (cp > task.wcet)
            throw ModelError(index, "critical_path", "must not exceed wcet");
    }
    if (task.has_frames()) {
        for (double f : task.frames)
            if (!positive(f))
                throw ModelError(index, "frames", "every frame must be > 0");
        const double peak = *std::max_element(task.frames.begin(), task.frames.end());
        if (std::fabs(peak - task.wcet) > 1e-12 * std::max(1.0, peak))
            throw ModelError(index, "frames", "wcet must equal the largest frame");
    }
}

const char *to_string(DeadlineClass c) noexcept
{
    switch (c) {
    case DeadlineClass::implicit: return "implicit";
    case DeadlineClass::constrained: return "constrained";
    case DeadlineClass::arbitrary: return "arbitrary";
    }
    return "?";
}

DeadlineClass parse_deadline_class(std::string_view s)
{
    if (s == "implicit") return DeadlineClass::implicit;
    if (s == "constrained") return DeadlineClass::constrained;
    if (s == "arbitrary") return DeadlineClass::arbitrary;
    throw std::invalid_argument("unknown deadline class '" + std::string(s) + "'");
}

TaskSet::TaskSet(std::vector<Task> tasks, int processors)
    : tasks_(std::move(tasks)), processors_(processors)
{
    if (tasks_.empty())
        throw ModelError(std::nullopt, "tasks", "task set must not be empty");
    if (processors_ < 1)
        throw ModelError(std::nullopt, "processors", "must be >= 1");
    for (std::size_t i = 0; i < tasks_.size(); ++i)
        validate_task(tasks_[i], i);
}

DeadlineClass TaskSet::deadline_class() const noexcept
{
    bool implicit = true;
    for (const auto &t : tasks_) {
        if (t.deadline > t.period)
            return DeadlineClass::arbitrary;
        if (t.deadline != t.period)
            implicit = false;
    }
    return implicit ? DeadlineClass::implicit : DeadlineClass::constrained;
}

TaskSet TaskSet::with_processors(int m) const
{
    return TaskSet(tasks_, m);
}

TaskSet TaskSet::sorted_rm() const
{
    auto sorted = tasks_;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Task &a, const Task &b) { return a.period < b.period; });
    return TaskSet(std::move(sorted), processors_);
}

TaskSet TaskSet::sorted_dm() const
{
    auto sorted = tasks_;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Task &a, const Task &b) { return a.deadline < b.deadline; });
    return TaskSet(std::move(sorted), processors_);
}

UtilizationSummary utilization_summary(const TaskSet &set)
{
    UtilizationSummary s;
    s.per_task.reserve(set.size());
    for (const auto &t : set.tasks()) {
        const double u = t.utilization();
        s.per_task.push_back(u);
        s.total += u;
        s.max = std::max(s.max, u);
    }
    return s;
}

double phi(const Task &task, std::size_t ell)
{
    if (!task.has_frames())
        throw ModelError(std::nullopt, "frames", "task has no frames");
    const std::size_t n = task.frames.size();
    if (ell < 1 || ell > n)
        throw std::out_of_range("phi: ell must be in [1, frame count]");

    double best = 0.0;
    for (std::size_t start = 0; start < n; ++start) {
        double window = 0.0;
        for (std::size_t j = 0; j < ell; ++j)
            window += task.frames[(start + j) % n];
        best = std::max(best, window);
    }
    return best;
}

double multiframe_beta_bound(const Task &task)
{
    if (task.frames.size() < 2)
        throw std::out_of_range("multiframe_beta_bound needs at least two frames");
    const double one = phi(task, 1);
    return (phi(task, 2) - one) / one;
}

} // namespace k2u
