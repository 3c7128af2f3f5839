#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace k2u {

/// Raised for malformed task data. Carries the offending task index
/// (if any) and field name so callers can point at the input.
class ModelError : public std::invalid_argument {
public:
    ModelError(std::optional<std::size_t> task, std::string field,
               const std::string &what);

    const std::optional<std::size_t> &task_index() const noexcept { return task_; }
    const std::string &field() const noexcept { return field_; }

private:
    std::optional<std::size_t> task_;
    std::string field_;
};

struct Task {
    double wcet = 0.0;
    double period = 0.0;
    double deadline = 0.0;
    double suspension = 0.0;
    std::optional<double> critical_path;
    std::vector<double> frames;

    double utilization() const noexcept { return wcet / period; }
    bool has_frames() const noexcept { return !frames.empty(); }

    static Task sporadic(double wcet, double period);
    static Task sporadic(double wcet, double period, double deadline);

    friend bool operator==(const Task &, const Task &) = default;
};

/// Throws ModelError naming `index` and the first violated field.
void validate_task(const Task &task, std::size_t index);

enum class DeadlineClass { implicit, constrained, arbitrary };

const char *to_string(DeadlineClass c) noexcept;
DeadlineClass parse_deadline_class(std::string_view s);

/// Priority-ordered tasks (index 0 is the highest priority) on `processors`
/// identical processors. Validated on construction, immutable afterwards.
class TaskSet {
public:
    explicit TaskSet(std::vector<Task> tasks, int processors = 1);

    const std::vector<Task> &tasks() const noexcept { return tasks_; }
    const Task &operator[](std::size_t i) const { return tasks_.at(i); }
    std::size_t size() const noexcept { return tasks_.size(); }
    int processors() const noexcept { return processors_; }

    DeadlineClass deadline_class() const noexcept;

    TaskSet with_processors(int m) const;

    // Stable sorts; equal keys keep their input order.
    TaskSet sorted_rm() const;
    TaskSet sorted_dm() const;

    friend bool operator==(const TaskSet &, const TaskSet &) = default;

private:
    std::vector<Task> tasks_;
    int processors_;
};

struct UtilizationSummary {
    double total = 0.0;
    double max = 0.0;
    std::vector<double> per_task;
};

UtilizationSummary utilization_summary(const TaskSet &set);

// Multi-frame helpers. phi(ell) is the largest sum over ell cyclically
// consecutive frames.
double phi(const Task &task, std::size_t ell);

/// (phi(2) - phi(1)) / phi(1); the beta_i bound for multi-frame tasks.
/// Requires at least two frames.
double multiframe_beta_bound(const Task &task);

TaskSet parse_taskset(std::string_view json_text);
std::string serialize_taskset(const TaskSet &set);

TaskSet load_taskset(const std::string &path);

struct GeneratorParams {
    std::size_t n = 5;
    double total_util = 0.5;
    double period_lo = 10.0;
    double period_hi = 1000.0;
    DeadlineClass deadlines = DeadlineClass::implicit;
    std::uint64_t seed = 0;

    // Optional extras, drawn from a separate stream so that turning them on
    // does not perturb C, T and D.
    bool with_critical_path = false;
    double max_suspension_fraction = 0.0;
};

/// UUniFast-discard utilizations, log-uniform periods; RM order for implicit
/// deadlines and DM order otherwise. Deterministic for a fixed seed.
TaskSet generate_taskset(const GeneratorParams &params);

} // namespace k2u
