#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "k2u/taskmodel.hpp"
#include "k2u/verdict.hpp"

namespace k2u::harness {

struct TestOptions {
    int f = 1;
};

enum class Scope { per_task, whole_set, classification };

struct TestEntry {
    std::string id;
    Scope scope = Scope::per_task;
    bool experimental = false;
    // per_task: called with a task index; whole_set: index ignored.
    std::function<Verdict(const TaskSet &, std::size_t, const TestOptions &)> run;
};

const std::vector<TestEntry> &registry();
const TestEntry *find_test(const std::string &id);

/// Whole-set verdict: every analysed task accepted. Not-applicable rejects.
bool accepts_set(const TestEntry &test, const TaskSet &set, const TestOptions &opts);

struct AnalyzeArgs {
    std::string input;
    std::string test;
    std::optional<std::size_t> task; // 1-based; nullopt = all
    std::optional<int> processors;
    int f = 1;
    bool experimental_rt_bounds = false;
};

enum ExitCode : int { exit_accepted = 0, exit_rejected = 1, exit_usage = 2 };

/// Prints a JSON report to `out` and diagnostics to `err`.
int run_analyze(const AnalyzeArgs &args, std::ostream &out, std::ostream &err);

struct UtilGrid {
    double lo = 0.1;
    double hi = 1.0;
    double step = 0.1;

    std::vector<double> points() const;
    static UtilGrid parse(const std::string &spec); // "LO:HI:STEP"
};

struct SweepArgs {
    std::size_t n = 5;
    int processors = 1;
    UtilGrid util;
    std::size_t sets = 100;
    std::uint64_t seed = 1;
    std::vector<std::string> tests;
    std::string out;
    double period_lo = 10.0;
    double period_hi = 1000.0;
    DeadlineClass deadlines = DeadlineClass::implicit;
    double suspension = 0.0;
    int f = 1;
    bool experimental_rt_bounds = false;
    unsigned jobs = 1;
};

struct SweepRecord {
    std::string test_name;
    std::size_t n = 0;
    int processors = 1;
    double target_util = 0.0;
    std::size_t sets_evaluated = 0;
    std::size_t accepted = 0;
    double acceptance_ratio = 0.0;
    std::uint64_t seed = 0;
};

/// Rows ordered by grid point, then by the order of args.tests. The grid is
/// normalised utilization: each set targets util * M total utilization.
/// Every test at a grid point sees the same generated sets.
std::vector<SweepRecord> sweep(const SweepArgs &args);

std::string to_csv(const std::vector<SweepRecord> &rows);

/// Writes the CSV to args.out. Returns an exit code.
int run_sweep(const SweepArgs &args, std::ostream &err);

int run_solve_factors(std::ostream &out);

std::string format_number(double v);

} // namespace k2u::harness
