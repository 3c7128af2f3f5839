#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "k2u/harness.hpp"
#include "k2u/numeric.hpp"

namespace {

std::vector<std::string> split_list(const std::string &s)
{
    std::vector<std::string> items;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty())
            items.push_back(item);
    return items;
}

bool apply_tolerance_env()
{
    const char *env = std::getenv("K2U_TOLERANCE");
    if (!env)
        return true;
    try {
        std::size_t used = 0;
        const double tol = std::stod(env, &used);
        if (used != std::string(env).size())
            throw std::invalid_argument("trailing characters");
        k2u::set_accept_tolerance(tol);
        return true;
    } catch (const std::exception &) {
        std::cerr << "error: K2U_TOLERANCE must be a finite number >= 0\n";
        return false;
    }
}

} // namespace

int main(int argc, char **argv)
{
    using namespace k2u::harness;

    CLI::App app{"Schedulability analysis with k-point effective tests"};
    app.require_subcommand(1);

    AnalyzeArgs analyze;
    std::string task = "all";
    std::optional<int> processors;
    auto *an = app.add_subcommand("analyze", "Run one test on a task set");
    an->add_option("--input", analyze.input, "Task-set JSON file")->required();
    an->add_option("--test", analyze.test, "Test id")->required();
    an->add_option("--task", task, "1-based task index or 'all'");
    an->add_option("--processors", processors, "Override the processor count")
        ->check(CLI::PositiveNumber);
    an->add_option("--f", analyze.f, "Period-ratio parameter for fp tests");
    an->add_flag("--experimental-rt-bounds", analyze.experimental_rt_bounds,
                 "Enable the response-time bound tests");

    SweepArgs sw;
    std::string util = "0.1:1.0:0.1";
    std::string tests;
    std::string deadlines = "implicit";
    std::string periods = "10:1000";
    auto *sp = app.add_subcommand("sweep", "Acceptance ratios over a utilization grid");
    sp->add_option("--n", sw.n, "Tasks per set")->required();
    sp->add_option("--processors", sw.processors, "Processor count");
    sp->add_option("--util", util, "Normalized utilization grid LO:HI:STEP");
    sp->add_option("--sets", sw.sets, "Sets per grid point");
    sp->add_option("--seed", sw.seed, "RNG seed");
    sp->add_option("--tests", tests, "Comma-separated test ids")->required();
    sp->add_option("--out", sw.out, "Output CSV path")->required();
    sp->add_option("--deadlines", deadlines, "implicit, constrained or arbitrary");
    sp->add_option("--periods", periods, "Log-uniform period range LO:HI");
    sp->add_option("--suspension", sw.suspension, "Max suspension as a fraction of T - C");
    sp->add_option("--f", sw.f, "Period-ratio parameter for fp tests");
    sp->add_option("--jobs", sw.jobs, "Grid points evaluated in parallel");
    sp->add_flag("--experimental-rt-bounds", sw.experimental_rt_bounds,
                 "Enable the response-time bound tests");

    auto *sf = app.add_subcommand("solve-factors", "Print the speed-up and capacity factors");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    if (!apply_tolerance_env())
        return exit_usage;

    if (*an) {
        if (task != "all") {
            try {
                std::size_t used = 0;
                const long v = std::stol(task, &used);
                if (used != task.size() || v < 1)
                    throw std::invalid_argument(task);
                analyze.task = static_cast<std::size_t>(v);
            } catch (const std::exception &) {
                std::cerr << "error: --task must be a positive index or 'all'\n";
                return exit_usage;
            }
        }
        analyze.processors = processors;
        return run_analyze(analyze, std::cout, std::cerr);
    }
    if (*sp) {
        try {
            sw.util = UtilGrid::parse(util);
            sw.tests = split_list(tests);
            sw.deadlines = k2u::parse_deadline_class(deadlines);
            const auto range = split_list(std::string(periods).replace(periods.find(':'), 1, ","));
            if (range.size() != 2)
                throw std::invalid_argument("--periods must be LO:HI");
            sw.period_lo = std::stod(range[0]);
            sw.period_hi = std::stod(range[1]);
        } catch (const std::exception &e) {
            std::cerr << "error: " << e.what() << "\n";
            return exit_usage;
        }
        return run_sweep(sw, std::cerr);
    }
    if (*sf)
        return run_solve_factors(std::cout);
    return exit_usage;
}
