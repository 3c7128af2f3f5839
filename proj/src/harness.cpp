#include "k2u/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "k2u/factors.hpp"
#include "k2u/numeric.hpp"
#include "k2u/multiproc.hpp"
#include "k2u/rta_bounds.hpp"
#include "k2u/uniproc.hpp"

namespace k2u::harness {

using nlohmann::json;

namespace {

using multiproc::Model;

Verdict rt_verdict(const std::string &name, const rta_bounds::RtBoundResult &r, const Task &task)
{
    if (!r.bound)
        return Verdict::not_applicable(name, r.note);
    return Verdict::compare(name, *r.bound, task.deadline,
                            r.ties ? "response-time bound; equal periods ordered by position"
                                   : "response-time bound");
}

std::vector<TestEntry> make_registry()
{
    using namespace uniproc;
    std::vector<TestEntry> r;
    auto per_task = [&](std::string id, auto fn, bool experimental = false) {
        r.push_back({std::move(id), Scope::per_task, experimental, fn});
    };
    per_task("tda", [](const TaskSet &s, std::size_t k, const TestOptions &) {
        return tda_exact(s, k);
    });
    per_task("fp-hyperbolic", [](const TaskSet &s, std::size_t k, const TestOptions &o) {
        return fp_hyperbolic_test(s, k, o.f);
    });
    per_task("fp-sum", [](const TaskSet &s, std::size_t k, const TestOptions &o) {
        return fp_sum_test(s, k, o.f);
    });
    per_task("busy-window", [](const TaskSet &s, std::size_t k, const TestOptions &) {
        return busy_window_sufficient(s, k);
    });
    r.push_back({"edf-dbf", Scope::whole_set, false,
                 [](const TaskSet &s, std::size_t, const TestOptions &) {
                     return edf_dbf_feasible(s);
                 }});
    per_task("grm-naive", [](const TaskSet &s, std::size_t k, const TestOptions &) {
        return multiproc::grm_naive_test(s, k);
    });
    per_task("grm", [](const TaskSet &s, std::size_t k, const TestOptions &) {
        return multiproc::grm_closed_form_test(s, k, Model::sporadic);
    });
    per_task("grm-dag", [](const TaskSet &s, std::size_t k, const TestOptions &) {
        return multiproc::grm_closed_form_test(s, k, Model::dag);
    });
    per_task("grm-suspend", [](const TaskSet &s, std::size_t k, const TestOptions &) {
        return multiproc::grm_closed_form_test(s, k, Model::suspending);
    });
    r.push_back({"grm-fast", Scope::whole_set, false,
                 [](const TaskSet &s, std::size_t, const TestOptions &) {
                     return multiproc::fast_monotonic_test(s);
                 }});
    per_task("grm-tight", [](const TaskSet &s, std::size_t k, const TestOptions &) {
        return multiproc::grm_tight_test(s, k);
    });
    per_task("bertogna", [](const TaskSet &s, std::size_t k, const TestOptions &) {
        return multiproc::bertogna_test(s, k);
    });
    r.push_back({"rm-us", Scope::classification, false,
                 [](const TaskSet &s, std::size_t, const TestOptions &) {
                     const auto p = multiproc::rm_us_classify(s);
                     Verdict v = Verdict::compare("rm-us", 0.0, 0.0);
                     v.note = std::to_string(p.top.size()) + " top-priority tasks";
                     return v;
                 }});
    per_task(
        "rt-linear",
        [](const TaskSet &s, std::size_t k, const TestOptions &) {
            return rt_verdict("rt-linear", rta_bounds::rt_bound_linear(s, k), s[k]);
        },
        true);
    per_task(
        "rt-hyperbolic",
        [](const TaskSet &s, std::size_t k, const TestOptions &) {
            return rt_verdict("rt-hyperbolic", rta_bounds::rt_bound_hyperbolic(s, k), s[k]);
        },
        true);
    return r;
}

json verdict_json(const Verdict &v, std::optional<std::size_t> task)
{
    json j;
    j["task"] = task ? json(*task + 1) : json(nullptr);
    j["accepted"] = v.accepted;
    j["applicable"] = v.applicable;
    if (v.applicable) {
        j["value"] = v.value;
        j["bound"] = v.bound;
    }
    j["note"] = v.note;
    return j;
}

json indices_json(const std::vector<std::size_t> &idx)
{
    json a = json::array();
    for (std::size_t i : idx)
        a.push_back(i + 1);
    return a;
}

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

bool needs_critical_path(const std::vector<std::string> &tests)
{
    return std::any_of(tests.begin(), tests.end(),
                       [](const std::string &t) { return t == "grm-dag" || t == "grm-fast"; });
}

} // namespace

const std::vector<TestEntry> &registry()
{
    static const std::vector<TestEntry> r = make_registry();
    return r;
}

const TestEntry *find_test(const std::string &id)
{
    for (const auto &t : registry())
        if (t.id == id)
            return &t;
    return nullptr;
}

bool accepts_set(const TestEntry &test, const TaskSet &set, const TestOptions &opts)
{
    switch (test.scope) {
    case Scope::classification:
        return true;
    case Scope::whole_set:
        return test.run(set, 0, opts).accepted;
    case Scope::per_task:
        for (std::size_t k = 0; k < set.size(); ++k)
            if (!test.run(set, k, opts).accepted)
                return false;
        return true;
    }
    return false;
}

int run_analyze(const AnalyzeArgs &args, std::ostream &out, std::ostream &err)
{
    const TestEntry *test = find_test(args.test);
    if (!test) {
        err << "error: unknown test '" << args.test << "'\n";
        return exit_usage;
    }
    if (test->experimental && !args.experimental_rt_bounds) {
        err << "error: test '" << args.test << "' needs --experimental-rt-bounds\n";
        return exit_usage;
    }
    if (args.f < 1) {
        err << "error: --f must be >= 1\n";
        return exit_usage;
    }

    try {
        TaskSet set = load_taskset(args.input);
        if (args.processors)
            set = set.with_processors(*args.processors);
        if (args.task && (*args.task < 1 || *args.task > set.size())) {
            err << "error: --task must be in 1.." << set.size() << "\n";
            return exit_usage;
        }
        const TestOptions opts{args.f};

        json report;
        report["test"] = test->id;
        report["processors"] = set.processors();

        if (test->scope == Scope::classification) {
            const auto p = multiproc::rm_us_classify(set);
            report["threshold"] = multiproc::kRmUsThreshold;
            report["top"] = indices_json(p.top);
            report["rm"] = indices_json(p.rm);
            out << report.dump(2) << "\n";
            return exit_accepted;
        }

        bool all = true;
        json verdicts = json::array();
        if (test->scope == Scope::whole_set) {
            const auto v = test->run(set, 0, opts);
            all = v.accepted;
            verdicts.push_back(verdict_json(v, std::nullopt));
        } else {
            std::size_t first = 0;
            std::size_t last = set.size();
            if (args.task) {
                first = *args.task - 1;
                last = *args.task;
            }
            for (std::size_t k = first; k < last; ++k) {
                const auto v = test->run(set, k, opts);
                all = all && v.accepted;
                verdicts.push_back(verdict_json(v, k));
            }
        }
        report["verdicts"] = std::move(verdicts);
        report["accepted"] = all;
        out << report.dump(2) << "\n";
        return all ? exit_accepted : exit_rejected;
    } catch (const ModelError &e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
}

std::vector<double> UtilGrid::points() const
{
    std::vector<double> p;
    for (std::size_t i = 0;; ++i) {
        const double u = lo + static_cast<double>(i) * step;
        if (u > hi + 1e-9 * step)
            break;
        p.push_back(u);
    }
    return p;
}

UtilGrid UtilGrid::parse(const std::string &spec)
{
    auto number = [&](std::string_view s) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size())
            throw std::invalid_argument("bad number '" + std::string(s) + "' in util grid");
        return v;
    };
    std::vector<std::string_view> parts;
    std::string_view rest = spec;
    while (true) {
        const auto colon = rest.find(':');
        parts.push_back(rest.substr(0, colon));
        if (colon == std::string_view::npos)
            break;
        rest.remove_prefix(colon + 1);
    }

    UtilGrid g;
    if (parts.size() == 1) {
        g.lo = g.hi = number(parts[0]);
        g.step = 1.0;
    } else if (parts.size() == 3) {
        g.lo = number(parts[0]);
        g.hi = number(parts[1]);
        g.step = number(parts[2]);
    } else {
        throw std::invalid_argument("util grid must be LO:HI:STEP or a single value");
    }
    if (!(g.lo > 0.0) || !(g.hi >= g.lo) || !(g.step > 0.0))
        throw std::invalid_argument("util grid needs 0 < LO <= HI and STEP > 0");
    return g;
}

std::vector<SweepRecord> sweep(const SweepArgs &args)
{
    if (args.sets < 1)
        throw std::invalid_argument("--sets must be >= 1");
    if (args.n < 1)
        throw std::invalid_argument("--n must be >= 1");
    if (args.processors < 1)
        throw std::invalid_argument("--processors must be >= 1");
    if (args.f < 1)
        throw std::invalid_argument("--f must be >= 1");
    if (args.tests.empty())
        throw std::invalid_argument("--tests must name at least one test");

    std::vector<const TestEntry *> tests;
    for (const auto &id : args.tests) {
        const TestEntry *t = find_test(id);
        if (!t)
            throw std::invalid_argument("unknown test '" + id + "'");
        if (t->scope == Scope::classification)
            throw std::invalid_argument("test '" + id + "' is a classification, not a test");
        if (t->experimental && !args.experimental_rt_bounds)
            throw std::invalid_argument("test '" + id + "' needs --experimental-rt-bounds");
        tests.push_back(t);
    }

    const auto grid = args.util.points();
    const double m = static_cast<double>(args.processors);
    for (double u : grid)
        if (u * m > static_cast<double>(args.n))
            throw std::invalid_argument("util " + format_number(u) +
                                        " needs more than one unit per task");

    const TestOptions opts{args.f};
    const bool with_cp = needs_critical_path(args.tests);

    auto run_point = [&](std::size_t p) {
        std::vector<std::size_t> accepted(tests.size(), 0);
        const std::uint64_t point_seed = splitmix64(args.seed ^ splitmix64(p));
        for (std::size_t s = 0; s < args.sets; ++s) {
            GeneratorParams gp;
            gp.n = args.n;
            gp.total_util = grid[p] * m;
            gp.period_lo = args.period_lo;
            gp.period_hi = args.period_hi;
            gp.deadlines = args.deadlines;
            gp.seed = splitmix64(point_seed + s);
            gp.with_critical_path = with_cp;
            gp.max_suspension_fraction = args.suspension;
            const TaskSet set = generate_taskset(gp).with_processors(args.processors);
            for (std::size_t t = 0; t < tests.size(); ++t)
                if (accepts_set(*tests[t], set, opts))
                    ++accepted[t];
        }
        return accepted;
    };

    std::vector<std::vector<std::size_t>> counts(grid.size());
    if (args.jobs > 1) {
        std::vector<std::future<std::vector<std::size_t>>> pending;
        std::size_t next = 0;
        while (next < grid.size() || !pending.empty()) {
            while (next < grid.size() && pending.size() < args.jobs) {
                pending.push_back(std::async(std::launch::async, run_point, next));
                ++next;
            }
            const std::size_t done = next - pending.size();
            counts[done] = pending.front().get();
            pending.erase(pending.begin());
        }
    } else {
        for (std::size_t p = 0; p < grid.size(); ++p)
            counts[p] = run_point(p);
    }

    std::vector<SweepRecord> rows;
    for (std::size_t p = 0; p < grid.size(); ++p) {
        for (std::size_t t = 0; t < tests.size(); ++t) {
            SweepRecord r;
            r.test_name = tests[t]->id;
            r.n = args.n;
            r.processors = args.processors;
            r.target_util = grid[p];
            r.sets_evaluated = args.sets;
            r.accepted = counts[p][t];
            r.acceptance_ratio =
                static_cast<double>(r.accepted) / static_cast<double>(r.sets_evaluated);
            r.seed = args.seed;
            rows.push_back(std::move(r));
        }
    }
    return rows;
}

std::string format_number(double v)
{
    return k2u::format_number(v);
}

std::string to_csv(const std::vector<SweepRecord> &rows)
{
    std::string csv = "test,n,m,util,sets,accepted,ratio,seed\n";
    for (const auto &r : rows) {
        csv += r.test_name + ',' + std::to_string(r.n) + ',' + std::to_string(r.processors) + ',' +
               format_number(r.target_util) + ',' + std::to_string(r.sets_evaluated) + ',' +
               std::to_string(r.accepted) + ',' + format_number(r.acceptance_ratio) + ',' +
               std::to_string(r.seed) + '\n';
    }
    return csv;
}

int run_sweep(const SweepArgs &args, std::ostream &err)
{
    std::vector<SweepRecord> rows;
    try {
        rows = sweep(args);
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    std::ofstream out(args.out, std::ios::binary);
    if (!out) {
        err << "error: cannot write '" << args.out << "'\n";
        return exit_usage;
    }
    out << to_csv(rows);
    if (!out) {
        err << "error: write to '" << args.out << "' failed\n";
        return exit_usage;
    }
    return exit_accepted;
}

int run_solve_factors(std::ostream &out)
{
    auto entry = [](const factors::FactorResult &r) {
        return json{{"factor", r.factor},         {"root", r.root},
                    {"variable", r.variable},     {"residual", r.residual},
                    {"iterations", r.iterations}};
    };
    json report;
    report["speedup"] = entry(factors::solve_speedup_factor());
    report["dag_capacity"] = entry(factors::solve_capacity_factor(3.0, 2.0));
    report["sporadic_capacity"] = entry(factors::solve_capacity_factor(2.0, 1.0));
    out << report.dump(2) << "\n";
    return exit_accepted;
}

} // namespace k2u::harness
