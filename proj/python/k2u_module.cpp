#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "k2u/factors.hpp"
#include "k2u/kpoint.hpp"
#include "k2u/multiproc.hpp"
#include "k2u/numeric.hpp"
#include "k2u/rta_bounds.hpp"
#include "k2u/taskmodel.hpp"
#include "k2u/uniproc.hpp"
#include "k2u/verdict.hpp"

namespace py = pybind11;
using namespace k2u;

PYBIND11_MODULE(_core, m)
{
    m.doc() = "k-point effective schedulability tests";

    py::register_exception<ModelError>(m, "ModelError", PyExc_ValueError);

    py::class_<Verdict>(m, "Verdict")
        .def_readonly("accepted", &Verdict::accepted)
        .def_readonly("applicable", &Verdict::applicable)
        .def_readonly("value", &Verdict::value)
        .def_readonly("bound", &Verdict::bound)
        .def_readonly("test_name", &Verdict::test_name)
        .def_readonly("note", &Verdict::note)
        .def("__bool__", [](const Verdict &v) { return v.accepted; })
        .def("__repr__", [](const Verdict &v) {
            return "<Verdict " + v.test_name + (v.accepted ? " accepted" : " rejected") +
                   " value=" + format_number(v.value) + " bound=" + format_number(v.bound) + ">";
        });

    py::class_<Task>(m, "Task")
        .def(py::init([](double c, double t, std::optional<double> d, double s,
                         std::optional<double> cp, std::vector<double> frames) {
                 Task task = Task::sporadic(c, t, d.value_or(t));
                 task.suspension = s;
                 task.critical_path = cp;
                 task.frames = std::move(frames);
                 validate_task(task, 0);
                 return task;
             }),
             py::arg("c"), py::arg("t"), py::arg("d") = py::none(), py::arg("s") = 0.0,
             py::arg("cp") = py::none(), py::arg("frames") = std::vector<double>{})
        .def_readonly("wcet", &Task::wcet)
        .def_readonly("period", &Task::period)
        .def_readonly("deadline", &Task::deadline)
        .def_readonly("suspension", &Task::suspension)
        .def_readonly("critical_path", &Task::critical_path)
        .def_readonly("frames", &Task::frames)
        .def_property_readonly("utilization", &Task::utilization);

    py::class_<TaskSet>(m, "TaskSet")
        .def(py::init<std::vector<Task>, int>(), py::arg("tasks"), py::arg("processors") = 1)
        .def_property_readonly("tasks", &TaskSet::tasks)
        .def_property_readonly("processors", &TaskSet::processors)
        .def("__len__", &TaskSet::size)
        .def("__getitem__", [](const TaskSet &s, std::size_t i) {
            if (i >= s.size())
                throw py::index_error();
            return s[i];
        })
        .def("with_processors", &TaskSet::with_processors)
        .def("sorted_rm", &TaskSet::sorted_rm)
        .def("sorted_dm", &TaskSet::sorted_dm)
        .def("deadline_class",
             [](const TaskSet &s) { return std::string(to_string(s.deadline_class())); })
        .def("to_json", &serialize_taskset);

    m.def("parse_taskset", [](const std::string &text) { return parse_taskset(text); });
    m.def("load_taskset", &load_taskset);
    m.def(
        "generate_taskset",
        [](std::size_t n, double total_util, std::uint64_t seed, const std::string &deadlines,
           double period_lo, double period_hi) {
            GeneratorParams p;
            p.n = n;
            p.total_util = total_util;
            p.seed = seed;
            p.deadlines = parse_deadline_class(deadlines);
            p.period_lo = period_lo;
            p.period_hi = period_hi;
            return generate_taskset(p);
        },
        py::arg("n"), py::arg("total_util"), py::arg("seed") = 1,
        py::arg("deadlines") = "implicit", py::arg("period_lo") = 10.0,
        py::arg("period_hi") = 1000.0);
    m.def("phi", &phi);

    py::class_<KPointEntry>(m, "KPointEntry")
        .def(py::init([](double u, double alpha, double beta) {
                 return KPointEntry{u, alpha, beta};
             }),
             py::arg("u"), py::arg("alpha") = 1.0, py::arg("beta") = 1.0)
        .def_readonly("u", &KPointEntry::u)
        .def_readonly("alpha", &KPointEntry::alpha)
        .def_readonly("beta", &KPointEntry::beta);
    py::class_<KPointInstance>(m, "KPointInstance")
        .def(py::init([](std::vector<KPointEntry> entries, double c_over_t) {
                 return KPointInstance{std::move(entries), c_over_t};
             }),
             py::arg("entries"), py::arg("c_over_t"))
        .def_readonly("entries", &KPointInstance::entries)
        .def_readonly("c_over_t", &KPointInstance::c_over_t);
    m.def("hyperbolic_bound", &hyperbolic_bound);
    m.def("utilization_bound_constrained", &utilization_bound_constrained);
    m.def("utilization_bound_exclusive", &utilization_bound_exclusive);
    m.def("extreme_points_bound", &extreme_points_bound);

    m.def("tda_exact", &uniproc::tda_exact);
    m.def("rta_fixed_point", &uniproc::rta_fixed_point, py::arg("set"), py::arg("k"),
          py::arg("horizon_factor") = 1e3);
    m.def("edf_dbf_feasible", &uniproc::edf_dbf_feasible, py::arg("set"),
          py::arg("horizon") = py::none());
    m.def("fp_hyperbolic_test", &uniproc::fp_hyperbolic_test, py::arg("set"), py::arg("k"),
          py::arg("f") = 1);
    m.def("fp_sum_test", &uniproc::fp_sum_test, py::arg("set"), py::arg("k"), py::arg("f") = 1);
    m.def("busy_window_sufficient", &uniproc::busy_window_sufficient);
    m.def("speedup_witness", &uniproc::speedup_witness);

    py::enum_<multiproc::Model>(m, "Model")
        .value("sporadic", multiproc::Model::sporadic)
        .value("dag", multiproc::Model::dag)
        .value("suspending", multiproc::Model::suspending);
    m.def("workload_w", &multiproc::workload_w);
    m.def("grm_naive_test", &multiproc::grm_naive_test);
    m.def("grm_closed_form_test", &multiproc::grm_closed_form_test, py::arg("set"), py::arg("k"),
          py::arg("model") = multiproc::Model::sporadic);
    m.def("fast_monotonic_test", &multiproc::fast_monotonic_test);
    m.def("grm_tight_test", &multiproc::grm_tight_test);
    m.def("bertogna_test", &multiproc::bertogna_test);
    m.def(
        "rm_us_classify",
        [](const TaskSet &s, double threshold) {
            const auto p = multiproc::rm_us_classify(s, threshold);
            return py::make_tuple(p.top, p.rm);
        },
        py::arg("set"), py::arg("threshold") = multiproc::kRmUsThreshold);

    py::class_<factors::FactorResult>(m, "FactorResult")
        .def_readonly("factor", &factors::FactorResult::factor)
        .def_readonly("root", &factors::FactorResult::root)
        .def_readonly("variable", &factors::FactorResult::variable)
        .def_readonly("residual", &factors::FactorResult::residual)
        .def_readonly("iterations", &factors::FactorResult::iterations);
    m.def("solve_capacity_factor", &factors::solve_capacity_factor);
    m.def("solve_speedup_factor", &factors::solve_speedup_factor);

    m.def("rt_bound_linear",
          [](const TaskSet &s, std::size_t n) { return rta_bounds::rt_bound_linear(s, n).bound; });
    m.def("rt_bound_hyperbolic", [](const TaskSet &s, std::size_t n) {
        return rta_bounds::rt_bound_hyperbolic(s, n).bound;
    });
}
