#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "k2u/kpoint.hpp"
#include "k2u/taskmodel.hpp"
#include "k2u/verdict.hpp"

// Uniprocessor fixed-priority analyses. Task indices are 0-based positions
// in the TaskSet; every task before `k` has higher priority.
namespace k2u::uniproc {

/// Exact time-demand analysis for a task with D_k <= T_k. Demand is checked
/// at every higher-priority release m*T_i <= D_k and at D_k itself.
Verdict tda_exact(const TaskSet &set, std::size_t k);

/// Least fixed point of R = C_k + sum ceil(R/T_i) C_i, iterated from C_k.
/// std::nullopt when R grows past horizon_factor * T_k.
std::optional<double> rta_fixed_point(const TaskSet &set, std::size_t k,
                                      double horizon_factor = 1e3);

double dbf(const Task &task, double t);

/// EDF feasibility by the demand-bound test at every absolute deadline up to
/// the horizon. U > 1 rejects and implicit deadlines reduce to U <= 1. Without
/// an explicit horizon the scan stops at the smaller of hyperperiod + max D
/// (integral periods) and max(max D, sum (T_i - D_i) U_i / (1 - U)) (U < 1).
/// U = 1 without an integral hyperperiod, or a derived horizon too long to
/// scan, is reported as an undecided reject.
Verdict edf_dbf_feasible(const TaskSet &set,
                         std::optional<double> horizon = std::nullopt);

struct ConstrainedKPointSetup {
    KPointInstance instance;
    double virtual_wcet = 0.0;
    std::vector<std::size_t> hp1; // sorted by last release before D_k
    std::vector<std::size_t> hp2;
    std::vector<double> points;   // t_i for hp1 (ascending), then D_k
};

/// hp1 = higher-priority tasks with T_i < D_k, each with t_i = floor(D_k/T_i) T_i,
/// alpha_i = 1 and beta_i = T_i / t_i. hp2 is folded into the virtual WCET.
/// With `arbitrary`, the analysed task contributes ceil(D_k/T_k) C_k.
ConstrainedKPointSetup build_kpoint_constrained(const TaskSet &set, std::size_t k,
                                                bool arbitrary);

/// Hyperbolic test OR the Liu-Layland style sum test on the k-point setup.
/// f >= 2 uses the period-ratio refinement, which requires f T_i <= D_k for
/// every hp1 task (and, for D_k > T_k, for all tasks including f T_k <= D_k
/// under RM). Arbitrary deadlines are selected automatically when D_k > T_k.
Verdict fp_hyperbolic_test(const TaskSet &set, std::size_t k, int f = 1);

/// Only the product (hyperbolic) disjunct.
Verdict fp_product_test(const TaskSet &set, std::size_t k, int f = 1);

/// Only the sum disjunct.
Verdict fp_sum_test(const TaskSet &set, std::size_t k, int f = 1);

/// Single busy-window test for D_k > T_k.
Verdict busy_window_sufficient(const TaskSet &set, std::size_t k);

/// max{(C_k' + sum_{hp1} dbf_i(D_k)) / D_k, sum_{i<k} U_i}: a lower bound on
/// the processor speed any scheduler needs.
double speedup_witness(const TaskSet &set, std::size_t k);

} // namespace k2u::uniproc
