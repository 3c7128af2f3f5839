#pragma once

#include <cstddef>
#include <vector>

#include "k2u/kpoint.hpp"
#include "k2u/taskmodel.hpp"
#include "k2u/verdict.hpp"

// Global rate-monotonic tests on M identical processors. All of them need
// implicit deadlines and RM priority order (T_i <= T_k for every i < k).
namespace k2u::multiproc {

enum class Model { sporadic, dag, suspending };

const char *to_string(Model m) noexcept;

struct GlobalSetup {
    int processors = 1;
    Model model = Model::sporadic;
    double effective_demand = 0.0;
    std::vector<double> points; // floor(T_k/T_i) T_i for i < k, ascending, then T_k
    KPointInstance instance;    // alpha_i <= 2/M, beta_i <= 1/M
};

/// Throws ModelError when the model needs a field the task lacks, and
/// std::invalid_argument when the set is not implicit-deadline RM ordered.
GlobalSetup build_global_setup(const TaskSet &set, std::size_t k, Model model);

/// Carry-in workload (ceil(t/T) - 1) C + 2C. Throws for t <= 0.
double workload_w(const Task &task, double t);

/// C_k + sum_{i<k} W_i(t)/M <= t at some setup point.
Verdict grm_naive_test(const TaskSet &set, std::size_t k);

/// Closed-form k2U tests. sporadic and dag are an OR of a product and a sum
/// disjunct; suspending only has the product form. The dag product runs over
/// j = 1..k (it includes U_k), the others over j < k.
Verdict grm_closed_form_test(const TaskSet &set, std::size_t k, Model model);
Verdict grm_closed_form_product(const TaskSet &set, std::size_t k, Model model);
Verdict grm_closed_form_sum(const TaskSet &set, std::size_t k, Model model);

/// Whole-set DAG test (Delta_max + 2) prod_all (U_i/M + 1) <= 3, monotone in
/// every U_i so it doubles as an admission test.
Verdict fast_monotonic_test(const TaskSet &set);
Verdict fast_monotonic_bound(double delta_max, const std::vector<double> &utils,
                             int processors);

/// (U_k^max + 1) prod_{j<k} (U_j/M + 1) <= 2 OR sum_{j<k} U_j/M <= ln(2/(U_k^max + 1)).
Verdict grm_tight_test(const TaskSet &set, std::size_t k);
Verdict grm_tight_product(const TaskSet &set, std::size_t k);
Verdict grm_tight_sum(const TaskSet &set, std::size_t k);

/// sum_{j<=k} U_j <= (M/2)(1 - U_k^max) + U_k^max
Verdict bertogna_test(const TaskSet &set, std::size_t k);

// Root of y = ln(2/(1+y)), i.e. 1/2.668 to the precision of that constant.
inline constexpr double kRmUsThreshold = 0.3748225281836248;

struct RmUsPartition {
    std::vector<std::size_t> top; // U_i > threshold, input order
    std::vector<std::size_t> rm;  // the rest, by period (stable)
};

RmUsPartition rm_us_classify(const TaskSet &set, double threshold = kRmUsThreshold);

} // namespace k2u::multiproc
