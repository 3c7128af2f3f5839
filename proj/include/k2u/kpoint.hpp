#pragma once

#include <cstddef>
#include <vector>

#include "k2u/verdict.hpp"

namespace k2u {

/// Coefficients of one higher-priority task in a k-point effective test:
///     C_k + sum_i alpha_i t_i U_i + sum_{i<j} beta_i t_i U_i <= t_j
struct KPointEntry {
    double u = 0.0;
    double alpha = 1.0;
    double beta = 1.0;
};

/// Input of the framework. The test points themselves are consumed when the
/// coefficients are derived; only U_i, alpha_i, beta_i and C_k/t_k remain.
/// An empty entry list means the analysed task has the highest priority.
struct KPointInstance {
    std::vector<KPointEntry> entries;
    double c_over_t = 0.0;

    std::size_t k() const noexcept { return entries.size() + 1; }
};

/// Throws std::invalid_argument unless every u is in (0,1], alpha and beta
/// are positive and c_over_t > 0.
void validate(const KPointInstance &inst);

/// Hyperbolic bound with uniform upper bounds alpha >= alpha_i, beta >= beta_i:
///     C_k/t_k <= (alpha/beta + 1) / prod(beta U_j + 1) - alpha/beta
Verdict hyperbolic_bound(const KPointInstance &inst, double alpha, double beta);

/// Threshold on C_k/t_k + sum U_i. Branches are evaluated in order; for k = 1
/// the middle branch is skipped because it needs a (k-1)-th root.
double utilization_bound_constrained(std::size_t k, double alpha, double beta);

/// Checks C_k/t_k + sum U_i against utilization_bound_constrained.
Verdict utilization_bound_constrained_test(const KPointInstance &inst,
                                           double alpha, double beta);

/// beta * sum U_i <= ln((alpha/beta + 1) / (C_k/t_k + alpha/beta)).
Verdict utilization_bound_exclusive(const KPointInstance &inst, double alpha,
                                    double beta);

/// Per-task coefficients, entries taken in the caller's t_1 <= ... order:
///     0 < C_k/t_k <= 1 - sum_i U_i (alpha_i + beta_i) / prod_{j>=i} (beta_j U_j + 1)
/// Not permutation invariant.
Verdict extreme_points_bound(const KPointInstance &inst);

} // namespace k2u
