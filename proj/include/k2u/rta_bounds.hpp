#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "k2u/taskmodel.hpp"

// Closed-form response-time upper bounds. Experimental: the CLI only exposes
// them behind --experimental-rt-bounds.
namespace k2u::rta_bounds {

struct RtBoundResult {
    std::optional<double> bound;
    std::vector<std::size_t> ordering_used; // higher-priority task indices as used
    bool precondition_ok = false;
    bool ties = false; // equal periods were ordered by input position
    std::string note;
};

/// (C_n + sum C_i - sum_i U_i sum_{j>=i} C_j) / (1 - sum U_i), with the
/// higher-priority tasks reindexed by non-increasing period.
/// Requires sum_{i<=n} U_i < 1.
RtBoundResult rt_bound_linear(const TaskSet &set, std::size_t n);

/// C_n / (2 / prod_{i<n} (U_i + 1) - 1), requires prod_{i<=n} (U_i + 1) <= 2.
RtBoundResult rt_bound_hyperbolic(const TaskSet &set, std::size_t n);

} // namespace k2u::rta_bounds
