#pragma once

namespace k2u::factors {

struct FactorResult {
    double factor = 0.0;   // reported constant, 1 / root
    double root = 0.0;     // value of the fixed-point quantity at the solution
    double variable = 0.0; // bisection variable (equals root for capacity factors)
    double residual = 0.0;
    int iterations = 0;
};

/// Solves y = ln(a / (b0 + y)) on (0, a - b0) by bisection. The capacity
/// augmentation factor is 1/y: (3, 2) gives the DAG factor, (2, 1) the
/// sporadic one. Throws std::invalid_argument unless a > b0 >= 0.
FactorResult solve_capacity_factor(double a, double b0);

/// Solves (1 + x)/2 = ln(2 / (1 + x)) on (0, 1); factor = 2 / (1 + x).
FactorResult solve_speedup_factor();

} // namespace k2u::factors
