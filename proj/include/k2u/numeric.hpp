#pragma once

#include <algorithm>
#include <cmath>
#include <string>

namespace k2u {

// Relative slack used when a ratio is expected to be integral, e.g. (m*T)/T.
inline constexpr double kIntegralSlack = 1e-9;

// Default absolute tolerance on every accept boundary (value <= bound + tol).
inline constexpr double kDefaultAcceptTolerance = 1e-12;

/// Process-wide accept tolerance. The CLI overrides it from K2U_TOLERANCE
/// once at startup; library code only reads it.
double accept_tolerance() noexcept;
void set_accept_tolerance(double tol);

/// Shortest round-trip decimal form, independent of the C locale.
std::string format_number(double v);

inline bool leq_tol(double value, double bound) noexcept
{
    return value <= bound + accept_tolerance();
}

// ceil/floor that do not jump a step on round-off, so that
// ceil((3 * 0.1) / 0.1) == 3.
inline double robust_ceil(double x) noexcept
{
    return std::ceil(x - kIntegralSlack * std::max(1.0, std::fabs(x)));
}

inline double robust_floor(double x) noexcept
{
    return std::floor(x + kIntegralSlack * std::max(1.0, std::fabs(x)));
}

} // namespace k2u
