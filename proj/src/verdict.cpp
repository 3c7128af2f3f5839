#include "k2u/verdict.hpp"

#include <atomic>
#include <charconv>
#include <stdexcept>

#include "k2u/numeric.hpp"

namespace k2u {

namespace {
std::atomic<double> g_accept_tolerance{kDefaultAcceptTolerance};
}

double accept_tolerance() noexcept
{
    return g_accept_tolerance.load(std::memory_order_relaxed);
}

void set_accept_tolerance(double tol)
{
    if (!(tol >= 0.0) || !std::isfinite(tol))
        throw std::invalid_argument("accept tolerance must be finite and >= 0");
    g_accept_tolerance.store(tol, std::memory_order_relaxed);
}

std::string format_number(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

Verdict Verdict::compare(std::string test, double value, double bound, std::string note)
{
    Verdict v;
    v.accepted = leq_tol(value, bound);
    v.value = value;
    v.bound = bound;
    v.test_name = std::move(test);
    v.note = std::move(note);
    return v;
}

Verdict Verdict::not_applicable(std::string test, std::string why)
{
    Verdict v;
    v.accepted = false;
    v.applicable = false;
    v.test_name = std::move(test);
    v.note = std::move(why);
    return v;
}

Verdict either(const Verdict &primary, const Verdict &secondary, std::string test_name)
{
    Verdict out = primary.accepted || !secondary.accepted ? primary : secondary;
    if (!primary.applicable && secondary.applicable && !secondary.accepted)
        out = secondary;
    out.test_name = std::move(test_name);
    return out;
}

} // namespace k2u
