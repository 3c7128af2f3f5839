#pragma once

#include <string>

namespace k2u {

/// Outcome of one schedulability test.
///
/// `value` is the tested left-hand side and `bound` the threshold it is
/// compared against. For OR-tests both fields belong to the disjunct named
/// in `note`. A not-applicable verdict is never accepted; `note` says why.
struct Verdict {
    bool accepted = false;
    bool applicable = true;
    double bound = 0.0;
    double value = 0.0;
    std::string test_name;
    std::string note;

    static Verdict compare(std::string test, double value, double bound,
                           std::string note = {});
    static Verdict not_applicable(std::string test, std::string why);
};

/// Accepts if either side accepts; reports the first accepting disjunct,
/// or `primary` when both reject.
Verdict either(const Verdict &primary, const Verdict &secondary,
               std::string test_name);

} // namespace k2u
