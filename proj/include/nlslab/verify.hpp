#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace nls {

struct CheckResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

/// Run the full verification suite (the nine acceptance checks), printing
/// one pass/fail line per criterion to `os` as results come in.
/// `trial_seed` feeds the randomized interpolation-inequality trials.
std::vector<CheckResult> run_acceptance_suite(std::ostream& os,
                                              std::uint64_t trial_seed = 987654321);

} // namespace nls
