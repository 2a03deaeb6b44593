// Acceptance harness: runs every verification criterion at its stated
// tolerance and prints one pass/fail line per criterion.
#include <cstdio>
#include <iostream>

#include "nlslab/verify.hpp"

int main() {
    const auto results = nls::run_acceptance_suite(std::cout);
    int failures = 0;
    for (const auto& r : results)
        if (!r.passed) ++failures;
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
