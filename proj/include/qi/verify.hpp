#ifndef QI_VERIFY_HPP
#define QI_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace qi {

struct SuiteResult {
    std::string name;
    int cases = 0;
    int failures = 0;
    std::string first_failure; // empty when everything passed
};

/// Runs every module's property suite with `cases` random instances per
/// property. Deterministic for a fixed (seed, cases) pair.
std::vector<SuiteResult> run_property_suites(std::uint64_t seed, int cases);

} // namespace qi

#endif
