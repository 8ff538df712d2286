#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fracsob {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

// Names of the end-to-end verification checks, in execution order:
// volume, sobolev-optimality, sobolev-bound, poincare, faber-krahn,
// return-probability, escape-time, path-kernel, identities.
const std::vector<std::string>& acceptanceCheckNames();

// Runs one check at desk scale with all tolerances pinned in code.
// parallelism fans the per-field loops out over that many workers; results
// are gathered deterministically, so the outcome is thread-count independent.
CheckResult runAcceptanceCheck(const std::string& name, std::uint64_t seed = 0x5EEDF1E1Du,
                               int parallelism = 1);

// Runs the listed checks (all when the filter is empty). Never aborts early;
// each failure is reported in its result.
std::vector<CheckResult> runAcceptanceChecks(const std::vector<std::string>& only = {},
                                             std::uint64_t seed = 0x5EEDF1E1Du,
                                             int parallelism = 1);

}  // namespace fracsob
