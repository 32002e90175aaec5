#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace domany::cli {

struct CheckResult {
    std::string check;
    std::string paper_ref; // which claim the check exercises
    bool pass = false;
    std::string detail;
};

// suite in {"equivalence", "invariants", "bounds"}; throws
// std::invalid_argument for anything else.
std::vector<CheckResult> run_verify_suite(const std::string& suite, std::uint64_t seed,
                                          int workers);

} // namespace domany::cli
