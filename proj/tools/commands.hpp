#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "plan.hpp"

namespace domany::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInsufficient = 3;

struct OutputOptions {
    std::string out;            // empty = stdout
    bool emit_plot_data = false; // companion .dat next to `out`
};

struct SimulateOptions {
    double p = 0.5;
    std::int32_t size = 64;
    Boundary boundary = Boundary::periodic;
    TimeSpec time = TimeSpec::fixation(); // finite n caps the sweep count
    std::int64_t replicates = 1;
    std::uint64_t seed = 1;
};

struct VerifyOptions {
    std::vector<std::string> suites; // empty = equivalence, invariants, bounds
    std::uint64_t seed = 1;
    int workers = 1;
};

struct ExponentsOptions {
    std::string which = "all"; // beta|eta|nu|all
    std::vector<TimeSpec> times = {TimeSpec::at(1)}; // domany observation times
    std::int32_t size = 128;
    std::int64_t replicates = 1000;
    std::uint64_t seed = 1;
    int workers = 1;
};

int cmd_simulate(const SimulateOptions& opt, const OutputOptions& out);
int cmd_measure(const MeasureOptions& opt, const OutputOptions& out);
int cmd_verify(const VerifyOptions& opt, const OutputOptions& out);
int cmd_exponents(const ExponentsOptions& opt, const OutputOptions& out);

} // namespace domany::cli
