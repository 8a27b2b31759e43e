#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace tracelab {

struct AcceptanceOptions {
    bool skip_mc = false;     // skip the Monte Carlo criterion (AC-9)
    std::uint64_t seed = 0;   // master seed for all randomized checks
    int mc_paths = 100000;    // paths per N in AC-9
};

struct AcceptanceResult {
    std::string id;
    bool pass = false;
    bool skipped = false;
    double seconds = 0.0;
    std::string detail;
};

// Runs the full acceptance suite, printing one line per criterion to `log` as
// it completes. All tolerances are pinned in the implementation.
std::vector<AcceptanceResult> run_acceptance(const AcceptanceOptions& opt, std::ostream& log);

// Runs one criterion by id ("AC-1" .. "AC-11"). Throws std::invalid_argument
// on an unknown id.
AcceptanceResult run_criterion(const std::string& id, const AcceptanceOptions& opt,
                               std::ostream& log);

bool all_passed(const std::vector<AcceptanceResult>& results);

} // namespace tracelab
