// Acceptance gate: one pass/fail line per criterion. AC-9 runs the full
// Monte Carlo by default; ACCEPTANCE_SKIP_MC=1 or ACCEPTANCE_PATHS=<n> trim it
// for quick local iteration.
#include <cstdlib>
#include <iostream>

#include "tracelab/acceptance.hpp"

int main() {
    tracelab::AcceptanceOptions opt;
    if (const char* s = std::getenv("ACCEPTANCE_SKIP_MC")) opt.skip_mc = (std::string(s) == "1");
    if (const char* s = std::getenv("ACCEPTANCE_PATHS")) opt.mc_paths = std::atoi(s);
    if (const char* s = std::getenv("ACCEPTANCE_SEED")) opt.seed = std::strtoull(s, nullptr, 10);

    auto results = tracelab::run_acceptance(opt, std::cout);
    bool ok = tracelab::all_passed(results);
    std::cout << (ok ? "all acceptance criteria passed" : "ACCEPTANCE FAILURES PRESENT") << std::endl;
    return ok ? 0 : 1;
}
