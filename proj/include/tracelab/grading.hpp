#pragma once

#include <vector>

#include "tracelab/monomial.hpp"

namespace tracelab {

// All monomials of trace degree exactly k, in canonical order: u_power
// descending, remaining degree distributed over trace factors as integer
// partitions. |grade_basis(k)| = sum_{k0=0}^{k} p(k - k0).
std::vector<TraceMonomial> grade_basis(int k);

// Integer partition function p(n), by recurrence.
long partition_count(int n);

} // namespace tracelab
