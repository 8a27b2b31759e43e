#pragma once

#include <string>

#include "tracelab/heat.hpp"

namespace tracelab {

// On-disk memo of the semigroup recursion, keyed "u:k"/"v:k". Deleting it never
// changes any result, only runtime.
inline constexpr int kCacheFormatVersion = 1;

// TRACECALC_CACHE if set, else "tracecalc_cache.json" in the working directory.
std::string cache_path();

// Seeds `cache` from the file. Returns false (and loads nothing) on a missing
// or unreadable file, malformed JSON, or a version mismatch — the caller then
// recomputes from scratch; partial reads never happen.
bool load_cache(HeatCache& cache, const std::string& path = cache_path());

// Persists the current memo contents.
void save_cache(HeatCache& cache, const std::string& path = cache_path());

} // namespace tracelab
