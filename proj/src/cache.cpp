#include "tracelab/cache.hpp"

#include <cstdlib>
#include <fstream>

#include "tracelab/json_io.hpp"

namespace tracelab {

std::string cache_path() {
    if (const char* env = std::getenv("TRACECALC_CACHE")) return env;
    return "tracecalc_cache.json";
}

bool load_cache(HeatCache& cache, const std::string& path) {
    std::ifstream is(path);
    if (!is) return false;
    json j;
    std::map<std::pair<char, int>, TPolyPoly> parsed;
    try {
        is >> j;
        if (j.at("version").get<int>() != kCacheFormatVersion) return false;
        for (auto& [key, val] : j.at("entries").items()) {
            char kind = key.at(0);
            if ((kind != 'u' && kind != 'v') || key.size() < 3 || key[1] != ':') return false;
            int k = std::stoi(key.substr(2));
            SemigroupValue sv = semigroup_from_json(val);
            if (sv.components.size() != 1 || sv.components[0].grade != k) return false;
            parsed[{kind, k}] = std::move(sv.components[0].body);
        }
    } catch (...) {
        return false; // corrupted file: recompute everything
    }
    // All entries parsed cleanly; only now touch the live cache.
    for (auto& [key, body] : parsed) cache.seed(key.first, key.second, std::move(body));
    return true;
}

void save_cache(HeatCache& cache, const std::string& path) {
    json entries = json::object();
    auto emit = [&entries](char kind, const std::map<int, TPolyPoly>& table) {
        for (auto& [k, body] : table) {
            if (k == 0) continue;
            SemigroupValue sv;
            sv.components.push_back({k, body});
            entries[std::string(1, kind) + ":" + std::to_string(k)] = semigroup_to_json(sv);
        }
    };
    emit('u', cache.snapshot_u());
    emit('v', cache.snapshot_v());
    json j = {{"version", kCacheFormatVersion}, {"entries", entries}};
    std::ofstream os(path);
    os << j.dump() << "\n";
}

} // namespace tracelab
