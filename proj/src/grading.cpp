#include "tracelab/grading.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace tracelab {

namespace {

// Partitions of n with parts <= max_part, emitted as power -> multiplicity maps.
void partitions_rec(int n, int max_part, std::map<int, int>& cur,
                    std::vector<std::map<int, int>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int part = std::min(n, max_part); part >= 1; --part) {
        cur[part]++;
        partitions_rec(n - part, part, cur, out);
        if (--cur[part] == 0) cur.erase(part);
    }
}

} // namespace

std::vector<TraceMonomial> grade_basis(int k) {
    if (k < 0) throw std::invalid_argument("grade_basis: negative grade");
    std::vector<TraceMonomial> basis;
    for (int k0 = k; k0 >= 0; --k0) {
        std::vector<std::map<int, int>> parts;
        std::map<int, int> cur;
        partitions_rec(k - k0, k - k0, cur, parts);
        std::vector<TraceMonomial> block;
        block.reserve(parts.size());
        for (auto& p : parts) {
            TraceMonomial m;
            m.u_power = k0;
            m.trace_factors = std::move(p);
            block.push_back(std::move(m));
        }
        std::sort(block.begin(), block.end(),
                  [](const TraceMonomial& a, const TraceMonomial& b) { return MonomialOrder{}(a, b); });
        basis.insert(basis.end(), block.begin(), block.end());
    }
    return basis;
}

long partition_count(int n) {
    if (n < 0) return 0;
    // Euler's pentagonal number recurrence.
    static std::vector<long> memo{1};
    for (int m = static_cast<int>(memo.size()); m <= n; ++m) {
        long total = 0;
        for (int j = 1;; ++j) {
            int g1 = j * (3 * j - 1) / 2, g2 = j * (3 * j + 1) / 2;
            if (g1 > m && g2 > m) break;
            long sign = (j % 2 == 1) ? 1 : -1;
            if (g1 <= m) total += sign * memo[m - g1];
            if (g2 <= m) total += sign * memo[m - g2];
        }
        memo.push_back(total);
    }
    return memo[n];
}

} // namespace tracelab
