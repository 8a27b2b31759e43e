#pragma once

#include <map>
#include <string>

namespace tracelab {

// A single basis element u^k * v_1^{m_1} v_2^{m_2} ... of C[u, v].
// trace_factors maps power l >= 1 to multiplicity m_l >= 1; entries with
// multiplicity 0 are never stored, so equality is plain member equality.
struct TraceMonomial {
    int u_power = 0;
    std::map<int, int> trace_factors;

    static TraceMonomial one() { return {}; }
    static TraceMonomial u(int k) {
        TraceMonomial m;
        m.u_power = k;
        return m;
    }
    static TraceMonomial v(int l, int mult = 1) {
        TraceMonomial m;
        if (mult > 0) m.trace_factors[l] = mult;
        return m;
    }

    TraceMonomial times(const TraceMonomial& o) const {
        TraceMonomial r = *this;
        r.u_power += o.u_power;
        for (auto& [l, m] : o.trace_factors) r.trace_factors[l] += m;
        return r;
    }

    bool operator==(const TraceMonomial& o) const {
        return u_power == o.u_power && trace_factors == o.trace_factors;
    }
    bool operator!=(const TraceMonomial& o) const { return !(*this == o); }
};

// Total number of U factors: k + sum l * m_l. The grading every operator here preserves.
inline int trace_degree(const TraceMonomial& m) {
    int d = m.u_power;
    for (auto& [l, mult] : m.trace_factors) d += l * mult;
    return d;
}

// Canonical order: u_power descending, then trace factors compared from the
// highest power down, higher multiplicity first. Fixed so operator matrices
// and CSV output are byte-for-byte reproducible.
struct MonomialOrder {
    bool operator()(const TraceMonomial& a, const TraceMonomial& b) const {
        if (a.u_power != b.u_power) return a.u_power > b.u_power;
        auto ia = a.trace_factors.rbegin(), ib = b.trace_factors.rbegin();
        for (; ia != a.trace_factors.rend() && ib != b.trace_factors.rend(); ++ia, ++ib) {
            if (ia->first != ib->first) return ia->first > ib->first;
            if (ia->second != ib->second) return ia->second > ib->second;
        }
        return ia != a.trace_factors.rend();
    }
};

// Label form used for CSV headers, e.g. "u^2*v1*v3^2"; the unit monomial is "1".
inline std::string monomial_to_string(const TraceMonomial& m) {
    std::string out;
    if (m.u_power == 1) out = "u";
    else if (m.u_power > 1) out = "u^" + std::to_string(m.u_power);
    for (auto& [l, mult] : m.trace_factors) {
        if (!out.empty()) out += "*";
        out += "v" + std::to_string(l);
        if (mult > 1) out += "^" + std::to_string(mult);
    }
    return out.empty() ? "1" : out;
}

} // namespace tracelab
