#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace clusterlab {

// Elements of Z^{Q_0}: dimension vectors, denominator vectors, e_i.
using IntVec = std::vector<long long>;

inline IntVec ivec_zero(int n) { return IntVec(static_cast<size_t>(n), 0); }

inline IntVec ivec_unit(int n, int i) {
    IntVec v(static_cast<size_t>(n), 0);
    v[static_cast<size_t>(i)] = 1;
    return v;
}

inline IntVec ivec_add(const IntVec& a, const IntVec& b) {
    IntVec r(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

inline IntVec ivec_sub(const IntVec& a, const IntVec& b) {
    IntVec r(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

inline IntVec ivec_scale(const IntVec& a, long long c) {
    IntVec r(a);
    for (auto& x : r) x *= c;
    return r;
}

inline IntVec ivec_max(const IntVec& a, const IntVec& b) {
    IntVec r(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] = std::max(r[i], b[i]);
    return r;
}

inline long long ivec_sum(const IntVec& a) {
    long long s = 0;
    for (auto x : a) s += x;
    return s;
}

inline std::string ivec_render(const IntVec& a) {
    std::string s = "(";
    for (size_t i = 0; i < a.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(a[i]);
    }
    return s + ")";
}

} // namespace clusterlab
