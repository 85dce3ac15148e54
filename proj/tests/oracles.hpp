#pragma once

// Independent oracles used by the test and acceptance suites; these must not
// share code paths with the library computations they check.

#include <vector>

#include "clusterlab/quiver.hpp"

namespace oracles {

// Positive roots of a simply-laced finite-type diagram: nonzero d >= 0 with
// Tits form q(d) = sum d_i^2 - sum_{edges} d_i d_j equal to 1, enumerated
// over a box.  Almost positive roots add n (the negative simple roots).
inline long long positive_root_count(const clusterlab::Quiver& q) {
    int n = q.n;
    std::vector<long long> d(static_cast<size_t>(n), 0);
    long long count = 0;
    const long long box = 3;
    while (true) {
        long long tits = 0;
        bool nonzero = false;
        for (int i = 0; i < n; ++i) {
            tits += d[static_cast<size_t>(i)] * d[static_cast<size_t>(i)];
            if (d[static_cast<size_t>(i)] != 0) nonzero = true;
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (q.b[static_cast<size_t>(i)][static_cast<size_t>(j)] > 0)
                    tits -= q.b[static_cast<size_t>(i)][static_cast<size_t>(j)] * d[static_cast<size_t>(i)] *
                            d[static_cast<size_t>(j)];
        if (nonzero && tits == 1) ++count;
        size_t i = 0;
        while (i < d.size() && d[i] == box) { d[i] = 0; ++i; }
        if (i == d.size()) break;
        ++d[i];
    }
    return count;
}

inline long long almost_positive_root_count(const clusterlab::Quiver& q) {
    return positive_root_count(q) + q.n;
}

// Number of clusters in type A_n: the Catalan number C(n+1).
inline long long catalan_cluster_count(int n) {
    // C(m) = binom(2m, m)/(m+1) with m = n+1.
    long long m = n + 1;
    long long num = 1, den = 1;
    for (long long i = 0; i < m; ++i) {
        num *= 2 * m - i;
        den *= i + 1;
    }
    return num / den / (m + 1);
}

} // namespace oracles
