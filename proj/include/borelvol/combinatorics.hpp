#pragma once

#include <cstdint>

namespace borelvol {

// Exact binomial coefficient; safe for the small arguments used here.
inline long long binom_ll(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

inline double binom(int n, int k) { return static_cast<double>(binom_ll(n, k)); }

}  // namespace borelvol
