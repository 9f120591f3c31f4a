#pragma once

#include <gmpxx.h>

#include <string>

namespace voa {

/// Exact arbitrary-precision rational, the coefficient type of everything.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat rat_pow(const Rat& base, unsigned e) {
    Rat acc(1), b = base;
    unsigned n = e;
    while (n) {
        if (n & 1u) acc *= b;
        b *= b;
        n >>= 1;
    }
    return acc;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

/// Binomial coefficient as an exact rational (arguments stay small here).
inline Rat rat_binom(long n, long k) {
    if (k < 0 || k > n) return Rat(0);
    Rat acc(1);
    for (long i = 0; i < k; ++i) { acc *= Rat(n - i); acc /= Rat(i + 1); }
    return acc;
}

inline Rat rat_factorial(long n) {
    Rat acc(1);
    for (long i = 2; i <= n; ++i) acc *= Rat(i);
    return acc;
}

} // namespace voa
