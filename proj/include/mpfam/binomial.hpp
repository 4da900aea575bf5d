#pragma once

#include <string>

#include "errors.hpp"
#include "numbers.hpp"

namespace mpfam {

/// C(n, k), exact. Returns 0 when k < 0 or k > n. Throws NegativeNError when
/// n < 0 (checked before the range rule, so a negative row is never silently 0).
/// Multiplicative evaluation: every intermediate quotient is an integer.
inline BigCount binomial(long long n, long long k) {
    if (n < 0)
        throw NegativeNError("binomial: n must be nonnegative, got " + std::to_string(n));
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigCount r = 1;
    for (long long i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;  // r == C(n-k+i, i) after this line
    }
    return r;
}

}  // namespace mpfam
