#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace mpfam {

/// Exact unbounded integer used for every count. No floating point is used
/// anywhere in counting or formula code.
using BigCount = boost::multiprecision::cpp_int;

/// Exact rational, used by the unimodality and ratio checks.
using Rational = boost::multiprecision::cpp_rational;

/// base^exp for exp >= 0.
inline BigCount ipow(BigCount base, unsigned long exp) {
    BigCount r = 1;
    while (exp != 0) {
        if (exp & 1u) r *= base;
        base *= base;
        exp >>= 1u;
    }
    return r;
}

}  // namespace mpfam
