#pragma once

// Slow reference implementations used as test oracles. They share no code
// with the library beyond Parameter: every prefix is rebuilt from alpha.

#include "qcircle/dynamics.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace oracle {

using qcircle::Complex;

inline Complex alpha(Complex c) {
    return 0.5 + 0.5 * std::sqrt(1.0 - 4.0 * c);
}

// xi of the word formed by the first k bits of `index` (length n, first bit
// most significant), rebuilt from scratch. At each step the square root is
// the one nearest exp(i pi (b + Q'/2)), Q' being the parent's phase exponent.
inline Complex xi_from_scratch(Complex c, std::uint64_t index, unsigned n, unsigned k) {
    const double pi = std::acos(-1.0);
    Complex z = alpha(c);
    double q = 0.0;
    for (unsigned j = 1; j <= k; ++j) {
        const int b = static_cast<int>((index >> (n - j)) & 1u);
        const double q_child = b + q / 2.0;
        const Complex target = std::polar(1.0, pi * q_child);
        Complex w = std::sqrt(z - c);
        if (std::real(w * std::conj(target)) < 0.0) {
            w = -w;
        }
        z = w;
        q = q_child;
    }
    return z;
}

// Delta_n(c, s) by naive enumeration, O(n^2 2^n), long double accumulation.
inline long double delta_naive(Complex c, double s, unsigned n) {
    long double total = 0.0L;
    for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << n); ++idx) {
        long double logsum = 0.0L;
        for (unsigned k = 1; k <= n; ++k) {
            logsum += std::log(2.0L * std::abs(xi_from_scratch(c, idx, n, k)));
        }
        total += std::exp(-static_cast<long double>(s) * logsum);
    }
    return total;
}

} // namespace oracle
