// SPDX-License-Identifier: Apache-2.0
//
// Reference computations for the tests. They work on GMP rationals and plain
// brute force and share no code with the library's dyadic arithmetic.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace oracle {

inline mpq_class pow2q(std::uint64_t n) {
    mpz_class p = 1;
    p <<= n;
    return mpq_class(p);
}

struct Q {
    mpq_class lo, hi;
};

/// [a/2^n, (a+2)/2^n]
inline Q lambda(std::uint64_t n, const mpz_class &a) {
    mpq_class d = pow2q(n);
    mpq_class lo = mpq_class(a) / d;
    mpq_class hi = mpq_class(a + 2) / d;
    lo.canonicalize();
    hi.canonicalize();
    return {lo, hi};
}

/// The successor of `prev` (or any integer at index 1) whose interval
/// midpoint is nearest to `target`; ties to the smaller term.
inline mpz_class nearest(std::optional<mpz_class> prev, std::uint64_t n, const mpq_class &target) {
    std::vector<mpz_class> cand;
    if (prev) {
        for (int k = 0; k < 3; ++k)
            cand.push_back(2 * *prev + k);
    } else {
        // midpoint (z+1)/2 at n = 1; scan a window around 2*target - 1
        mpq_class t2 = target * 2;
        mpz_class c;
        mpz_fdiv_q(c.get_mpz_t(), t2.get_num_mpz_t(), t2.get_den_mpz_t());
        for (int k = -3; k <= 3; ++k)
            cand.push_back(c + k);
    }
    mpz_class best = cand[0];
    mpq_class best_d = abs(mpq_class(cand[0] + 1) / pow2q(n) - target);
    for (const auto &z : cand) {
        mpq_class d = abs(mpq_class(z + 1) / pow2q(n) - target);
        if (d < best_d || (d == best_d && z < best)) {
            best = z;
            best_d = d;
        }
    }
    return best;
}

/// Terms 1..n of the nearest-midpoint walk towards target(k).
template <typename F>
std::vector<mpz_class> walk(std::uint64_t n, F target) {
    std::vector<mpz_class> out;
    std::optional<mpz_class> prev;
    for (std::uint64_t k = 1; k <= n; ++k) {
        prev = nearest(prev, k, target(k));
        out.push_back(*prev);
    }
    return out;
}

/// Least 1-based n with hi(a_n) < lo(b_n).
inline std::optional<std::uint64_t> less_witness(const std::vector<mpz_class> &a, const std::vector<mpz_class> &b) {
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i)
        if (lambda(i + 1, a[i]).hi < lambda(i + 1, b[i]).lo)
            return i + 1;
    return std::nullopt;
}

/// floor(x / 2) on machine integers, spelled out.
inline long floor_half(long x) { return x >= 0 ? x / 2 : -((-x + 1) / 2); }

inline bool rng_admissible(const std::vector<mpz_class> &p) {
    for (std::size_t i = 1; i < p.size(); ++i) {
        mpz_class d = p[i] - 2 * p[i - 1];
        if (d < 0 || d > 2)
            return false;
    }
    return true;
}

/// floor(10^scale / x * arctan-series) for arctan(1/x), fixed point.
inline mpz_class arctan_inv(unsigned long x, const mpz_class &one) {
    mpz_class term = one / x, sum = term, x2 = x * x;
    for (unsigned long k = 1; term != 0; ++k) {
        term /= x2;
        mpz_class t = term / (2 * k + 1);
        sum += (k % 2 == 1) ? mpz_class(-t) : t;
    }
    return sum;
}

/// First n decimals of pi from pi/4 = 2 atan(1/3) + atan(1/7).
inline std::string pi_decimals(std::size_t n) {
    mpz_class one;
    mpz_ui_pow_ui(one.get_mpz_t(), 10, n + 20);
    mpz_class pi = 4 * (2 * arctan_inv(3, one) + arctan_inv(7, one));
    std::string s = pi.get_str();
    return s.substr(1, n);
}

} // namespace oracle
