// SPDX-License-Identifier: Apache-2.0
//
// Exact dyadic rationals m/2^k and the closed lambda-intervals of the real
// number generating spread.

#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace brouwer {

using Integer = mpz_class;

/// floor(a / 2^k) for k >= 0.
Integer floor_shift(const Integer &a, std::uint64_t k);
/// ceil(a / 2^k) for k >= 0.
Integer ceil_shift(const Integer &a, std::uint64_t k);
/// 2^k as an Integer.
Integer pow2(std::uint64_t k);

/// A value numerator / 2^exponent, always kept in canonical form (numerator
/// odd, or exponent zero). Equality is structural on the canonical form.
class Dyadic {
  public:
    Dyadic() = default;
    Dyadic(long v) : num_(v) {} // NOLINT(google-explicit-constructor)
    explicit Dyadic(Integer num, std::uint64_t exponent = 0);

    const Integer &numerator() const { return num_; }
    std::uint64_t exponent() const { return exp_; }

    /// 2^-k
    static Dyadic unit(std::uint64_t k) { return Dyadic(Integer(1), k); }

    /// Parses "m/2^k" (or a bare integer "m").
    static Dyadic parse(std::string_view text);
    std::string str() const;

    /// floor(value * 2^n); exact.
    Integer floor_scaled(std::uint64_t n) const;
    /// Numerator of value * 2^n when that is an integer.
    bool is_integer_scaled(std::uint64_t n) const { return exp_ <= n; }

    Dyadic half() const { return Dyadic(num_, exp_ + 1); }
    int sign() const { return sgn(num_); }

    friend Dyadic operator+(const Dyadic &a, const Dyadic &b);
    friend Dyadic operator-(const Dyadic &a, const Dyadic &b);
    friend Dyadic operator*(const Dyadic &a, const Dyadic &b);
    friend Dyadic operator-(const Dyadic &a);
    friend Dyadic abs(const Dyadic &a) { return a.sign() < 0 ? -a : a; }

    friend bool operator==(const Dyadic &a, const Dyadic &b) {
        return a.exp_ == b.exp_ && a.num_ == b.num_;
    }
    friend std::strong_ordering operator<=>(const Dyadic &a, const Dyadic &b);

    /// Compare with the rational p/q (q > 0) exactly.
    int compare_rational(const Integer &p, const Integer &q) const;

  private:
    void canonicalize();

    Integer num_{0};
    std::uint64_t exp_ = 0;
};

/// Closed interval [lo, hi] with lo <= hi.
struct Interval {
    Dyadic lo;
    Dyadic hi;

    Interval(Dyadic l, Dyadic h);

    Dyadic length() const { return hi - lo; }
    Dyadic midpoint() const { return (lo + hi).half(); }
    bool contains(const Dyadic &x) const { return lo <= x && x <= hi; }
    bool contains(const Interval &o) const { return lo <= o.lo && o.hi <= hi; }
    std::string str() const;
    static Interval parse(std::string_view text);

    friend bool operator==(const Interval &, const Interval &) = default;
};

enum class Relation { Disjoint, Overlap, Contains, ContainedIn };

std::string_view to_string(Relation r);

/// lambda^n_a = [a/2^n, (a+2)/2^n]; generation indices are 1-based.
Interval lambda_interval(std::uint64_t n, const Integer &a);

/// z is an admissible successor of a iff z in {2a, 2a+1, 2a+2}.
bool admissible_successor(const Integer &a, const Integer &z);

/// Endpoint classification; touching closed intervals overlap. Equal
/// intervals classify as Contains.
Relation interval_relate(const Interval &p, const Interval &q);

} // namespace brouwer
