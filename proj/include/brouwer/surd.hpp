// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "brouwer/dyadic.hpp"

#include <string>

namespace brouwer {

/// Exact real (p + q*sqrt(2)) / 2^e. Covers every value a bundled
/// construction targets: dyadic rationals (q == 0) and a family of lawlike
/// irrationals with decidable comparison against dyadics.
class Surd {
  public:
    Surd() = default;
    Surd(const Dyadic &d); // NOLINT(google-explicit-constructor)
    Surd(Integer p, Integer q, std::uint64_t e);

    static Surd sqrt2() { return Surd(0, 1, 0); }

    bool is_rational() const { return q_ == 0; }
    /// Only meaningful when is_rational().
    Dyadic as_dyadic() const { return Dyadic(p_, e_); }

    /// Sign of (this - d), exact.
    int compare(const Dyadic &d) const;
    int compare(const Surd &o) const;
    /// floor(value * 2^n), exact.
    Integer floor_scaled(std::uint64_t n) const;

    friend Surd operator+(const Surd &a, const Surd &b);
    friend Surd operator-(const Surd &a, const Surd &b);
    friend Surd operator-(const Surd &a);
    friend Surd operator*(const Surd &a, const Dyadic &k);

    friend bool operator==(const Surd &a, const Surd &b) { return a.compare(b) == 0; }

    std::string str() const;

  private:
    void canonicalize();

    Integer p_{0};
    Integer q_{0};
    std::uint64_t e_ = 0;
};

} // namespace brouwer
