// SPDX-License-Identifier: Apache-2.0
//
// Decimal digits of pi, decidable properties of positive integers built on
// them, least-witness search, and the lawlike points that switch behaviour
// at a property's least witness.

#pragma once

#include "brouwer/spreads.hpp"
#include "brouwer/surd.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace brouwer {

class ResourceLimit : public std::runtime_error {
  public:
    ResourceLimit(std::size_t requested, std::size_t limit);
    std::size_t requested() const { return requested_; }
    std::size_t limit() const { return limit_; }

  private:
    std::size_t requested_;
    std::size_t limit_;
};

/// First n decimals of pi after the point, by three unrelated methods.
/// Chudnovsky binary splitting (fast, production).
std::string pi_digits_chudnovsky(std::size_t n);
/// Rabinowitz-Wagon spigot; quadratic, fine up to a few thousand digits.
std::string pi_digits_spigot(std::size_t n);
/// Machin's formula 16 atan(1/5) - 4 atan(1/239) in fixed point.
std::string pi_digits_machin(std::size_t n);

struct OracleSelfTest {
    std::size_t digits = 0;
    bool spigot_agrees = false;
    bool machin_agrees = false;
    bool ok() const { return spigot_agrees && machin_agrees; }
};

/// Cached pi digits. Readers share the cache; growth takes the writer lock
/// and only ever appends, so every reader sees a consistent prefix.
class DigitOracle {
  public:
    static constexpr std::size_t default_limit = 2'000'000;

    /// Limit from BW_DIGIT_LIMIT if set, else default_limit.
    DigitOracle();
    explicit DigitOracle(std::size_t limit);

    /// Process-wide instance; runs the self-test on first use.
    static DigitOracle &shared();

    std::size_t limit() const { return limit_; }
    /// Makes the first n digits available; throws ResourceLimit past the limit.
    void ensure(std::size_t n);
    std::string digits(std::size_t n);
    /// Digit at 1-based position.
    char digit(std::size_t pos);
    /// Whether the digits at positions pos..pos+|pattern|-1 spell pattern.
    bool matches_at(std::size_t pos, std::string_view pattern);

    OracleSelfTest self_test(std::size_t n = 1000);

  private:
    std::size_t limit_;
    mutable std::shared_mutex mutex_;
    std::string cache_;
};

/// Reads BW_DIGIT_LIMIT; falls back to DigitOracle::default_limit.
std::size_t digit_limit_from_env();

struct DecidableProperty {
    std::string name;
    std::function<bool(std::uint64_t)> holds;
    /// Optional: make holds(1..n) cheap, e.g. by fetching digits in one go.
    std::function<void(std::uint64_t)> prepare;
};

/// Holds at n iff positions n..n+L-1 of pi all carry `digit`.
DecidableProperty run_property(int digit, std::size_t run_length, DigitOracle &oracle = DigitOracle::shared());
/// Holds at n iff positions n.. of pi spell `pattern`.
DecidableProperty pattern_property(std::string pattern, DigitOracle &oracle = DigitOracle::shared());
/// Holds exactly from k on.
DecidableProperty threshold_property(std::uint64_t k);
/// Holds exactly at k.
DecidableProperty singleton_property(std::uint64_t k);
/// Never holds.
DecidableProperty empty_property();

struct CriticalSearch {
    std::string property;
    std::uint64_t horizon = 0;
    std::optional<std::uint64_t> found; ///< least witness, if any <= horizon

    std::string str() const;
};

/// Least n <= horizon with p.holds(n).
CriticalSearch critical_number(const DecidableProperty &p, std::uint64_t horizon);

/// A real given by its exact value for each index (a family v -> x_v).
using Family = std::function<Surd(std::uint64_t)>;

/// Centers 0 until the least witness K of p is visible (K <= n), then
/// centers (-2)^{-K}.
Generator berlin_r(DecidableProperty p);

/// Follows the xi_0 generator until the least witness k of p is visible,
/// then the xi_k generator, re-anchored by nearest-midpoint centering.
Generator veldman_F2(Family xi, DecidableProperty p);

/// c_i = a_i for i below the least witness L of p, and a_L from L on.
Generator cambridge_c(Family a, DecidableProperty p);

} // namespace brouwer
