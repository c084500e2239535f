// SPDX-License-Identifier: Apache-2.0
//
// Points of the real number generating spread and the relations between
// them, evaluated at a finite horizon. The relations are existential, so a
// horizon can confirm them but never refute them: "not found yet" is kept
// apart from "refuted".

#pragma once

#include "brouwer/dyadic.hpp"
#include "brouwer/spreads.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace brouwer {

struct Point {
    Generator generator;
    std::optional<EventTrace> trace;

    Point(Generator g) : generator(std::move(g)) {} // NOLINT(google-explicit-constructor)
    Point(Generator g, EventTrace t) : generator(std::move(g)), trace(std::move(t)) {}

    Prefix prefix(std::size_t n) const { return emit_prefix(generator, n, trace); }
    const std::string &name() const { return generator.name(); }
};

enum class VerdictValue { Holds, Fails, UnknownAtHorizon };
enum class Direction { None, FirstLess, SecondLess };

std::string_view to_string(VerdictValue v);
std::string_view to_string(Direction d);

struct Verdict {
    VerdictValue value = VerdictValue::UnknownAtHorizon;
    std::uint64_t horizon = 0;
    std::optional<std::uint64_t> witness;
    Direction direction = Direction::None;

    bool holds() const { return value == VerdictValue::Holds; }
    bool fails() const { return value == VerdictValue::Fails; }
    bool unknown() const { return value == VerdictValue::UnknownAtHorizon; }

    static Verdict unknown_at(std::uint64_t h) { return {VerdictValue::UnknownAtHorizon, h, std::nullopt, Direction::None}; }
};

/// x < y: least n <= H with a_n + 2 < b_n.
Verdict lt_at(const Point &a, const Point &b, std::uint64_t horizon);
/// x < p/q (q > 0): least n <= H with (a_n + 2)/2^n < p/q.
Verdict lt_rational(const Point &a, const Integer &p, const Integer &q, std::uint64_t horizon);
/// x > p/q (q > 0): least n <= H with a_n/2^n > p/q.
Verdict gt_rational(const Point &a, const Integer &p, const Integer &q, std::uint64_t horizon);
/// x # y, with the direction that was found first.
Verdict apart_at(const Point &a, const Point &b, std::uint64_t horizon);
/// Fails (the points do not coincide) once two lambda-intervals within the
/// horizon are disjoint.
Verdict coincide_refute(const Point &a, const Point &b, std::uint64_t horizon);

/// Prefix-level forms of the same relations, shared with the tests' oracles.
std::optional<std::uint64_t> lt_witness(PrefixView a, PrefixView b);
std::optional<std::uint64_t> disjoint_witness(PrefixView a, PrefixView b);
/// |x - y| < r witnessed at the least n with (|a_n - b_n| + 2)/2^n < r.
std::optional<std::uint64_t> close_witness(PrefixView a, PrefixView b, const Dyadic &r);

/// Rewrites the terms below index n by a'_k = floor((a'_{k+1} - 1)/2).
/// Terms at index >= n are kept. Requires prefix.size() >= n.
Prefix center(PrefixView prefix, std::uint64_t n);

/// Neighbourhood function RNG -> RNG acting on finite prefixes.
struct PrefixMap {
    std::string name;
    std::function<Prefix(PrefixView)> apply;
    /// Totality witness: an input length guaranteeing output length >= m.
    std::function<std::uint64_t(std::uint64_t)> input_length_for;
};

PrefixMap identity_map();
/// a_n -> -a_n - 2, mirroring every interval through 0.
PrefixMap negation_map();
/// Emits output term k from input term 2k: b_k = floor(a_{2k} / 2^k).
PrefixMap delay_map();

struct Modulus {
    bool found = false;
    std::uint64_t n = 0;
    std::uint64_t horizon = 0;
};

/// Least input length n <= H at which f has produced m output terms on a.
Modulus cpf_modulus(const PrefixMap &f, const Point &a, std::uint64_t m, std::uint64_t horizon);
Modulus cpf_modulus(const PrefixMap &f, PrefixView a, std::uint64_t m);

struct ContinuityModulus {
    bool found = false;
    std::uint64_t n0 = 0;
    Dyadic q;
    Prefix centered; ///< the centered representative used
};

/// q = 2^{-n0-2} with n0 the CPF modulus at output precision m0 + 2 of a
/// representative of a centered up to n0 + 2.
ContinuityModulus continuity_modulus(const PrefixMap &f, const Point &a, std::uint64_t m0, std::uint64_t horizon);

struct ContinuitySampling {
    ContinuityModulus modulus;
    std::size_t samples = 0;
    std::size_t passed = 0;
    /// Largest observed output span, as a fraction of 2^{-m0}.
    double worst_ratio = 0;
    bool ok() const { return modulus.found && passed == samples; }
};

/// Draws `samples` points y with lambda-interval at index n0+22 inside the
/// q-neighbourhood of the centered representative, gives each its own
/// floor-centered prefix, and checks that the outputs of f on x and y span
/// less than 2^{-m0}. Deterministic in `seed`.
ContinuitySampling continuity_sampling(const PrefixMap &f, const Point &a, std::uint64_t m0, std::size_t samples,
                                       std::uint64_t seed, std::uint64_t horizon);

// --- virtual order ----------------------------------------------------------

enum class PairRelation { Coincident, Less, Greater, Undecided };

struct OrderTable {
    std::vector<std::string> names;
    std::vector<std::vector<PairRelation>> rel; ///< rel[i][j] describes names[i] vs names[j]

    explicit OrderTable(std::vector<std::string> n);
    std::size_t size() const { return names.size(); }
    std::size_t index_of(const std::string &name) const;
    void set_less(const std::string &a, const std::string &b);
    void set_coincident(const std::string &a, const std::string &b);
};

class UndecidedPair : public std::runtime_error {
  public:
    UndecidedPair(const std::string &a, const std::string &b, std::uint64_t horizon);
};

/// Pairwise table from apartness verdicts; `coincident` lists pairs declared
/// equal (they must not be refuted at the horizon).
OrderTable order_table(const std::vector<Point> &sample, const std::vector<std::pair<std::size_t, std::size_t>> &coincident,
                       std::uint64_t horizon);

struct OrderViolation {
    int condition = 0;
    std::vector<std::size_t> elements;
    std::string detail;
};

struct VirtualOrderReport {
    std::array<bool, 5> passed{};
    std::vector<OrderViolation> violations;
    bool ok() const { return violations.empty(); }
};

/// Brute-force check of the five virtual-order conditions for the relation
/// x prec y := (x != y and not y < x) on a decided table.
VirtualOrderReport virtual_order_check(const OrderTable &table);

} // namespace brouwer
