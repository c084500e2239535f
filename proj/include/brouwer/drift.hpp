// SPDX-License-Identifier: Apache-2.0
//
// Drifts (a kernel plus a convergent family of counting numbers apart from
// it) and the checking sequences that sit at the kernel until a scripted
// event resolves an assertion.

#pragma once

#include "brouwer/fleeing.hpp"
#include "brouwer/reals.hpp"
#include "brouwer/spreads.hpp"
#include "brouwer/surd.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace brouwer {

enum class Wing { Left, Right, Two };
enum class Rationality { Rational, Irrational };
enum class CheckingKind { Direct, Oscillatory, Conditional };

std::string_view to_string(Wing w);
std::string_view to_string(Rationality r);
std::string_view to_string(CheckingKind k);
CheckingKind parse_checking_kind(std::string_view text);

struct Drift {
    std::string name;
    Surd kernel;
    Rationality kernel_tag = Rationality::Rational;
    Wing wing = Wing::Right;
    /// r_v (v >= 1); used by Right and Two.
    Family right;
    Rationality right_tag = Rationality::Rational;
    /// l_v (v >= 1); used by Left and Two.
    Family left;
    Rationality left_tag = Rationality::Rational;
    /// V(k): |c_v - c| < 2^{-k} for all v >= V(k).
    std::function<std::uint64_t(std::uint64_t)> convergence_index;

    /// The counting family c_v. A two-winged drift counts l_v at odd and
    /// r_v at even v.
    Surd counting(std::uint64_t v) const;
    Rationality counting_tag(std::uint64_t v) const;
};

struct DriftValidation {
    std::uint64_t upto = 0;
    std::uint64_t horizon = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

/// Kernel vs every counting number up to `upto`, wing directions, and
/// pairwise apartness of the counting numbers, all as verdicts at horizon.
DriftValidation validate_drift(const Drift &d, std::uint64_t upto, std::uint64_t horizon);

/// Kernel sqrt2 - 1 (irrational) approached from the right by rationals.
Drift rational_right_drift();
/// Kernel 0, rational right wing 2^{-v}, irrational left wing -(sqrt2/2) 2^{-v}.
Drift two_winged_mixed_drift();
/// Kernel 0, wings +-2^{-v}.
Drift berlin_drift();
/// By name: rational-right | two-winged-mixed | berlin.
Drift bundled_drift(std::string_view name);

/// A symbolic term of a checking sequence.
struct TermRef {
    enum class Kind { Kernel, Counting, Right, Left, Member };
    Kind kind = Kind::Kernel;
    std::uint64_t index = 0;
    Surd value;
    Rationality tag = Rationality::Rational;

    /// "c", "c_3", "r_2", "l_2", "a_4".
    std::string str() const;
    friend bool operator==(const TermRef &a, const TermRef &b) { return a.kind == b.kind && a.index == b.index; }
};

struct CheckingRun {
    std::vector<TermRef> terms;
    TermRef limit;
    /// "kernel" or the name of the counting number the sequence settles on.
    std::string limit_descriptor;
};

/// Term n (1-based) of the checking sequence given what is visible at n.
TermRef checking_term(const Drift &d, CheckingKind kind, const StageEvents &ev);

/// First N terms plus the limit the trace determines.
CheckingRun checking_sequence(const Drift &d, CheckingKind kind, const EventTrace &trace, std::uint64_t n);

/// The sequence as one RNG process: term n contributes an interval of
/// index n centered on its value.
Generator flatten(const Drift &d, CheckingKind kind, std::string name = {});

/// Rational / Irrational for a switched limit, KernelClass otherwise.
enum class LimitClass { Rational, Irrational, KernelClass };
std::string_view to_string(LimitClass c);
LimitClass rationality_descriptor(const Drift &d, CheckingKind kind, const EventTrace &trace);

/// Oscillatory checking process of the Berlin drift.
Generator berlin_s_generator();
Point berlin_s(const EventTrace &trace);

/// a_v = 1/2 - 2^{-v-1}, increasing to 1/2.
Family vienna_family();
/// Follows a_n until the assertion is resolved at v, then stays at a_v.
TermRef vienna_term(const Family &a, const StageEvents &ev);
CheckingRun vienna_sequence(const Family &a, const EventTrace &trace, std::uint64_t n);
Generator vienna_e_generator(Family a = vienna_family());
Point vienna_e(const EventTrace &trace, Family a = vienna_family());

} // namespace brouwer
