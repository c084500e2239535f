// SPDX-License-Identifier: Apache-2.0
//
// Spread laws, scripted event traces and point generators. A generator is a
// stateless description; emit_prefix replays it deterministically.

#pragma once

#include "brouwer/dyadic.hpp"
#include "brouwer/surd.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace brouwer {

using Prefix = std::vector<Integer>;
using PrefixView = std::span<const Integer>;

struct SpreadLaw {
    std::string name;
    std::function<bool(const Integer &)> admits_first;
    std::function<bool(PrefixView, const Integer &)> admits_next;
    /// Productivity witness: an admitted continuation of any admitted prefix.
    std::function<Integer(PrefixView)> some_successor;

    /// Whole-sequence admissibility.
    bool admits(PrefixView seq) const;
    /// Index (1-based) of the first inadmissible term, or 0.
    std::size_t first_violation(PrefixView seq) const;
};

/// The universal tree of natural numbers: every natural number is admitted.
std::shared_ptr<const SpreadLaw> universal_spread();
/// The real number generating spread: any integer first, then 2a, 2a+1, 2a+2.
std::shared_ptr<const SpreadLaw> rng_spread();

enum class Resolution { Never, Proved, Refuted };

/// A scripted course of the future: when (if ever) the assertion is proved
/// or refuted. Stages coincide with choice indices and are 1-based.
struct EventTrace {
    Resolution resolution = Resolution::Never;
    std::uint64_t stage = 0;
    std::string assertion_id = "alpha";
    bool lawlike = false;

    static EventTrace never() { return {}; }
    static EventTrace proved_at(std::uint64_t k);
    static EventTrace refuted_at(std::uint64_t k);

    /// One line: `never` | `true:<k>` | `false:<k>`, optionally ` lawlike`.
    static EventTrace parse(std::string_view line);
    static EventTrace load(const std::string &path);
    std::string str() const;

    bool resolved_by(std::uint64_t n) const { return resolution != Resolution::Never && stage <= n; }

    friend bool operator==(const EventTrace &, const EventTrace &) = default;
};

/// What a process may observe when choosing term `stage`: a resolution is
/// only visible once it has happened.
struct StageEvents {
    std::uint64_t stage = 1;
    Resolution seen = Resolution::Never;
    std::uint64_t seen_at = 0;

    static StageEvents at(std::uint64_t n, const EventTrace &trace);
};

class AdmissibilityFault : public std::runtime_error {
  public:
    AdmissibilityFault(const std::string &generator, std::uint64_t stage, const std::string &detail);
    std::uint64_t stage() const { return stage_; }

  private:
    std::uint64_t stage_;
};

class Generator {
  public:
    using Step = std::function<Integer(PrefixView)>;
    using Strategy = std::function<Integer(PrefixView, const StageEvents &)>;
    using Rule = std::function<Integer(std::uint64_t)>;

    /// Lawlike from a closed-form rule index -> term (1-based).
    static Generator lawlike(std::string name, Rule rule, std::shared_ptr<const SpreadLaw> law = rng_spread());
    /// Lawlike from a deterministic step over the prefix built so far.
    static Generator lawlike_step(std::string name, Step step, std::shared_ptr<const SpreadLaw> law = rng_spread());
    /// Event-driven process.
    static Generator process(std::string name, Strategy strategy, std::shared_ptr<const SpreadLaw> law = rng_spread());

    const std::string &name() const { return name_; }
    const SpreadLaw &law() const { return *law_; }
    bool is_process() const { return static_cast<bool>(strategy_); }

    /// Lawlike generator obtained by fixing the trace to `never`.
    Generator specialize_never() const;

    /// Next term after `prefix`, unchecked.
    Integer next(PrefixView prefix, const EventTrace *trace) const;

  private:
    Generator() = default;

    std::string name_;
    std::shared_ptr<const SpreadLaw> law_;
    Step step_;
    Strategy strategy_;
};

/// First n terms. Process generators require a trace. Every term is checked
/// against the law; a violation throws AdmissibilityFault naming the stage.
Prefix emit_prefix(const Generator &g, std::size_t n, const EventTrace *trace = nullptr);
Prefix emit_prefix(const Generator &g, std::size_t n, const std::optional<EventTrace> &trace);

/// The admissible next term whose lambda-interval midpoint is nearest to
/// `target`, ties toward the smaller term. With an empty prefix every
/// integer is a candidate.
Integer centering_step(PrefixView prefix, const Surd &target);

/// Lawlike point whose n-th interval is centered (nearest midpoint) on target(n).
Generator targeted_lawlike(std::string name, std::function<Surd(std::uint64_t)> target);
/// Lawlike point centered on a fixed value.
Generator centered_generator(std::string name, Surd value);
/// Process whose n-th interval is centered on target(events at n).
Generator targeted_process(std::string name, std::function<Surd(const StageEvents &)> target);

} // namespace brouwer
