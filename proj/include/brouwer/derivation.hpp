// SPDX-License-Identifier: Apache-2.0
//
// A checker for numbered proof scripts over the stage-modal language. Rules
// are fixed schemata; definitional equivalences enter as declared axioms.
//
// Script format, one item per line:
//
//   assert <id> [lawlike]
//   defax <formula> # <source>
//   premise <formula> # <source>
//   flag <text>
//   conclude <formula>
//   <n>: <formula> ; <Rule>(<refs>)
//   <n>: assume <formula>
//   discharge <n>
//
// `#` starts a comment on any other line.

#pragma once

#include "brouwer/formula.hpp"
#include "brouwer/logic.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace brouwer {

class ScriptError : public std::runtime_error {
  public:
    ScriptError(const std::string &what, std::size_t line);
    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

struct Declaration {
    std::string id;
    bool lawlike = false;
};

struct Sourced {
    FormulaPtr formula;
    std::string source;
};

struct ScriptLine {
    enum class Kind { Step, Assume, Discharge };
    Kind kind = Kind::Step;
    /// Step number; for Discharge, the assume step being closed.
    std::uint64_t number = 0;
    FormulaPtr formula;
    std::string rule;
    std::vector<std::uint64_t> refs;
    std::size_t line = 0; ///< 1-based line in the source text
};

struct Script {
    std::string name;
    std::vector<Declaration> declarations;
    std::vector<Sourced> defaxes;
    std::vector<Sourced> premises;
    std::vector<std::string> flags;
    FormulaPtr conclude;
    std::vector<ScriptLine> lines;

    bool declared(const std::string &atom) const;
    bool lawlike(const std::string &atom) const;
    /// Canonical text; parse_script(str()) reproduces the script.
    std::string str() const;
};

Script parse_script(std::string_view text, std::string name = {});
Script load_script(const std::string &path);

struct CheckResult {
    bool verified = false;
    /// Step number of the rejected line (0 for header-level problems).
    std::uint64_t rejected_step = 0;
    std::size_t rejected_line = 0;
    std::string reason;
    FormulaPtr conclusion;
    std::map<std::string, std::uint64_t> rules_used;
    std::vector<std::string> warnings;
    std::vector<std::string> flags;
    /// Instances `<*>phi -> phi` the script relied on.
    std::vector<FormulaPtr> cs5r_instances;

    bool uses(const std::string &rule) const { return rules_used.count(rule) != 0; }
};

CheckResult check(const Script &script);

/// Rule names the checker accepts.
const std::vector<std::string> &rule_names();

/// Copies of the script with one step formula (or assumption) replaced by
/// its negation; one per numbered line.
std::vector<Script> single_step_mutations(const Script &script);

struct MutationReport {
    std::size_t mutants = 0;
    std::size_t rejected = 0;
    /// Step numbers whose mutant still verified.
    std::vector<std::uint64_t> survivors;
    bool ok() const { return mutants > 0 && survivors.empty(); }
};

MutationReport mutation_test(const Script &script);

struct SoundnessReport {
    std::size_t max_nodes = 0;
    std::uint64_t models = 0;
    /// Models whose root forces every defax, premise and CS5R instance used.
    std::uint64_t satisfying = 0;
    std::optional<std::string> counterexample;
    bool ok() const { return !counterexample; }
};

/// Evaluates the verified conclusion over every stage tree with at most
/// `max_nodes` nodes and every monotone valuation of the script's atoms.
SoundnessReport semantic_check(const Script &script, const CheckResult &result, std::size_t max_nodes = 3);

struct BundledScript {
    std::string name;
    std::string text;
    bool expect_verified = true;
    std::string summary;
};

/// vienna_dense, drift_direct, conditional_ks, cambridge_reduced.
const std::vector<BundledScript> &bundled_scripts();
/// Also accepts conditional_ks_literal, which must be rejected.
const BundledScript &bundled_script(std::string_view name);

struct KsStep {
    std::size_t index = 0;
    std::string text;
    std::optional<Schema> needs;
    std::string countermodel;
};

struct KsReport {
    std::vector<KsStep> steps;
    std::vector<Schema> blocked;
    std::map<Schema, std::string> countermodels;
    std::string str() const;
};

/// The derivation skeleton of the sequence-existence schema, with the steps
/// that need CS4 or CS5 linked to live countermodels.
KsReport ks_prerequisite_report();

} // namespace brouwer
