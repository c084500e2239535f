// SPDX-License-Identifier: Apache-2.0
//
// The stage-modal propositional language: atoms, falsum, the intuitionistic
// connectives, [n] ("at the n-th stage from now") and <*> ("at some stage").
// Modal operands are box-free.

#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

namespace brouwer {

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    enum class Kind { Atom, Bottom, And, Or, Implies, Box, SomeStage };

    Kind kind = Kind::Bottom;
    std::string name;   ///< Atom
    bool lawlike = false; ///< Atom written with `!`
    std::uint64_t n = 0;  ///< Box
    FormulaPtr lhs;       ///< And/Or/Implies left, Box/SomeStage operand
    FormulaPtr rhs;       ///< And/Or/Implies right
};

FormulaPtr atom(std::string name, bool lawlike = false);
FormulaPtr bottom();
FormulaPtr conj(FormulaPtr a, FormulaPtr b);
FormulaPtr disj(FormulaPtr a, FormulaPtr b);
FormulaPtr imp(FormulaPtr a, FormulaPtr b);
FormulaPtr neg(FormulaPtr a);
FormulaPtr iff(FormulaPtr a, FormulaPtr b);
/// Throws if the operand is not box-free.
FormulaPtr box(std::uint64_t n, FormulaPtr a);
FormulaPtr some_stage(FormulaPtr a);
/// ~a | ~~a
FormulaPtr tested_now(FormulaPtr a);
/// <*>(~a | ~~a)
FormulaPtr tested_later(FormulaPtr a);

bool is_negation(const Formula &f);
bool box_free(const Formula &f);
/// Structural equality; the lawlike mark is not part of an atom's identity.
bool equal(const Formula &a, const Formula &b);
inline bool equal(const FormulaPtr &a, const FormulaPtr &b) { return equal(*a, *b); }
std::set<std::string> atoms_of(const Formula &f);
/// Replaces every atom named `name` by `by`.
FormulaPtr substitute(const FormulaPtr &f, const std::string &name, const FormulaPtr &by);
std::size_t size(const Formula &f);

/// Minimal-parenthesis rendering; parse(print(f)) is structurally f.
std::string print(const Formula &f);
inline std::string print(const FormulaPtr &f) { return print(*f); }

class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string &what, std::size_t position);
    std::size_t position() const { return position_; }

  private:
    std::size_t position_;
};

/// Grammar, loosest first: `<->`, `->` (right-assoc), `|`, `&`, then the
/// prefix operators `~`, `[n]`, `<*>`. Atoms are [a-z][a-z0-9_]* with an
/// optional `!`; `_|_` is falsum. `|a` and `a|` abbreviate ~a | ~~a and
/// <*>(~a | ~~a).
FormulaPtr parse_formula(std::string_view text);

} // namespace brouwer
