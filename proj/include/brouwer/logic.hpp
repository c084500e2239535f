// SPDX-License-Identifier: Apache-2.0
//
// Finite stage trees (leaves loop on themselves, valuations persist along
// edges), forcing, and exhaustive validity sweeps for the stage principles.

#pragma once

#include "brouwer/formula.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace brouwer {

/// Nodes are 0..size-1 with parent[i] < i and parent[0] == -1.
struct StageTree {
    std::vector<int> parent;
    /// Atoms true at each node.
    std::vector<std::set<std::string>> atoms;
    /// Display ids (defaults to the index).
    std::vector<std::string> ids;

    static StageTree from_parents(std::vector<int> parent);

    std::size_t size() const { return parent.size(); }
    std::vector<int> children(int w) const;
    bool is_leaf(int w) const;
    /// Longest root-to-leaf path, in edges.
    std::size_t depth() const;
    /// Nodes reached in exactly n steps (a leaf steps to itself).
    std::vector<int> stage(int w, std::uint64_t n) const;
    /// w and everything below it.
    std::vector<int> descendants_or_self(int w) const;
    int index_of(const std::string &id) const;

    /// {"nodes":[{"id":..,"parent":..|null,"atoms":[..]}]}; ids may be
    /// numbers or strings, in any order. Monotonicity is checked.
    static StageTree from_json(const std::string &text);
    static StageTree load(const std::string &path);
    std::string to_json() const;
};

struct MonotoneViolation {
    std::string node;   ///< child where the atom is missing
    std::string parent;
    std::string atom;
};

std::optional<MonotoneViolation> check_monotone(const StageTree &m);

/// Reference forcing, node by node. `stage_bound` overrides the search
/// bound for <*> (default depth + 1).
bool forces(const StageTree &m, int w, const Formula &f, std::optional<std::uint64_t> stage_bound = std::nullopt);

/// Bitmask evaluation (bit w set iff w forces f) for trees of at most 64
/// nodes. Reachability tables are computed once per tree.
class Evaluator {
  public:
    explicit Evaluator(const StageTree &m);

    /// `meta` supplies extensions for atoms named in it.
    std::uint64_t extension(const Formula &f, const std::map<std::string, std::uint64_t> &meta = {}) const;
    std::uint64_t atom_mask(const std::string &name) const;
    std::uint64_t all() const { return all_; }
    std::uint64_t below(int w) const { return desc_[w]; }
    /// Nodes exactly n steps from w.
    std::uint64_t stage(int w, std::uint64_t n) const;
    /// Closed under descendants.
    bool is_up_set(std::uint64_t mask) const;

  private:
    std::uint64_t all_ = 0;
    std::vector<std::uint64_t> desc_;
    std::vector<std::vector<std::uint64_t>> steps_; ///< steps_[n][w], n <= depth + 1
    std::map<std::string, std::uint64_t> atoms_;
};

std::uint64_t extension(const StageTree &m, const Formula &f);

enum class Schema { IC1, IC2, IC3, MD, CS4, CS5 };

std::string_view to_string(Schema s);
Schema parse_schema(std::string_view text);
/// `[n]phi -> [n+m]phi` and friends, with phi an atom named "phi".
std::string schema_text(Schema s);
/// Stage indices the schema takes (IC1: n, m; CS4: n; others none).
std::size_t box_parameters(Schema s);
FormulaPtr instantiate(Schema s, const FormulaPtr &phi, const std::vector<std::uint64_t> &boxes);
bool expected_valid(Schema s);

struct SweepBounds {
    std::size_t max_nodes = 5;
    std::size_t max_atoms = 2;
    std::uint64_t max_box_index = 3;
    std::size_t max_formula_depth = 2;
};

class ResourceRefusal : public std::runtime_error {
  public:
    ResourceRefusal(const std::string &what, double size);
    double size() const { return size_; }

  private:
    double size_;
};

/// Non-isomorphic rooted trees with n nodes, each as its lexicographically
/// first parent array; ordered lexicographically.
std::vector<std::vector<int>> enumerate_trees(std::size_t n);
/// Node sets closed under descendants, ordered by mask value.
std::vector<std::uint64_t> up_sets(const StageTree &frame);
/// Box-free formulas over `atom_names` up to `depth`, in sweep order:
/// atoms, falsum, then by depth (~, &, |, ->).
std::vector<FormulaPtr> enumerate_box_free(const std::vector<std::string> &atom_names, std::size_t depth);
/// As above, additionally wrapping box-free formulas in [n] (n <= max_box)
/// and <*> and combining those once more; used for persistence checks.
std::vector<FormulaPtr> enumerate_modal(const std::vector<std::string> &atom_names, std::size_t depth,
                                        std::uint64_t max_box);

struct Countermodel {
    StageTree model;
    int node = 0;
    FormulaPtr phi;
    std::vector<std::uint64_t> boxes;
    FormulaPtr instance;
    std::string id;
};

struct SweepResult {
    Schema schema = Schema::IC1;
    SweepBounds bounds;
    bool valid = true;
    std::optional<Countermodel> countermodel;
    std::uint64_t trees = 0;
    std::uint64_t models = 0;
    std::uint64_t checks = 0;
};

/// Enumerates trees by node count, then parent array, then valuations (first
/// atom least significant), box indices and instantiations; returns the first
/// countermodel in that order or certifies validity within bounds.
SweepResult validity_sweep(Schema s, const SweepBounds &bounds);

/// Estimated number of (model, box indices, instantiation) checks.
double sweep_size(Schema s, const SweepBounds &bounds);

struct PrincipleEntry {
    Schema schema;
    bool expected_valid;
    SweepResult result;
    bool ok() const { return result.valid == expected_valid; }
};

struct PrincipleReport {
    SweepBounds bounds;
    std::vector<PrincipleEntry> entries;
    /// Restricted CS5 is a derivation-level assumption only.
    std::string restricted_cs5_note;
    bool ok() const;
};

PrincipleReport principle_suite(const SweepBounds &bounds);

} // namespace brouwer
