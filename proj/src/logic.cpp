// SPDX-License-Identifier: Apache-2.0

#include "brouwer/logic.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace brouwer {

using json = nlohmann::json;

// --- trees ------------------------------------------------------------------------

StageTree StageTree::from_parents(std::vector<int> parent) {
    if (parent.empty() || parent[0] != -1)
        throw std::invalid_argument("a stage tree needs a root at index 0");
    for (std::size_t i = 1; i < parent.size(); ++i)
        if (parent[i] < 0 || static_cast<std::size_t>(parent[i]) >= i)
            throw std::invalid_argument("parent indices must precede their children");
    StageTree t;
    t.parent = std::move(parent);
    t.atoms.resize(t.parent.size());
    for (std::size_t i = 0; i < t.parent.size(); ++i)
        t.ids.push_back(std::to_string(i));
    return t;
}

std::vector<int> StageTree::children(int w) const {
    std::vector<int> out;
    for (std::size_t i = 1; i < parent.size(); ++i)
        if (parent[i] == w)
            out.push_back(static_cast<int>(i));
    return out;
}

bool StageTree::is_leaf(int w) const {
    return std::find(parent.begin() + 1, parent.end(), w) == parent.end();
}

std::size_t StageTree::depth() const {
    std::vector<std::size_t> d(size(), 0);
    std::size_t best = 0;
    for (std::size_t i = 1; i < size(); ++i) {
        d[i] = d[parent[i]] + 1;
        best = std::max(best, d[i]);
    }
    return best;
}

std::vector<int> StageTree::stage(int w, std::uint64_t n) const {
    std::set<int> frontier{w};
    const std::uint64_t cap = depth() + 1; // the frontier is stationary from here on
    for (std::uint64_t step = 0; step < std::min(n, cap); ++step) {
        std::set<int> next;
        for (int v : frontier) {
            auto ch = children(v);
            if (ch.empty())
                next.insert(v);
            else
                next.insert(ch.begin(), ch.end());
        }
        frontier = std::move(next);
    }
    return {frontier.begin(), frontier.end()};
}

std::vector<int> StageTree::descendants_or_self(int w) const {
    std::vector<int> out{w};
    for (std::size_t i = 0; i < out.size(); ++i)
        for (int c : children(out[i]))
            out.push_back(c);
    std::sort(out.begin(), out.end());
    return out;
}

int StageTree::index_of(const std::string &id) const {
    auto it = std::find(ids.begin(), ids.end(), id);
    if (it == ids.end())
        throw std::invalid_argument("no node with id '" + id + "'");
    return static_cast<int>(it - ids.begin());
}

namespace {

std::string id_text(const json &v) {
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_number_integer())
        return std::to_string(v.get<long long>());
    throw std::invalid_argument("node ids must be strings or integers");
}

} // namespace

StageTree StageTree::from_json(const std::string &text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw std::invalid_argument(std::string("model file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("nodes") || !doc["nodes"].is_array())
        throw std::invalid_argument("model must be an object with a \"nodes\" array");
    struct Raw {
        std::string id;
        std::optional<std::string> parent;
        std::set<std::string> atoms;
    };
    std::vector<Raw> raw;
    for (const auto &n : doc["nodes"]) {
        if (!n.is_object() || !n.contains("id"))
            throw std::invalid_argument("every node needs an \"id\"");
        Raw r;
        r.id = id_text(n["id"]);
        if (n.contains("parent") && !n["parent"].is_null())
            r.parent = id_text(n["parent"]);
        if (n.contains("atoms")) {
            for (const auto &a : n["atoms"]) {
                auto name = a.get<std::string>();
                auto f = parse_formula(name);
                if (f->kind != Formula::Kind::Atom)
                    throw std::invalid_argument("'" + name + "' is not an atom name");
                r.atoms.insert(f->name);
            }
        }
        if (std::any_of(raw.begin(), raw.end(), [&](const Raw &o) { return o.id == r.id; }))
            throw std::invalid_argument("duplicate node id '" + r.id + "'");
        raw.push_back(std::move(r));
    }
    if (raw.empty())
        throw std::invalid_argument("model has no nodes");
    if (raw.size() > 64)
        throw std::invalid_argument("models are limited to 64 nodes");
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < raw.size(); ++i)
        if (!raw[i].parent)
            order.push_back(i);
    if (order.size() != 1)
        throw std::invalid_argument("model must have exactly one root (node without parent)");
    for (const auto &r : raw)
        if (r.parent && std::none_of(raw.begin(), raw.end(), [&](const Raw &o) { return o.id == *r.parent; }))
            throw std::invalid_argument("node '" + r.id + "' has unknown parent '" + *r.parent + "'");
    // breadth-first renumbering so parents precede children
    for (std::size_t k = 0; k < order.size(); ++k)
        for (std::size_t i = 0; i < raw.size(); ++i)
            if (raw[i].parent && *raw[i].parent == raw[order[k]].id)
                order.push_back(i);
    if (order.size() != raw.size())
        throw std::invalid_argument("model nodes do not form a tree (cycle or detached node)");
    StageTree t;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const auto &r = raw[order[k]];
        int p = -1;
        if (r.parent)
            for (std::size_t j = 0; j < k; ++j)
                if (raw[order[j]].id == *r.parent)
                    p = static_cast<int>(j);
        t.parent.push_back(p);
        t.atoms.push_back(r.atoms);
        t.ids.push_back(r.id);
    }
    if (auto v = check_monotone(t))
        throw std::invalid_argument("valuation is not monotone: atom '" + v->atom + "' holds at '" + v->parent +
                                    "' but not at its successor '" + v->node + "'");
    return t;
}

StageTree StageTree::load(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open model file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

std::string StageTree::to_json() const {
    auto id_value = [](const std::string &id) -> json {
        if (!id.empty() && id.find_first_not_of("0123456789") == std::string::npos && id.size() < 18)
            return std::stoll(id);
        return id;
    };
    json nodes = json::array();
    for (std::size_t i = 0; i < size(); ++i) {
        json n;
        n["id"] = id_value(ids[i]);
        n["parent"] = parent[i] < 0 ? json(nullptr) : id_value(ids[parent[i]]);
        n["atoms"] = std::vector<std::string>(atoms[i].begin(), atoms[i].end());
        nodes.push_back(n);
    }
    return json{{"nodes", nodes}}.dump();
}

std::optional<MonotoneViolation> check_monotone(const StageTree &m) {
    for (std::size_t i = 1; i < m.size(); ++i)
        for (const auto &a : m.atoms[m.parent[i]])
            if (!m.atoms[i].count(a))
                return MonotoneViolation{m.ids[i], m.ids[m.parent[i]], a};
    return std::nullopt;
}

// --- forcing ------------------------------------------------------------------------

bool forces(const StageTree &m, int w, const Formula &f, std::optional<std::uint64_t> stage_bound) {
    switch (f.kind) {
    case Formula::Kind::Atom:
        return m.atoms[w].count(f.name) > 0;
    case Formula::Kind::Bottom:
        return false;
    case Formula::Kind::And:
        return forces(m, w, *f.lhs, stage_bound) && forces(m, w, *f.rhs, stage_bound);
    case Formula::Kind::Or:
        return forces(m, w, *f.lhs, stage_bound) || forces(m, w, *f.rhs, stage_bound);
    case Formula::Kind::Implies:
        for (int v : m.descendants_or_self(w))
            if (forces(m, v, *f.lhs, stage_bound) && !forces(m, v, *f.rhs, stage_bound))
                return false;
        return true;
    case Formula::Kind::Box:
        for (int v : m.stage(w, f.n))
            if (!forces(m, v, *f.lhs, stage_bound))
                return false;
        return true;
    case Formula::Kind::SomeStage: {
        const std::uint64_t bound = stage_bound.value_or(m.depth() + 1);
        for (std::uint64_t n = 1; n <= bound; ++n) {
            auto nodes = m.stage(w, n);
            if (std::all_of(nodes.begin(), nodes.end(), [&](int v) { return forces(m, v, *f.lhs, stage_bound); }))
                return true;
        }
        return false;
    }
    }
    return false;
}

Evaluator::Evaluator(const StageTree &m) {
    const std::size_t n = m.size();
    if (n > 64)
        throw std::invalid_argument("bitmask evaluation is limited to 64 nodes");
    all_ = n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
    desc_.assign(n, 0);
    for (std::size_t i = n; i-- > 0;) {
        desc_[i] |= std::uint64_t{1} << i;
        if (i > 0)
            desc_[m.parent[i]] |= desc_[i];
    }
    std::vector<std::uint64_t> one(n, 0);
    for (std::size_t i = 1; i < n; ++i)
        one[m.parent[i]] |= std::uint64_t{1} << i;
    for (std::size_t i = 0; i < n; ++i)
        if (one[i] == 0)
            one[i] = std::uint64_t{1} << i;
    const std::size_t cap = m.depth() + 1;
    steps_.resize(cap + 1);
    steps_[0].resize(n);
    for (std::size_t i = 0; i < n; ++i)
        steps_[0][i] = std::uint64_t{1} << i;
    for (std::size_t k = 1; k <= cap; ++k) {
        steps_[k].resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::uint64_t acc = 0;
            for (std::uint64_t rest = steps_[k - 1][i]; rest; rest &= rest - 1)
                acc |= one[std::countr_zero(rest)];
            steps_[k][i] = acc;
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (const auto &a : m.atoms[i])
            atoms_[a] |= std::uint64_t{1} << i;
}

std::uint64_t Evaluator::atom_mask(const std::string &name) const {
    auto it = atoms_.find(name);
    return it == atoms_.end() ? 0 : it->second;
}

std::uint64_t Evaluator::stage(int w, std::uint64_t n) const {
    return steps_[std::min<std::uint64_t>(n, steps_.size() - 1)][w];
}

bool Evaluator::is_up_set(std::uint64_t mask) const {
    for (std::uint64_t rest = mask; rest; rest &= rest - 1)
        if ((desc_[std::countr_zero(rest)] & ~mask) != 0)
            return false;
    return true;
}

std::uint64_t Evaluator::extension(const Formula &f, const std::map<std::string, std::uint64_t> &meta) const {
    switch (f.kind) {
    case Formula::Kind::Atom: {
        auto it = meta.find(f.name);
        return it != meta.end() ? it->second : atom_mask(f.name);
    }
    case Formula::Kind::Bottom:
        return 0;
    case Formula::Kind::And:
        return extension(*f.lhs, meta) & extension(*f.rhs, meta);
    case Formula::Kind::Or:
        return extension(*f.lhs, meta) | extension(*f.rhs, meta);
    case Formula::Kind::Implies: {
        std::uint64_t bad = extension(*f.lhs, meta) & ~extension(*f.rhs, meta);
        std::uint64_t out = 0;
        for (std::size_t w = 0; w < desc_.size(); ++w)
            if ((desc_[w] & bad) == 0)
                out |= std::uint64_t{1} << w;
        return out;
    }
    case Formula::Kind::Box: {
        std::uint64_t a = extension(*f.lhs, meta);
        std::uint64_t out = 0;
        for (std::size_t w = 0; w < desc_.size(); ++w)
            if ((stage(static_cast<int>(w), f.n) & ~a) == 0)
                out |= std::uint64_t{1} << w;
        return out;
    }
    case Formula::Kind::SomeStage: {
        std::uint64_t a = extension(*f.lhs, meta);
        std::uint64_t out = 0;
        for (std::size_t w = 0; w < desc_.size(); ++w)
            for (std::size_t n = 1; n < steps_.size(); ++n)
                if ((steps_[n][w] & ~a) == 0) {
                    out |= std::uint64_t{1} << w;
                    break;
                }
        return out;
    }
    }
    return 0;
}

std::uint64_t extension(const StageTree &m, const Formula &f) { return Evaluator(m).extension(f); }

// --- schemas -------------------------------------------------------------------------

std::string_view to_string(Schema s) {
    switch (s) {
    case Schema::IC1:
        return "ic1";
    case Schema::IC2:
        return "ic2";
    case Schema::IC3:
        return "ic3";
    case Schema::MD:
        return "md";
    case Schema::CS4:
        return "cs4";
    case Schema::CS5:
        return "cs5";
    }
    return "?";
}

Schema parse_schema(std::string_view text) {
    for (auto s : {Schema::IC1, Schema::IC2, Schema::IC3, Schema::MD, Schema::CS4, Schema::CS5})
        if (text == to_string(s))
            return s;
    throw std::invalid_argument("schema must be ic1 | ic2 | ic3 | md | cs4 | cs5, got '" + std::string(text) + "'");
}

std::string schema_text(Schema s) {
    switch (s) {
    case Schema::IC1:
        return "[n]phi -> [n+m]phi";
    case Schema::IC2:
        return "~phi -> ~<*>phi";
    case Schema::IC3:
        return "phi -> <*>phi";
    case Schema::MD:
        return "~<*>phi -> ~phi";
    case Schema::CS4:
        return "[n]phi | ~[n]phi";
    case Schema::CS5:
        return "<*>phi -> phi";
    }
    return "?";
}

std::size_t box_parameters(Schema s) {
    switch (s) {
    case Schema::IC1:
        return 2;
    case Schema::CS4:
        return 1;
    default:
        return 0;
    }
}

bool expected_valid(Schema s) { return s != Schema::CS4 && s != Schema::CS5; }

FormulaPtr instantiate(Schema s, const FormulaPtr &phi, const std::vector<std::uint64_t> &boxes) {
    if (boxes.size() != box_parameters(s))
        throw std::invalid_argument("schema " + std::string(to_string(s)) + " takes " +
                                    std::to_string(box_parameters(s)) + " stage indices");
    switch (s) {
    case Schema::IC1:
        return imp(box(boxes[0], phi), box(boxes[0] + boxes[1], phi));
    case Schema::IC2:
        return imp(neg(phi), neg(some_stage(phi)));
    case Schema::IC3:
        return imp(phi, some_stage(phi));
    case Schema::MD:
        return imp(neg(some_stage(phi)), neg(phi));
    case Schema::CS4:
        return disj(box(boxes[0], phi), neg(box(boxes[0], phi)));
    case Schema::CS5:
        return imp(some_stage(phi), phi);
    }
    return phi;
}

ResourceRefusal::ResourceRefusal(const std::string &what, double size) : std::runtime_error(what), size_(size) {}

// --- enumeration ----------------------------------------------------------------------

namespace {

std::string ahu(const std::vector<int> &parent, int w) {
    std::vector<std::string> parts;
    for (std::size_t i = 1; i < parent.size(); ++i)
        if (parent[i] == w)
            parts.push_back(ahu(parent, static_cast<int>(i)));
    std::sort(parts.begin(), parts.end());
    std::string s = "(";
    for (const auto &p : parts)
        s += p;
    return s + ")";
}

} // namespace

std::vector<std::vector<int>> enumerate_trees(std::size_t n) {
    std::vector<std::vector<int>> out;
    if (n == 0)
        return out;
    std::set<std::string> seen;
    std::vector<int> parent(n, 0);
    parent[0] = -1;
    // odometer over parent[i] in [0, i), last position fastest: lexicographic
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == n) {
            if (seen.insert(ahu(parent, 0)).second)
                out.push_back(parent);
            return;
        }
        for (int p = 0; p < static_cast<int>(i); ++p) {
            parent[i] = p;
            rec(i + 1);
        }
    };
    rec(1);
    return out;
}

std::vector<std::uint64_t> up_sets(const StageTree &frame) {
    if (frame.size() > 20)
        throw std::invalid_argument("up-set enumeration is limited to 20 nodes");
    Evaluator ev(frame);
    std::vector<std::uint64_t> out;
    for (std::uint64_t mask = 0; mask <= ev.all(); ++mask)
        if (ev.is_up_set(mask))
            out.push_back(mask);
    return out;
}

namespace {

// Box-free formulas with, for each, its connective and operand indices, so a
// whole enumeration can be evaluated bottom-up over one model.
struct FormulaTable {
    enum Op { AtomOp, BottomOp, NotOp, AndOp, OrOp, ImpOp };
    std::vector<FormulaPtr> formulas;
    std::vector<Op> op;
    std::vector<int> a, b;
    std::vector<std::size_t> depth;

    void add(FormulaPtr f, Op o, int x, int y, std::size_t d) {
        formulas.push_back(std::move(f));
        op.push_back(o);
        a.push_back(x);
        b.push_back(y);
        depth.push_back(d);
    }
};

FormulaTable build_table(const std::vector<std::string> &atom_names, std::size_t max_depth) {
    FormulaTable t;
    for (std::size_t i = 0; i < atom_names.size(); ++i)
        t.add(atom(atom_names[i]), FormulaTable::AtomOp, static_cast<int>(i), -1, 0);
    t.add(bottom(), FormulaTable::BottomOp, -1, -1, 0);
    for (std::size_t d = 1; d <= max_depth; ++d) {
        const int prev = static_cast<int>(t.formulas.size());
        for (int x = 0; x < prev; ++x)
            if (t.depth[x] == d - 1)
                t.add(neg(t.formulas[x]), FormulaTable::NotOp, x, -1, d);
        const FormulaTable::Op ops[] = {FormulaTable::AndOp, FormulaTable::OrOp, FormulaTable::ImpOp};
        for (auto o : ops) {
            for (int x = 0; x < prev; ++x) {
                for (int y = 0; y < prev; ++y) {
                    if (t.depth[x] != d - 1 && t.depth[y] != d - 1)
                        continue;
                    if (o == FormulaTable::ImpOp && t.op[y] == FormulaTable::BottomOp)
                        continue; // that is the negation, already listed
                    FormulaPtr f = o == FormulaTable::AndOp  ? conj(t.formulas[x], t.formulas[y])
                                   : o == FormulaTable::OrOp ? disj(t.formulas[x], t.formulas[y])
                                                             : imp(t.formulas[x], t.formulas[y]);
                    t.add(std::move(f), o, x, y, d);
                }
            }
        }
    }
    return t;
}

double table_size(std::size_t atoms, std::size_t max_depth) {
    double total = atoms + 1.0, last = total;
    for (std::size_t d = 1; d <= max_depth; ++d) {
        double older = total - last;
        double pairs = total * total - older * older;
        double fresh = last + 3 * pairs; // ~x and three binaries (a slight overcount)
        last = fresh;
        total += fresh;
    }
    return total;
}

const std::vector<std::string> &sweep_atom_names() {
    static const std::vector<std::string> names{"p", "q", "r", "s"};
    return names;
}

std::vector<std::vector<std::uint64_t>> box_tuples(Schema s, std::uint64_t max_box) {
    std::vector<std::vector<std::uint64_t>> out;
    switch (box_parameters(s)) {
    case 0:
        out.push_back({});
        break;
    case 1:
        for (std::uint64_t n = 1; n <= max_box; ++n)
            out.push_back({n});
        break;
    default:
        for (std::uint64_t n = 1; n <= max_box; ++n)
            for (std::uint64_t m = 1; m <= max_box; ++m)
                out.push_back({n, m});
    }
    return out;
}

std::string parents_text(const std::vector<int> &parent) {
    std::string s;
    for (std::size_t i = 0; i < parent.size(); ++i) {
        if (i)
            s += ",";
        s += parent[i] < 0 ? "-" : std::to_string(parent[i]);
    }
    return s;
}

std::string valuation_text(const std::vector<std::uint64_t> &masks, const std::vector<std::string> &names) {
    std::string s;
    for (std::size_t k = 0; k < masks.size(); ++k) {
        if (k)
            s += ";";
        s += names[k] + ":";
        bool first = true;
        for (std::uint64_t rest = masks[k]; rest; rest &= rest - 1) {
            if (!first)
                s += "+";
            s += std::to_string(std::countr_zero(rest));
            first = false;
        }
    }
    return s;
}

void check_bounds(Schema s, const SweepBounds &b) {
    if (b.max_nodes == 0 || b.max_atoms == 0 || b.max_box_index == 0)
        throw std::invalid_argument("sweep bounds must be positive");
    double size = sweep_size(s, b);
    std::ostringstream why;
    why.precision(3);
    if (b.max_nodes > 7 || b.max_atoms > sweep_atom_names().size() || b.max_formula_depth > 2 ||
        b.max_box_index > 16 || size > 5e9) {
        why << "sweep refused: bounds (nodes " << b.max_nodes << ", atoms " << b.max_atoms << ", box "
            << b.max_box_index << ", formula depth " << b.max_formula_depth << ") give about " << size
            << " checks (limits: nodes <= 7, atoms <= 4, box <= 16, formula depth <= 2, 5e9 checks)";
        throw ResourceRefusal(why.str(), size);
    }
}

} // namespace

std::vector<FormulaPtr> enumerate_box_free(const std::vector<std::string> &atom_names, std::size_t depth) {
    return build_table(atom_names, depth).formulas;
}

std::vector<FormulaPtr> enumerate_modal(const std::vector<std::string> &atom_names, std::size_t depth,
                                        std::uint64_t max_box) {
    auto base = enumerate_box_free(atom_names, depth);
    auto small = enumerate_box_free(atom_names, std::min<std::size_t>(depth, 1));
    std::vector<FormulaPtr> modal;
    for (const auto &f : base) {
        for (std::uint64_t n = 1; n <= max_box; ++n)
            modal.push_back(box(n, f));
        modal.push_back(some_stage(f));
    }
    std::vector<FormulaPtr> out = base;
    out.insert(out.end(), modal.begin(), modal.end());
    for (const auto &m : modal) {
        out.push_back(neg(m));
        for (const auto &b : small) {
            out.push_back(conj(m, b));
            out.push_back(disj(m, b));
            out.push_back(imp(m, b));
            out.push_back(imp(b, m));
        }
    }
    return out;
}

double sweep_size(Schema s, const SweepBounds &b) {
    double models = 0;
    for (std::size_t n = 1; n <= std::min<std::size_t>(b.max_nodes, 7); ++n)
        for (const auto &p : enumerate_trees(n))
            models += std::pow(static_cast<double>(up_sets(StageTree::from_parents(p)).size()),
                               static_cast<double>(b.max_atoms));
    if (b.max_nodes > 7)
        models *= std::pow(2.0, static_cast<double>(b.max_nodes - 7) * (1.0 + b.max_atoms));
    double boxes = box_parameters(s) == 0   ? 1.0
                   : box_parameters(s) == 1 ? static_cast<double>(b.max_box_index)
                                            : static_cast<double>(b.max_box_index * b.max_box_index);
    return models * boxes * table_size(b.max_atoms, b.max_formula_depth);
}

SweepResult validity_sweep(Schema s, const SweepBounds &bounds) {
    check_bounds(s, bounds);
    SweepResult res;
    res.schema = s;
    res.bounds = bounds;
    const std::vector<std::string> names(sweep_atom_names().begin(), sweep_atom_names().begin() + bounds.max_atoms);
    const FormulaTable table = build_table(names, bounds.max_formula_depth);
    const auto tuples = box_tuples(s, bounds.max_box_index);
    const FormulaPtr meta_phi = atom("$phi");
    std::vector<FormulaPtr> schema_forms;
    for (const auto &t : tuples)
        schema_forms.push_back(instantiate(s, meta_phi, t));

    for (std::size_t n = 1; n <= bounds.max_nodes; ++n) {
        for (const auto &parents : enumerate_trees(n)) {
            ++res.trees;
            const StageTree frame = StageTree::from_parents(parents);
            const Evaluator fev(frame);
            const auto ups = up_sets(frame);
            std::vector<std::size_t> digit(names.size(), 0);
            std::vector<std::uint64_t> ext(table.formulas.size());
            for (;;) {
                ++res.models;
                std::vector<std::uint64_t> val(names.size());
                for (std::size_t k = 0; k < names.size(); ++k)
                    val[k] = ups[digit[k]];
                for (std::size_t i = 0; i < table.formulas.size(); ++i) {
                    const int x = table.a[i], y = table.b[i];
                    switch (table.op[i]) {
                    case FormulaTable::AtomOp:
                        ext[i] = val[x];
                        break;
                    case FormulaTable::BottomOp:
                        ext[i] = 0;
                        break;
                    case FormulaTable::NotOp:
                    case FormulaTable::ImpOp: {
                        std::uint64_t bad = ext[x] & ~(table.op[i] == FormulaTable::NotOp ? 0 : ext[y]);
                        std::uint64_t out = 0;
                        for (std::size_t w = 0; w < n; ++w)
                            if ((fev.below(static_cast<int>(w)) & bad) == 0)
                                out |= std::uint64_t{1} << w;
                        ext[i] = out;
                        break;
                    }
                    case FormulaTable::AndOp:
                        ext[i] = ext[x] & ext[y];
                        break;
                    case FormulaTable::OrOp:
                        ext[i] = ext[x] | ext[y];
                        break;
                    }
                }
                // schema truth depends on phi only through its extension
                std::vector<std::pair<std::uint64_t, std::size_t>> distinct;
                std::set<std::uint64_t> seen;
                for (std::size_t i = 0; i < ext.size(); ++i)
                    if (seen.insert(ext[i]).second)
                        distinct.emplace_back(ext[i], i);
                for (std::size_t t = 0; t < tuples.size(); ++t) {
                    for (const auto &[mask, first] : distinct) {
                        ++res.checks;
                        std::uint64_t got = fev.extension(*schema_forms[t], {{"$phi", mask}});
                        if (got == fev.all())
                            continue;
                        Countermodel cm;
                        cm.model = frame;
                        for (std::size_t k = 0; k < names.size(); ++k)
                            for (std::size_t w = 0; w < n; ++w)
                                if (val[k] >> w & 1)
                                    cm.model.atoms[w].insert(names[k]);
                        cm.node = std::countr_zero(~got & fev.all());
                        cm.phi = table.formulas[first];
                        cm.boxes = tuples[t];
                        cm.instance = instantiate(s, cm.phi, cm.boxes);
                        std::string inst;
                        const char *labels[] = {"n", "m"};
                        for (std::size_t j = 0; j < cm.boxes.size(); ++j)
                            inst += std::string(labels[j]) + "=" + std::to_string(cm.boxes[j]) + ";";
                        inst += "phi=" + print(cm.phi);
                        cm.id = std::string(to_string(s)) + "/" + std::to_string(n) + "n/" + parents_text(parents) +
                                "/" + valuation_text(val, names) + "/" + inst;
                        res.valid = false;
                        res.countermodel = std::move(cm);
                        return res;
                    }
                }
                // next valuation, first atom least significant
                std::size_t k = 0;
                while (k < digit.size() && ++digit[k] == ups.size())
                    digit[k++] = 0;
                if (k == digit.size())
                    break;
            }
        }
    }
    return res;
}

bool PrincipleReport::ok() const {
    return std::all_of(entries.begin(), entries.end(), [](const PrincipleEntry &e) { return e.ok(); });
}

PrincipleReport principle_suite(const SweepBounds &bounds) {
    PrincipleReport r;
    r.bounds = bounds;
    for (auto s : {Schema::IC1, Schema::IC2, Schema::IC3, Schema::MD, Schema::CS4, Schema::CS5})
        r.entries.push_back({s, expected_valid(s), validity_sweep(s, bounds)});
    r.restricted_cs5_note = "restricted CS5 (operand atoms all lawlike): assumed at derivation level, "
                            "no semantic validation in this model class";
    return r;
}

} // namespace brouwer
