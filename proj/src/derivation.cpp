// SPDX-License-Identifier: Apache-2.0

#include "brouwer/derivation.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <mutex>
#include <sstream>

namespace brouwer {

ScriptError::ScriptError(const std::string &what, std::size_t line)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

bool Script::declared(const std::string &atom) const {
    return std::any_of(declarations.begin(), declarations.end(), [&](const Declaration &d) { return d.id == atom; });
}

bool Script::lawlike(const std::string &atom) const {
    return std::any_of(declarations.begin(), declarations.end(),
                       [&](const Declaration &d) { return d.id == atom && d.lawlike; });
}

std::string Script::str() const {
    std::ostringstream out;
    for (const auto &d : declarations)
        out << "assert " << d.id << (d.lawlike ? " lawlike" : "") << "\n";
    for (const auto &a : defaxes)
        out << "defax " << print(a.formula) << " # " << a.source << "\n";
    for (const auto &p : premises)
        out << "premise " << print(p.formula) << " # " << p.source << "\n";
    for (const auto &f : flags)
        out << "flag " << f << "\n";
    if (conclude)
        out << "conclude " << print(conclude) << "\n";
    for (const auto &l : lines) {
        switch (l.kind) {
        case ScriptLine::Kind::Assume:
            out << l.number << ": assume " << print(l.formula) << "\n";
            break;
        case ScriptLine::Kind::Discharge:
            out << "discharge " << l.number << "\n";
            break;
        case ScriptLine::Kind::Step: {
            out << l.number << ": " << print(l.formula) << " ; " << l.rule;
            if (!l.refs.empty()) {
                out << "(";
                for (std::size_t i = 0; i < l.refs.size(); ++i)
                    out << (i ? "," : "") << l.refs[i];
                out << ")";
            }
            out << "\n";
            break;
        }
        }
    }
    return out.str();
}

// --- parsing --------------------------------------------------------------------

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return std::string(s.substr(b, e - b));
}

bool starts_with_word(const std::string &s, std::string_view word) {
    return s.size() > word.size() && s.compare(0, word.size(), word) == 0 &&
           std::isspace(static_cast<unsigned char>(s[word.size()]));
}

std::uint64_t parse_number(const std::string &s, std::size_t line) {
    std::string t = trim(s);
    if (t.empty() || t.size() > 18 || !std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw ScriptError("expected a step number, got '" + t + "'", line);
    return std::stoull(t);
}

FormulaPtr formula_at(const std::string &text, std::size_t line) {
    try {
        return parse_formula(text);
    } catch (const std::exception &e) {
        throw ScriptError(e.what(), line);
    }
}

Sourced sourced(const std::string &rest, std::size_t line, bool need_source) {
    auto hash = rest.find('#');
    std::string source = hash == std::string::npos ? "" : trim(std::string_view(rest).substr(hash + 1));
    if (need_source && source.empty())
        throw ScriptError("a definitional axiom needs a '# <source>' comment", line);
    return {formula_at(rest.substr(0, hash), line), source};
}

} // namespace

Script parse_script(std::string_view text, std::string name) {
    Script s;
    s.name = std::move(name);
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string t = trim(raw);
        if (t.empty() || t[0] == '#')
            continue;
        if (starts_with_word(t, "assert")) {
            std::istringstream words(t.substr(6));
            Declaration d;
            std::string extra;
            words >> d.id >> extra;
            if (d.id.empty() || !std::all_of(d.id.begin(), d.id.end(), [](char c) {
                    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
                }))
                throw ScriptError("bad assertion id '" + d.id + "'", line);
            if (!extra.empty() && extra != "lawlike")
                throw ScriptError("unknown assertion attribute '" + extra + "'", line);
            d.lawlike = extra == "lawlike";
            s.declarations.push_back(d);
        } else if (starts_with_word(t, "defax")) {
            s.defaxes.push_back(sourced(t.substr(5), line, true));
        } else if (starts_with_word(t, "premise")) {
            s.premises.push_back(sourced(t.substr(7), line, false));
        } else if (starts_with_word(t, "flag")) {
            s.flags.push_back(trim(t.substr(4)));
        } else if (starts_with_word(t, "conclude")) {
            s.conclude = formula_at(t.substr(8), line);
        } else if (starts_with_word(t, "discharge")) {
            ScriptLine l;
            l.kind = ScriptLine::Kind::Discharge;
            l.number = parse_number(t.substr(9), line);
            l.line = line;
            s.lines.push_back(std::move(l));
        } else {
            auto colon = t.find(':');
            if (colon == std::string::npos)
                throw ScriptError("unrecognized line '" + t + "'", line);
            ScriptLine l;
            l.line = line;
            l.number = parse_number(t.substr(0, colon), line);
            std::string body = trim(t.substr(colon + 1));
            auto hash = body.find('#');
            if (hash != std::string::npos)
                body = trim(body.substr(0, hash));
            if (starts_with_word(body, "assume")) {
                l.kind = ScriptLine::Kind::Assume;
                l.formula = formula_at(body.substr(6), line);
            } else {
                auto semi = body.rfind(';');
                if (semi == std::string::npos)
                    throw ScriptError("step needs '; <Rule>(<refs>)'", line);
                l.formula = formula_at(body.substr(0, semi), line);
                std::string just = trim(body.substr(semi + 1));
                auto open = just.find('(');
                l.rule = trim(just.substr(0, open));
                if (l.rule.empty())
                    throw ScriptError("missing rule name", line);
                if (open != std::string::npos) {
                    auto close = just.find(')', open);
                    if (close == std::string::npos || trim(just.substr(close + 1)) != "")
                        throw ScriptError("malformed rule references '" + just + "'", line);
                    std::string refs = just.substr(open + 1, close - open - 1);
                    std::istringstream parts(refs);
                    std::string part;
                    while (std::getline(parts, part, ','))
                        if (!trim(part).empty())
                            l.refs.push_back(parse_number(part, line));
                }
            }
            s.lines.push_back(std::move(l));
        }
    }
    return s;
}

Script load_script(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    auto slash = path.find_last_of('/');
    return parse_script(buf.str(), slash == std::string::npos ? path : path.substr(slash + 1));
}

// --- checking -------------------------------------------------------------------

const std::vector<std::string> &rule_names() {
    static const std::vector<std::string> names = {
        "Premise",  "DefAxiom", "MP",      "AndIntro", "AndElim",  "OrIntro",   "ContraPos", "RAA",
        "ImpIntro", "MD-inst",  "IC1-inst", "IC2-inst", "IC3-inst", "CS5R-inst", "DNE-neg"};
    return names;
}

namespace {

struct Rejection {
    std::string reason;
};

[[noreturn]] void reject(std::string reason) { throw Rejection{std::move(reason)}; }

void lawlike_marks(const Formula &f, std::set<std::string> &out) {
    if (f.kind == Formula::Kind::Atom && f.lawlike)
        out.insert(f.name);
    if (f.lhs)
        lawlike_marks(*f.lhs, out);
    if (f.rhs)
        lawlike_marks(*f.rhs, out);
}

const std::string &refuted_countermodel(Schema s) {
    static std::mutex mu;
    static std::map<Schema, std::string> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(s);
    if (it == cache.end()) {
        SweepBounds b{3, 1, 3, 2};
        auto r = validity_sweep(s, b);
        it = cache.emplace(s, r.countermodel ? r.countermodel->id : std::string("none")).first;
    }
    return it->second;
}

struct Entry {
    FormulaPtr formula;
    std::vector<std::uint64_t> scope; ///< open assumptions, outermost first
    bool assume = false;
    bool closed = false;
    std::vector<std::uint64_t> outer; ///< scope before the assumption
    FormulaPtr last;                  ///< last formula of a closed block
};

bool prefix_of(const std::vector<std::uint64_t> &a, const std::vector<std::uint64_t> &b) {
    return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

class Checker {
  public:
    explicit Checker(const Script &s) : s_(s) {}

    CheckResult run() {
        CheckResult r;
        r.flags = s_.flags;
        try {
            header();
            for (const auto &l : s_.lines) {
                cur_ = &l;
                line(l, r);
            }
            cur_ = nullptr;
            if (!stack_.empty())
                reject("block opened at step " + std::to_string(stack_.back()) + " is never discharged");
            if (s_.lines.empty() || s_.lines.back().kind != ScriptLine::Kind::Step)
                reject(s_.lines.empty() ? "script has no steps" : "script must end with a step outside every block");
            FormulaPtr last_top = s_.lines.back().formula;
            if (s_.conclude && !equal(s_.conclude, last_top))
                reject("final step " + print(last_top) + " is not the declared conclusion " + print(s_.conclude));
            r.conclusion = last_top;
            r.verified = true;
        } catch (const Rejection &e) {
            r.verified = false;
            r.reason = e.reason;
            if (cur_) {
                r.rejected_step = cur_->kind == ScriptLine::Kind::Discharge ? 0 : cur_->number;
                r.rejected_line = cur_->line;
            }
        }
        return r;
    }

  private:
    void check_atoms(const Formula &f) {
        if (s_.declarations.empty())
            return;
        for (const auto &a : atoms_of(f))
            if (!s_.declared(a))
                reject("atom '" + a + "' is not declared by an assert line");
    }

    void header() {
        for (const auto &d : s_.defaxes)
            check_atoms(*d.formula);
        for (const auto &p : s_.premises)
            check_atoms(*p.formula);
        if (s_.conclude)
            check_atoms(*s_.conclude);
    }

    const Entry &ref(std::uint64_t n) {
        auto it = entries_.find(n);
        if (it == entries_.end())
            reject("reference to unknown step " + std::to_string(n));
        if (!prefix_of(it->second.scope, stack_))
            reject("step " + std::to_string(n) + " lies in a closed block");
        return it->second;
    }

    const Entry &block(std::uint64_t n) {
        auto it = entries_.find(n);
        if (it == entries_.end() || !it->second.assume)
            reject("step " + std::to_string(n) + " is not an assumption");
        if (!it->second.closed)
            reject("block of step " + std::to_string(n) + " is still open");
        if (!prefix_of(it->second.outer, stack_))
            reject("block of step " + std::to_string(n) + " lies in a closed block");
        return it->second;
    }

    void arity(const ScriptLine &l, std::size_t n) {
        if (l.refs.size() != n)
            reject(l.rule + " takes " + std::to_string(n) + " reference" + (n == 1 ? "" : "s"));
    }

    /// Checks an instance `lhs -> rhs` of a one-formula schema, either as
    /// the implication itself (0 refs) or as an inference from one step.
    template <typename Match>
    void instance(const ScriptLine &l, const std::string &shape, Match match) {
        FormulaPtr premise, conclusion;
        if (l.refs.empty()) {
            if (l.formula->kind != Formula::Kind::Implies)
                reject(l.rule + " needs an instance of " + shape);
            premise = l.formula->lhs;
            conclusion = l.formula->rhs;
        } else {
            arity(l, 1);
            premise = ref(l.refs[0]).formula;
            conclusion = l.formula;
        }
        if (!match(premise, conclusion))
            reject(print(premise) + " => " + print(conclusion) + " is not an instance of " + shape);
    }

    void line(const ScriptLine &l, CheckResult &r) {
        if (l.kind == ScriptLine::Kind::Discharge) {
            if (stack_.empty() || stack_.back() != l.number)
                reject("discharge " + std::to_string(l.number) + " does not close the innermost open block");
            auto &e = entries_[l.number];
            e.closed = true;
            e.last = last_[stack_.size()];
            stack_.pop_back();
            return;
        }
        if (l.number != next_)
            reject("expected step " + std::to_string(next_) + ", found " + std::to_string(l.number));
        ++next_;
        check_atoms(*l.formula);
        for (auto n : l.refs)
            if (n >= l.number)
                reject("step " + std::to_string(l.number) + " refers forward to step " + std::to_string(n));

        Entry e;
        e.formula = l.formula;
        if (l.kind == ScriptLine::Kind::Assume) {
            e.assume = true;
            e.outer = stack_;
            stack_.push_back(l.number);
        } else {
            justify(l, r);
            ++r.rules_used[l.rule];
        }
        e.scope = stack_;
        last_[stack_.size()] = l.formula;
        entries_[l.number] = std::move(e);
    }

    void justify(const ScriptLine &l, CheckResult &r) {
        const auto &f = l.formula;
        const std::string &rule = l.rule;
        if (rule == "Premise") {
            arity(l, 0);
            if (std::none_of(s_.premises.begin(), s_.premises.end(),
                             [&](const Sourced &p) { return equal(p.formula, f); }))
                reject(print(f) + " is not a declared premise");
        } else if (rule == "DefAxiom") {
            arity(l, 0);
            if (std::none_of(s_.defaxes.begin(), s_.defaxes.end(),
                             [&](const Sourced &d) { return equal(d.formula, f); }))
                reject(print(f) + " is not a declared definitional axiom");
        } else if (rule == "MP") {
            arity(l, 2);
            const auto &a = ref(l.refs[0]).formula;
            const auto &b = ref(l.refs[1]).formula;
            auto fits = [&](const FormulaPtr &x, const FormulaPtr &imp) {
                return imp->kind == Formula::Kind::Implies && equal(imp->lhs, x) && equal(imp->rhs, f);
            };
            if (!fits(a, b) && !fits(b, a))
                reject("modus ponens does not yield " + print(f));
        } else if (rule == "AndIntro") {
            arity(l, 2);
            if (!equal(f, conj(ref(l.refs[0]).formula, ref(l.refs[1]).formula)))
                reject(print(f) + " is not the conjunction of the referenced steps");
        } else if (rule == "AndElim") {
            arity(l, 1);
            const auto &a = ref(l.refs[0]).formula;
            if (a->kind != Formula::Kind::And || (!equal(a->lhs, f) && !equal(a->rhs, f)))
                reject(print(f) + " is not a conjunct of " + print(a));
        } else if (rule == "OrIntro") {
            arity(l, 1);
            const auto &a = ref(l.refs[0]).formula;
            if (f->kind != Formula::Kind::Or || (!equal(f->lhs, a) && !equal(f->rhs, a)))
                reject(print(f) + " is not a disjunction with disjunct " + print(a));
        } else if (rule == "ContraPos") {
            arity(l, 1);
            const auto &a = ref(l.refs[0]).formula;
            if (a->kind != Formula::Kind::Implies || !equal(f, imp(neg(a->rhs), neg(a->lhs))))
                reject(print(f) + " is not the contrapositive of " + print(a));
        } else if (rule == "RAA") {
            arity(l, 1);
            const auto &b = block(l.refs[0]);
            if (b.last->kind != Formula::Kind::Bottom)
                reject("block of step " + std::to_string(l.refs[0]) + " does not end in _|_");
            if (!equal(f, neg(b.formula)))
                reject(print(f) + " is not the negation of the assumption " + print(b.formula));
        } else if (rule == "ImpIntro") {
            arity(l, 1);
            const auto &b = block(l.refs[0]);
            if (!equal(f, imp(b.formula, b.last)))
                reject(print(f) + " is not " + print(imp(b.formula, b.last)));
        } else if (rule == "MD-inst") {
            instance(l, "~<*>phi -> ~phi", [](const FormulaPtr &p, const FormulaPtr &c) {
                return is_negation(*p) && is_negation(*c) && p->lhs->kind == Formula::Kind::SomeStage &&
                       equal(p->lhs->lhs, c->lhs);
            });
        } else if (rule == "IC1-inst") {
            instance(l, "[n]phi -> [n+m]phi", [](const FormulaPtr &p, const FormulaPtr &c) {
                return p->kind == Formula::Kind::Box && c->kind == Formula::Kind::Box && c->n >= p->n &&
                       equal(p->lhs, c->lhs);
            });
        } else if (rule == "IC2-inst") {
            instance(l, "~phi -> ~<*>phi", [](const FormulaPtr &p, const FormulaPtr &c) {
                return is_negation(*p) && is_negation(*c) && c->lhs->kind == Formula::Kind::SomeStage &&
                       equal(c->lhs->lhs, p->lhs);
            });
        } else if (rule == "IC3-inst") {
            instance(l, "phi -> <*>phi", [](const FormulaPtr &p, const FormulaPtr &c) {
                return c->kind == Formula::Kind::SomeStage && equal(c->lhs, p);
            });
        } else if (rule == "DNE-neg") {
            instance(l, "~~~phi -> ~phi", [](const FormulaPtr &p, const FormulaPtr &c) {
                return is_negation(*p) && is_negation(*p->lhs) && is_negation(*p->lhs->lhs) && is_negation(*c) &&
                       equal(p->lhs->lhs->lhs, c->lhs);
            });
        } else if (rule == "CS5R-inst") {
            FormulaPtr operand;
            instance(l, "<*>phi -> phi", [&](const FormulaPtr &p, const FormulaPtr &c) {
                operand = c;
                return p->kind == Formula::Kind::SomeStage && equal(p->lhs, c);
            });
            std::set<std::string> marked;
            lawlike_marks(*operand, marked);
            for (const auto &a : atoms_of(*operand))
                if (!s_.lawlike(a) && !marked.count(a))
                    reject("CS5R applied to " + print(operand) + ": '" + a +
                           "' is not recognized as testable (no lawlike flag), so <*>phi -> phi is not available");
            r.cs5r_instances.push_back(imp(some_stage(operand), operand));
            r.warnings.push_back("step " + std::to_string(l.number) + ": restricted CS5 assumed for " + print(operand) +
                                 " (lawlike operand; no semantic validation)");
        } else if (rule == "CS4" || rule == "CS4-inst" || rule == "CS5" || rule == "CS5-inst") {
            Schema s = rule.rfind("CS4", 0) == 0 ? Schema::CS4 : Schema::CS5;
            reject(std::string(rule) + " is not a rule of the theory: " + schema_text(s) + " has countermodel " +
                   refuted_countermodel(s));
        } else {
            reject("unknown rule '" + rule + "'");
        }
    }

    const Script &s_;
    const ScriptLine *cur_ = nullptr;
    std::uint64_t next_ = 1;
    std::vector<std::uint64_t> stack_;
    std::map<std::uint64_t, Entry> entries_;
    std::map<std::size_t, FormulaPtr> last_;
};

} // namespace

CheckResult check(const Script &script) { return Checker(script).run(); }

// --- mutations ------------------------------------------------------------------

std::vector<Script> single_step_mutations(const Script &script) {
    std::vector<Script> out;
    for (std::size_t i = 0; i < script.lines.size(); ++i) {
        if (script.lines[i].kind == ScriptLine::Kind::Discharge)
            continue;
        Script m = script;
        m.lines[i].formula = neg(m.lines[i].formula);
        out.push_back(std::move(m));
    }
    return out;
}

MutationReport mutation_test(const Script &script) {
    MutationReport rep;
    for (std::size_t i = 0; i < script.lines.size(); ++i) {
        const auto &l = script.lines[i];
        if (l.kind == ScriptLine::Kind::Discharge)
            continue;
        Script m = script;
        m.lines[i].formula = neg(l.formula);
        ++rep.mutants;
        if (check(m).verified)
            rep.survivors.push_back(l.number);
        else
            ++rep.rejected;
    }
    return rep;
}

// --- semantics ------------------------------------------------------------------

SoundnessReport semantic_check(const Script &script, const CheckResult &result, std::size_t max_nodes) {
    SoundnessReport rep;
    rep.max_nodes = max_nodes;
    if (!result.verified || !result.conclusion)
        throw std::invalid_argument("semantic_check needs a verified script");
    if (max_nodes == 0 || max_nodes > 6)
        throw ResourceRefusal("semantic check supports 1..6 nodes", static_cast<double>(max_nodes));

    std::vector<FormulaPtr> assumptions;
    for (const auto &d : script.defaxes)
        assumptions.push_back(d.formula);
    for (const auto &p : script.premises)
        assumptions.push_back(p.formula);
    for (const auto &c : result.cs5r_instances)
        assumptions.push_back(c);

    std::set<std::string> names = atoms_of(*result.conclusion);
    for (const auto &a : assumptions)
        for (const auto &n : atoms_of(*a))
            names.insert(n);
    std::vector<std::string> atoms(names.begin(), names.end());
    if (atoms.size() > 8)
        throw ResourceRefusal("semantic check supports at most 8 atoms", static_cast<double>(atoms.size()));

    for (std::size_t n = 1; n <= max_nodes; ++n) {
        for (const auto &parents : enumerate_trees(n)) {
            StageTree frame = StageTree::from_parents(parents);
            Evaluator ev(frame);
            auto ups = up_sets(frame);
            std::vector<std::size_t> choice(atoms.size(), 0);
            std::map<std::string, std::uint64_t> meta;
            while (true) {
                for (std::size_t i = 0; i < atoms.size(); ++i)
                    meta[atoms[i]] = ups[choice[i]];
                ++rep.models;
                bool sat = std::all_of(assumptions.begin(), assumptions.end(),
                                       [&](const FormulaPtr &a) { return ev.extension(*a, meta) & 1; });
                if (sat) {
                    ++rep.satisfying;
                    if (!(ev.extension(*result.conclusion, meta) & 1) && !rep.counterexample) {
                        std::ostringstream desc;
                        desc << n << "n/";
                        for (std::size_t w = 0; w < parents.size(); ++w)
                            desc << (w ? "," : "") << (parents[w] < 0 ? std::string("-") : std::to_string(parents[w]));
                        for (std::size_t i = 0; i < atoms.size(); ++i)
                            desc << "/" << atoms[i] << ":" << meta[atoms[i]];
                        rep.counterexample = desc.str();
                    }
                }
                std::size_t i = 0;
                while (i < atoms.size() && ++choice[i] == ups.size())
                    choice[i++] = 0;
                if (i == atoms.size())
                    break;
            }
        }
    }
    return rep;
}

// --- bundled scripts ------------------------------------------------------------

namespace {

const char *const kViennaDense = R"(# A sequence that follows a_n upward toward 1/2 and freezes at a_v once
# alpha (a critical number exists) is decided at stage v.
assert alpha lawlike
assert e_half
assert e_av
assert e_below
defax <*>(alpha | ~alpha) <-> e_av # definition of e: it equals some a_v exactly when alpha gets decided
defax e_half -> ~e_av # every a_v lies strictly below 1/2
defax e_below -> e_av # e below some a_v forces e to have frozen at a member
conclude ~e_half & (e_below -> alpha | ~alpha)
1: <*>(alpha | ~alpha) <-> e_av ; DefAxiom
2: e_half -> ~e_av ; DefAxiom
3: e_below -> e_av ; DefAxiom
4: <*>(alpha | ~alpha) -> e_av ; AndElim(1)
5: ~e_av -> ~<*>(alpha | ~alpha) ; ContraPos(4)
6: ~<*>(alpha | ~alpha) -> ~(alpha | ~alpha) ; MD-inst
7: assume e_half
8: ~e_av ; MP(7,2)
9: ~<*>(alpha | ~alpha) ; MP(8,5)
10: ~(alpha | ~alpha) ; MP(9,6)
11: assume alpha
12: alpha | ~alpha ; OrIntro(11)
13: _|_ ; MP(12,10)
discharge 11
14: ~alpha ; RAA(11)
15: alpha | ~alpha ; OrIntro(14)
16: _|_ ; MP(15,10)
discharge 7
17: ~e_half ; RAA(7)
18: <*>(alpha | ~alpha) -> alpha | ~alpha ; CS5R-inst
19: assume e_below
20: e_av ; MP(19,3)
21: e_av -> <*>(alpha | ~alpha) ; AndElim(1)
22: <*>(alpha | ~alpha) ; MP(20,21)
23: alpha | ~alpha ; MP(22,18)
discharge 19
24: e_below -> alpha | ~alpha ; ImpIntro(19)
25: ~e_half & (e_below -> alpha | ~alpha) ; AndIntro(17,24)
)";

const char *const kDriftDirect = R"(# Direct checking number d of a drift with rational counting numbers
# right of an irrational kernel c; alpha is neither tested nor known testable.
assert alpha
assert r
assert d_eq_c
assert d_lt_c
assert d_succ_c
assert d_gt_c
defax r <-> <*>(alpha | ~alpha) # definition of d: rational exactly when it switched to a counting number, which happens when alpha is decided
defax d_eq_c -> ~<*>(alpha | ~alpha) # d equals the kernel only if it never switched
defax ~d_lt_c # right wing: no term lies left of the kernel
defax d_succ_c <-> ~d_eq_c & ~d_lt_c # virtual order: c < d in the negative sense
defax d_gt_c -> <*>(alpha | ~alpha) # positive separation from the kernel needs a switch
flag ~r | ~~r follows from ~~r by disjunction introduction (the stronger "tested" reading)
conclude ~~r & (~r | ~~r) & (r -> <*>(alpha | ~alpha)) & ((~~r -> r) -> <*>(alpha | ~alpha)) & d_succ_c & (d_gt_c -> <*>(alpha | ~alpha))
1: r <-> <*>(alpha | ~alpha) ; DefAxiom
2: r -> <*>(alpha | ~alpha) ; AndElim(1)
3: <*>(alpha | ~alpha) -> r ; AndElim(1)
4: ~r -> ~<*>(alpha | ~alpha) ; ContraPos(3)
5: ~<*>(alpha | ~alpha) -> ~(alpha | ~alpha) ; MD-inst
6: assume ~r
7: ~<*>(alpha | ~alpha) ; MP(6,4)
8: ~(alpha | ~alpha) ; MP(7,5)
9: assume alpha
10: alpha | ~alpha ; OrIntro(9)
11: _|_ ; MP(10,8)
discharge 9
12: ~alpha ; RAA(9)
13: alpha | ~alpha ; OrIntro(12)
14: _|_ ; MP(13,8)
discharge 6
15: ~~r ; RAA(6)
16: ~r | ~~r ; OrIntro(15)
17: assume ~~r -> r
18: r ; MP(15,17)
19: <*>(alpha | ~alpha) ; MP(18,2)
discharge 17
20: (~~r -> r) -> <*>(alpha | ~alpha) ; ImpIntro(17)
21: d_eq_c -> ~<*>(alpha | ~alpha) ; DefAxiom
22: assume d_eq_c
23: ~<*>(alpha | ~alpha) ; MP(22,21)
24: ~(alpha | ~alpha) ; MP(23,5)
25: assume alpha
26: alpha | ~alpha ; OrIntro(25)
27: _|_ ; MP(26,24)
discharge 25
28: ~alpha ; RAA(25)
29: alpha | ~alpha ; OrIntro(28)
30: _|_ ; MP(29,24)
discharge 22
31: ~d_eq_c ; RAA(22)
32: ~d_lt_c ; DefAxiom
33: ~d_eq_c & ~d_lt_c ; AndIntro(31,32)
34: d_succ_c <-> ~d_eq_c & ~d_lt_c ; DefAxiom
35: ~d_eq_c & ~d_lt_c -> d_succ_c ; AndElim(34)
36: d_succ_c ; MP(33,35)
37: d_gt_c -> <*>(alpha | ~alpha) ; DefAxiom
38: ~~r & (~r | ~~r) ; AndIntro(15,16)
39: ~~r & (~r | ~~r) & (r -> <*>(alpha | ~alpha)) ; AndIntro(38,2)
40: ~~r & (~r | ~~r) & (r -> <*>(alpha | ~alpha)) & ((~~r -> r) -> <*>(alpha | ~alpha)) ; AndIntro(39,20)
41: ~~r & (~r | ~~r) & (r -> <*>(alpha | ~alpha)) & ((~~r -> r) -> <*>(alpha | ~alpha)) & d_succ_c ; AndIntro(40,36)
42: ~~r & (~r | ~~r) & (r -> <*>(alpha | ~alpha)) & ((~~r -> r) -> <*>(alpha | ~alpha)) & d_succ_c & (d_gt_c -> <*>(alpha | ~alpha)) ; AndIntro(41,37)
)";

const char *const kConditionalKs = R"(# Conditional checking number f: it leaves the kernel only on a proof of
# alpha. Everything below follows from r <-> <*>alpha; r <-> alpha is never used.
assert alpha
assert r
defax r <-> <*>alpha # definition of f: rational exactly when a proof of alpha has been found
flag step 37 is scenario-relative: it describes a course where <*>~~alpha holds without <*>alpha
conclude (~~r <-> ~~alpha) & (r -> <*>alpha) & (<*>~~alpha -> ~~r) & ((~~r -> r) -> <*>~~alpha -> <*>alpha)
1: r <-> <*>alpha ; DefAxiom
2: r -> <*>alpha ; AndElim(1)
3: <*>alpha -> r ; AndElim(1)
4: ~<*>alpha -> ~r ; ContraPos(2)
5: ~~r -> ~~<*>alpha ; ContraPos(4)
6: ~alpha -> ~<*>alpha ; IC2-inst
7: ~~<*>alpha -> ~~alpha ; ContraPos(6)
8: assume ~~r
9: ~~<*>alpha ; MP(8,5)
10: ~~alpha ; MP(9,7)
discharge 8
11: ~~r -> ~~alpha ; ImpIntro(8)
12: ~r -> ~<*>alpha ; ContraPos(3)
13: ~~<*>alpha -> ~~r ; ContraPos(12)
14: ~<*>alpha -> ~alpha ; MD-inst
15: ~~alpha -> ~~<*>alpha ; ContraPos(14)
16: assume ~~alpha
17: ~~<*>alpha ; MP(16,15)
18: ~~r ; MP(17,13)
discharge 16
19: ~~alpha -> ~~r ; ImpIntro(16)
20: assume <*>~~alpha
21: assume ~r
22: ~<*>alpha ; MP(21,12)
23: ~alpha ; MP(22,14)
24: assume ~~alpha
25: _|_ ; MP(23,24)
discharge 24
26: ~~~alpha ; RAA(24)
27: ~<*>~~alpha ; IC2-inst(26)
28: _|_ ; MP(20,27)
discharge 21
29: ~~r ; RAA(21)
discharge 20
30: <*>~~alpha -> ~~r ; ImpIntro(20)
31: assume ~~r -> r
32: assume <*>~~alpha
33: ~~r ; MP(32,30)
34: r ; MP(33,31)
35: <*>alpha ; MP(34,2)
discharge 32
36: <*>~~alpha -> <*>alpha ; ImpIntro(32)
discharge 31
37: (~~r -> r) -> <*>~~alpha -> <*>alpha ; ImpIntro(31)
38: ~~r <-> ~~alpha ; AndIntro(11,19)
39: (~~r <-> ~~alpha) & (r -> <*>alpha) ; AndIntro(38,2)
40: (~~r <-> ~~alpha) & (r -> <*>alpha) & (<*>~~alpha -> ~~r) ; AndIntro(39,30)
41: (~~r <-> ~~alpha) & (r -> <*>alpha) & (<*>~~alpha -> ~~r) & ((~~r -> r) -> <*>~~alpha -> <*>alpha) ; AndIntro(40,37)
)";

const char *const kConditionalKsLiteral = R"(# The literal equivalence r <-> alpha, obtained from the definition of the
# conditional checking number. The step from <*>alpha to alpha needs CS5 for
# an alpha that carries no lawlike flag.
assert alpha
assert r
defax r <-> <*>alpha # definition of f: rational exactly when a proof of alpha has been found
conclude r <-> alpha
1: r <-> <*>alpha ; DefAxiom
2: r -> <*>alpha ; AndElim(1)
3: <*>alpha -> r ; AndElim(1)
4: <*>alpha -> alpha ; CS5R-inst
5: assume r
6: <*>alpha ; MP(5,2)
7: alpha ; MP(6,4)
discharge 5
8: r -> alpha ; ImpIntro(5)
9: alpha -> <*>alpha ; IC3-inst
10: assume alpha
11: <*>alpha ; MP(10,9)
12: r ; MP(11,3)
discharge 10
13: alpha -> r ; ImpIntro(10)
14: r <-> alpha ; AndIntro(8,13)
)";

const char *const kCambridgeReduced = R"(# A lawlike sequence following a decreasing a_n toward 0 and freezing at a_v
# once the critical number v of a fleeing property is found.
assert alpha lawlike
assert c_zero
assert c_av
assert c_lt_zero
assert c_succ_zero
assert c_below
defax <*>alpha <-> c_av # definition of c: it equals some a_v exactly when the critical number is found
defax c_zero -> ~c_av # every a_v lies strictly above 0
defax ~c_lt_zero # every term is at least 0
defax c_succ_zero <-> ~c_zero & ~c_lt_zero # virtual order: 0 < c in the negative sense
defax c_below -> c_av # some a_n below c means the sequence froze at a member
premise ~~alpha # double-negated existence of the critical number, taken as established
flag premise ~~alpha is an assumption about the fleeing property, not a computed fact
conclude c_succ_zero & (c_below -> alpha)
1: <*>alpha <-> c_av ; DefAxiom
2: c_zero -> ~c_av ; DefAxiom
3: <*>alpha -> c_av ; AndElim(1)
4: ~c_av -> ~<*>alpha ; ContraPos(3)
5: ~<*>alpha -> ~alpha ; MD-inst
6: ~~alpha ; Premise
7: assume c_zero
8: ~c_av ; MP(7,2)
9: ~<*>alpha ; MP(8,4)
10: ~alpha ; MP(9,5)
11: _|_ ; MP(10,6)
discharge 7
12: ~c_zero ; RAA(7)
13: ~c_lt_zero ; DefAxiom
14: ~c_zero & ~c_lt_zero ; AndIntro(12,13)
15: c_succ_zero <-> ~c_zero & ~c_lt_zero ; DefAxiom
16: ~c_zero & ~c_lt_zero -> c_succ_zero ; AndElim(15)
17: c_succ_zero ; MP(14,16)
18: c_below -> c_av ; DefAxiom
19: c_av -> <*>alpha ; AndElim(1)
20: <*>alpha -> alpha ; CS5R-inst
21: assume c_below
22: c_av ; MP(21,18)
23: <*>alpha ; MP(22,19)
24: alpha ; MP(23,20)
discharge 21
25: c_below -> alpha ; ImpIntro(21)
26: c_succ_zero & (c_below -> alpha) ; AndIntro(17,25)
)";

} // namespace

const std::vector<BundledScript> &bundled_scripts() {
    static const std::vector<BundledScript> scripts = {
        {"vienna_dense", kViennaDense, true,
         "e != 1/2, and e below some a_v would make alpha decided (full continuum not dense in itself)"},
        {"drift_direct", kDriftDirect, true,
         "~~R(d) and R(d) tested; R(d) and ~~R(d) -> R(d) would make alpha testable; c < d virtually"},
        {"conditional_ks", kConditionalKs, true,
         "~~R(f) <-> ~~alpha and the remaining conclusions from R(f) <-> <*>alpha alone, without CS5"},
        {"cambridge_reduced", kCambridgeReduced, true,
         "c > 0 virtually, and an a_n below c would exhibit the critical number (reduced continuum)"},
    };
    return scripts;
}

const BundledScript &bundled_script(std::string_view name) {
    static const BundledScript literal{"conditional_ks_literal", kConditionalKsLiteral, false,
                                       "r <-> alpha from the definition needs CS5 on a non-lawlike alpha"};
    for (const auto &s : bundled_scripts())
        if (s.name == name)
            return s;
    if (name == literal.name)
        return literal;
    throw std::invalid_argument("unknown bundled script '" + std::string(name) + "'");
}

// --- KS prerequisites -----------------------------------------------------------

KsReport ks_prerequisite_report() {
    KsReport rep;
    rep.countermodels[Schema::CS4] = refuted_countermodel(Schema::CS4);
    rep.countermodels[Schema::CS5] = refuted_countermodel(Schema::CS5);
    auto add = [&](std::string text, std::optional<Schema> needs) {
        KsStep s;
        s.index = rep.steps.size() + 1;
        s.text = std::move(text);
        s.needs = needs;
        if (needs) {
            s.countermodel = rep.countermodels[*needs];
            if (std::find(rep.blocked.begin(), rep.blocked.end(), *needs) == rep.blocked.end())
                rep.blocked.push_back(*needs);
        }
        rep.steps.push_back(std::move(s));
    };
    add("[n]phi | ~[n]phi for every n (stage decidability)", Schema::CS4);
    add("define a(n) = 1 if [n]phi, a(n) = 0 otherwise (needs the case split of step 1)", std::nullopt);
    add("exists n a(n) = 1 <-> exists n [n]phi, by the definition of a", std::nullopt);
    add("exists n [n]phi -> phi", Schema::CS5);
    add("phi -> exists n [n]phi (IC3)", std::nullopt);
    add("combine 3, 4 and 5: phi <-> exists n a(n) = 1", std::nullopt);
    return rep;
}

std::string KsReport::str() const {
    std::ostringstream out;
    for (const auto &s : steps) {
        out << s.index << ". " << s.text;
        if (s.needs)
            out << "  [blocked: " << to_string(*s.needs) << " refuted by " << s.countermodel << "]";
        out << "\n";
    }
    out << "blocked rules:";
    for (auto b : blocked)
        out << " " << to_string(b);
    out << "\n";
    return out.str();
}

} // namespace brouwer
