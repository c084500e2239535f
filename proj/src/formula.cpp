// SPDX-License-Identifier: Apache-2.0

#include "brouwer/formula.hpp"

#include <cctype>

namespace brouwer {

namespace {

FormulaPtr make(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

FormulaPtr binary(Formula::Kind k, FormulaPtr a, FormulaPtr b) {
    Formula f;
    f.kind = k;
    f.lhs = std::move(a);
    f.rhs = std::move(b);
    return make(std::move(f));
}

} // namespace

FormulaPtr atom(std::string name, bool lawlike) {
    Formula f;
    f.kind = Formula::Kind::Atom;
    f.name = std::move(name);
    f.lawlike = lawlike;
    return make(std::move(f));
}

FormulaPtr bottom() {
    static const FormulaPtr b = make(Formula{});
    return b;
}

FormulaPtr conj(FormulaPtr a, FormulaPtr b) { return binary(Formula::Kind::And, std::move(a), std::move(b)); }
FormulaPtr disj(FormulaPtr a, FormulaPtr b) { return binary(Formula::Kind::Or, std::move(a), std::move(b)); }
FormulaPtr imp(FormulaPtr a, FormulaPtr b) { return binary(Formula::Kind::Implies, std::move(a), std::move(b)); }
FormulaPtr neg(FormulaPtr a) { return imp(std::move(a), bottom()); }
FormulaPtr iff(FormulaPtr a, FormulaPtr b) { return conj(imp(a, b), imp(b, a)); }

FormulaPtr box(std::uint64_t n, FormulaPtr a) {
    if (n == 0)
        throw std::invalid_argument("stage index must be >= 1");
    if (!box_free(*a))
        throw std::invalid_argument("nesting error: the operand of [" + std::to_string(n) + "] must be box-free");
    Formula f;
    f.kind = Formula::Kind::Box;
    f.n = n;
    f.lhs = std::move(a);
    return make(std::move(f));
}

FormulaPtr some_stage(FormulaPtr a) {
    if (!box_free(*a))
        throw std::invalid_argument("nesting error: the operand of <*> must be box-free");
    Formula f;
    f.kind = Formula::Kind::SomeStage;
    f.lhs = std::move(a);
    return make(std::move(f));
}

FormulaPtr tested_now(FormulaPtr a) { return disj(neg(a), neg(neg(a))); }
FormulaPtr tested_later(FormulaPtr a) { return some_stage(tested_now(std::move(a))); }

bool is_negation(const Formula &f) { return f.kind == Formula::Kind::Implies && f.rhs->kind == Formula::Kind::Bottom; }

bool box_free(const Formula &f) {
    switch (f.kind) {
    case Formula::Kind::Atom:
    case Formula::Kind::Bottom:
        return true;
    case Formula::Kind::Box:
    case Formula::Kind::SomeStage:
        return false;
    default:
        return box_free(*f.lhs) && box_free(*f.rhs);
    }
}

bool equal(const Formula &a, const Formula &b) {
    if (&a == &b)
        return true;
    if (a.kind != b.kind)
        return false;
    switch (a.kind) {
    case Formula::Kind::Atom:
        return a.name == b.name;
    case Formula::Kind::Bottom:
        return true;
    case Formula::Kind::Box:
        return a.n == b.n && equal(*a.lhs, *b.lhs);
    case Formula::Kind::SomeStage:
        return equal(*a.lhs, *b.lhs);
    default:
        return equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
    }
}

namespace {

void collect_atoms(const Formula &f, std::set<std::string> &out) {
    if (f.kind == Formula::Kind::Atom)
        out.insert(f.name);
    if (f.lhs)
        collect_atoms(*f.lhs, out);
    if (f.rhs)
        collect_atoms(*f.rhs, out);
}

} // namespace

std::set<std::string> atoms_of(const Formula &f) {
    std::set<std::string> out;
    collect_atoms(f, out);
    return out;
}

FormulaPtr substitute(const FormulaPtr &f, const std::string &name, const FormulaPtr &by) {
    switch (f->kind) {
    case Formula::Kind::Atom:
        return f->name == name ? by : f;
    case Formula::Kind::Bottom:
        return f;
    case Formula::Kind::Box:
        return box(f->n, substitute(f->lhs, name, by));
    case Formula::Kind::SomeStage:
        return some_stage(substitute(f->lhs, name, by));
    default:
        return binary(f->kind, substitute(f->lhs, name, by), substitute(f->rhs, name, by));
    }
}

std::size_t size(const Formula &f) {
    std::size_t s = 1;
    if (f.lhs)
        s += size(*f.lhs);
    if (f.rhs)
        s += size(*f.rhs);
    return s;
}

// --- printing -----------------------------------------------------------------

namespace {

enum Prec { PIff = 0, PImp = 1, POr = 2, PAnd = 3, PUnary = 4 };

bool is_iff(const Formula &f) {
    return f.kind == Formula::Kind::And && f.lhs->kind == Formula::Kind::Implies &&
           f.rhs->kind == Formula::Kind::Implies && !is_negation(*f.lhs) && !is_negation(*f.rhs) &&
           equal(*f.lhs->lhs, *f.rhs->rhs) && equal(*f.lhs->rhs, *f.rhs->lhs);
}

std::string render(const Formula &f, int ctx);

std::string wrap(std::string s, int own, int ctx) { return own < ctx ? "(" + s + ")" : s; }

std::string render(const Formula &f, int ctx) {
    switch (f.kind) {
    case Formula::Kind::Atom:
        return f.lawlike ? f.name + "!" : f.name;
    case Formula::Kind::Bottom:
        return "_|_";
    case Formula::Kind::Box:
        return "[" + std::to_string(f.n) + "]" + render(*f.lhs, PUnary);
    case Formula::Kind::SomeStage:
        return "<*>" + render(*f.lhs, PUnary);
    case Formula::Kind::Implies:
        if (is_negation(f))
            return "~" + render(*f.lhs, PUnary);
        return wrap(render(*f.lhs, POr) + " -> " + render(*f.rhs, PImp), PImp, ctx);
    case Formula::Kind::Or:
        return wrap(render(*f.lhs, POr) + " | " + render(*f.rhs, PAnd), POr, ctx);
    case Formula::Kind::And:
        if (is_iff(f))
            return wrap(render(*f.lhs->lhs, PImp) + " <-> " + render(*f.lhs->rhs, PImp), PIff, ctx);
        return wrap(render(*f.lhs, PAnd) + " & " + render(*f.rhs, PUnary), PAnd, ctx);
    }
    return "?";
}

} // namespace

std::string print(const Formula &f) { return render(f, PIff); }

// --- parsing --------------------------------------------------------------------

ParseError::ParseError(const std::string &what, std::size_t position)
    : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}

namespace {

bool ident_start(char c) { return c >= 'a' && c <= 'z'; }
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9') || c == '_'; }

class Parser {
  public:
    explicit Parser(std::string_view text) : s_(text) {}

    FormulaPtr run() {
        auto f = parse_iff();
        skip();
        if (i_ != s_.size())
            throw ParseError("unexpected '" + std::string(1, s_[i_]) + "'", i_);
        return f;
    }

  private:
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
            ++i_;
    }

    bool at(std::string_view tok) {
        skip();
        return s_.substr(i_, tok.size()) == tok;
    }

    bool eat(std::string_view tok) {
        if (!at(tok))
            return false;
        i_ += tok.size();
        return true;
    }

    bool operand_starts_at(std::size_t j) const {
        if (j >= s_.size())
            return false;
        char c = s_[j];
        if (ident_start(c) || c == '(' || c == '~' || c == '[' || c == '_')
            return true;
        return s_.substr(j, 3) == "<*>";
    }

    FormulaPtr parse_iff() {
        auto l = parse_imp();
        if (eat("<->")) {
            auto r = parse_imp();
            if (at("<->"))
                throw ParseError("'<->' does not chain; add parentheses", i_);
            return iff(l, r);
        }
        return l;
    }

    FormulaPtr parse_imp() {
        auto l = parse_or();
        if (eat("->"))
            return imp(l, parse_imp());
        return l;
    }

    FormulaPtr parse_or() {
        auto l = parse_and();
        while (at("|")) {
            ++i_;
            l = disj(l, parse_and());
        }
        return l;
    }

    FormulaPtr parse_and() {
        auto l = parse_unary();
        while (eat("&"))
            l = conj(l, parse_unary());
        return l;
    }

    FormulaPtr modal_operand(const std::string &op) {
        std::size_t pos = (skip(), i_);
        auto f = parse_unary();
        if (!box_free(*f))
            throw ParseError("nesting error: the operand of " + op + " must be box-free", pos);
        return f;
    }

    FormulaPtr parse_unary() {
        skip();
        if (eat("~"))
            return neg(parse_unary());
        if (eat("<*>"))
            return some_stage(modal_operand("<*>"));
        if (at("[")) {
            std::size_t start = ++i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
                ++i_;
            if (start == i_ || i_ - start > 18)
                throw ParseError("expected a stage index after '['", start);
            std::uint64_t n = std::stoull(std::string(s_.substr(start, i_ - start)));
            if (n == 0)
                throw ParseError("stage index must be >= 1", start);
            if (!eat("]"))
                throw ParseError("expected ']'", i_);
            return box(n, modal_operand("[" + std::to_string(n) + "]"));
        }
        if (at("|") && !at("_|_")) {
            ++i_;
            skip();
            if (i_ >= s_.size() || !ident_start(s_[i_]))
                throw ParseError("'|' as a prefix applies to an atom", i_);
            return tested_now(parse_atom());
        }
        return parse_primary();
    }

    FormulaPtr parse_atom() {
        std::size_t start = i_;
        while (i_ < s_.size() && ident_char(s_[i_]))
            ++i_;
        std::string name(s_.substr(start, i_ - start));
        bool lawlike = false;
        if (i_ < s_.size() && s_[i_] == '!') {
            lawlike = true;
            ++i_;
        }
        return atom(std::move(name), lawlike);
    }

    FormulaPtr parse_primary() {
        skip();
        if (i_ >= s_.size())
            throw ParseError("unexpected end of formula", i_);
        if (eat("_|_"))
            return bottom();
        if (eat("(")) {
            auto f = parse_iff();
            if (!eat(")"))
                throw ParseError("expected ')'", i_);
            return f;
        }
        if (ident_start(s_[i_])) {
            auto a = parse_atom();
            // `a|` directly attached, not followed by an operand: tested later
            if (i_ < s_.size() && s_[i_] == '|') {
                std::size_t j = i_ + 1;
                while (j < s_.size() && std::isspace(static_cast<unsigned char>(s_[j])))
                    ++j;
                if (!operand_starts_at(j)) {
                    ++i_;
                    return tested_later(a);
                }
            }
            return a;
        }
        throw ParseError("unexpected '" + std::string(1, s_[i_]) + "'", i_);
    }

    std::string_view s_;
    std::size_t i_ = 0;
};

} // namespace

FormulaPtr parse_formula(std::string_view text) { return Parser(text).run(); }

} // namespace brouwer
