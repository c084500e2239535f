// SPDX-License-Identifier: Apache-2.0

#include "brouwer/drift.hpp"

#include <limits>

namespace brouwer {

std::string_view to_string(Wing w) {
    switch (w) {
    case Wing::Left:
        return "left";
    case Wing::Right:
        return "right";
    case Wing::Two:
        return "two";
    }
    return "?";
}

std::string_view to_string(Rationality r) { return r == Rationality::Rational ? "rational" : "irrational"; }

std::string_view to_string(CheckingKind k) {
    switch (k) {
    case CheckingKind::Direct:
        return "direct";
    case CheckingKind::Oscillatory:
        return "osc";
    case CheckingKind::Conditional:
        return "cond";
    }
    return "?";
}

CheckingKind parse_checking_kind(std::string_view text) {
    if (text == "direct")
        return CheckingKind::Direct;
    if (text == "osc" || text == "oscillatory")
        return CheckingKind::Oscillatory;
    if (text == "cond" || text == "conditional")
        return CheckingKind::Conditional;
    throw std::invalid_argument("checking kind must be direct | osc | cond, got '" + std::string(text) + "'");
}

std::string_view to_string(LimitClass c) {
    switch (c) {
    case LimitClass::Rational:
        return "rational";
    case LimitClass::Irrational:
        return "irrational";
    case LimitClass::KernelClass:
        return "kernel-class";
    }
    return "?";
}

Surd Drift::counting(std::uint64_t v) const {
    if (v == 0)
        throw std::invalid_argument("counting numbers are indexed from 1");
    switch (wing) {
    case Wing::Right:
        return right(v);
    case Wing::Left:
        return left(v);
    case Wing::Two:
        return (v % 2 == 1) ? left(v) : right(v);
    }
    return kernel;
}

Rationality Drift::counting_tag(std::uint64_t v) const {
    switch (wing) {
    case Wing::Right:
        return right_tag;
    case Wing::Left:
        return left_tag;
    case Wing::Two:
        return (v % 2 == 1) ? left_tag : right_tag;
    }
    return kernel_tag;
}

namespace {

Point constant_point(const std::string &name, const Surd &v) { return Point(centered_generator(name, v)); }

} // namespace

DriftValidation validate_drift(const Drift &d, std::uint64_t upto, std::uint64_t horizon) {
    DriftValidation r;
    r.upto = upto;
    r.horizon = horizon;
    Point kernel = constant_point("c", d.kernel);

    struct Member {
        std::string name;
        Point point;
        Direction expected; // kernel vs member
    };
    std::vector<Member> members;
    for (std::uint64_t v = 1; v <= upto; ++v) {
        if (d.wing != Wing::Left)
            members.push_back({"r_" + std::to_string(v), constant_point("r", d.right(v)), Direction::FirstLess});
        if (d.wing != Wing::Right)
            members.push_back({"l_" + std::to_string(v), constant_point("l", d.left(v)), Direction::SecondLess});
    }
    for (const auto &m : members) {
        auto v = apart_at(kernel, m.point, horizon);
        if (!v.holds())
            r.failures.push_back("kernel vs " + m.name + " not apart at horizon " + std::to_string(horizon));
        else if (v.direction != m.expected)
            r.failures.push_back(m.name + " lies on the wrong side of the kernel");
    }
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j)
            if (!apart_at(members[i].point, members[j].point, horizon).holds())
                r.failures.push_back(members[i].name + " vs " + members[j].name + " not apart at horizon " +
                                     std::to_string(horizon));
    for (std::uint64_t k = 1; k <= upto; ++k) {
        auto start = d.convergence_index(k);
        for (std::uint64_t v = start; v <= start + upto; ++v) {
            Surd gap = d.counting(v) - d.kernel;
            if (gap.compare(Dyadic::unit(k)) >= 0 || gap.compare(-Dyadic::unit(k)) <= 0) {
                r.failures.push_back("c_" + std::to_string(v) + " outside the convergence modulus at k=" +
                                     std::to_string(k));
                break;
            }
        }
    }
    return r;
}

namespace {

Drift with_modulus(Drift d) {
    d.convergence_index = [](std::uint64_t k) { return k + 1; };
    return d;
}

} // namespace

Drift rational_right_drift() {
    Drift d;
    d.name = "rational-right";
    d.kernel = Surd(-1, 1, 0);
    d.kernel_tag = Rationality::Irrational;
    d.wing = Wing::Right;
    // smallest multiple of 2^{-v-1} above the kernel, plus 2^{-v-1}
    d.right = [k = d.kernel](std::uint64_t v) { return Surd(Dyadic(k.floor_scaled(v + 1) + 2, v + 1)); };
    d.right_tag = Rationality::Rational;
    return with_modulus(std::move(d));
}

Drift two_winged_mixed_drift() {
    Drift d;
    d.name = "two-winged-mixed";
    d.kernel = Dyadic(0);
    d.wing = Wing::Two;
    d.right = [](std::uint64_t v) { return Surd(Dyadic::unit(v)); };
    d.right_tag = Rationality::Rational;
    d.left = [](std::uint64_t v) { return Surd(0, -1, v + 1); };
    d.left_tag = Rationality::Irrational;
    return with_modulus(std::move(d));
}

Drift berlin_drift() {
    Drift d;
    d.name = "berlin";
    d.kernel = Dyadic(0);
    d.wing = Wing::Two;
    d.right = [](std::uint64_t v) { return Surd(Dyadic::unit(v)); };
    d.left = [](std::uint64_t v) { return Surd(-Dyadic::unit(v)); };
    return with_modulus(std::move(d));
}

Drift bundled_drift(std::string_view name) {
    if (name == "rational-right")
        return rational_right_drift();
    if (name == "two-winged-mixed")
        return two_winged_mixed_drift();
    if (name == "berlin")
        return berlin_drift();
    throw std::invalid_argument("unknown drift '" + std::string(name) +
                                "' (expected rational-right | two-winged-mixed | berlin)");
}

std::string TermRef::str() const {
    switch (kind) {
    case Kind::Kernel:
        return "c";
    case Kind::Counting:
        return "c_" + std::to_string(index);
    case Kind::Right:
        return "r_" + std::to_string(index);
    case Kind::Left:
        return "l_" + std::to_string(index);
    case Kind::Member:
        return "a_" + std::to_string(index);
    }
    return "?";
}

TermRef checking_term(const Drift &d, CheckingKind kind, const StageEvents &ev) {
    if (kind == CheckingKind::Oscillatory && d.wing != Wing::Two)
        throw std::invalid_argument("oscillatory checking needs a two-winged drift; '" + d.name + "' is " +
                                    std::string(to_string(d.wing)) + "-winged");
    const TermRef kernel{TermRef::Kind::Kernel, 0, d.kernel, d.kernel_tag};
    if (ev.seen == Resolution::Never)
        return kernel;
    const auto r = ev.seen_at;
    if (r == 0)
        throw std::invalid_argument("resolution stage must be >= 1");
    switch (kind) {
    case CheckingKind::Direct:
        return {TermRef::Kind::Counting, r, d.counting(r), d.counting_tag(r)};
    case CheckingKind::Conditional:
        if (ev.seen == Resolution::Proved)
            return {TermRef::Kind::Counting, r, d.counting(r), d.counting_tag(r)};
        return kernel;
    case CheckingKind::Oscillatory:
        if (ev.seen == Resolution::Proved)
            return {TermRef::Kind::Right, r, d.right(r), d.right_tag};
        return {TermRef::Kind::Left, r, d.left(r), d.left_tag};
    }
    return kernel;
}

namespace {

constexpr std::uint64_t at_the_end = std::numeric_limits<std::uint64_t>::max();

} // namespace

CheckingRun checking_sequence(const Drift &d, CheckingKind kind, const EventTrace &trace, std::uint64_t n) {
    CheckingRun run;
    run.limit = checking_term(d, kind, StageEvents::at(at_the_end, trace));
    run.limit_descriptor = run.limit.kind == TermRef::Kind::Kernel ? "kernel" : run.limit.str();
    run.terms.reserve(n);
    for (std::uint64_t i = 1; i <= n; ++i)
        run.terms.push_back(checking_term(d, kind, StageEvents::at(i, trace)));
    return run;
}

Generator flatten(const Drift &d, CheckingKind kind, std::string name) {
    if (name.empty())
        name = d.name + "/" + std::string(to_string(kind));
    if (kind == CheckingKind::Oscillatory && d.wing != Wing::Two)
        throw std::invalid_argument("oscillatory checking needs a two-winged drift");
    return targeted_process(std::move(name), [d, kind](const StageEvents &ev) { return checking_term(d, kind, ev).value; });
}

LimitClass rationality_descriptor(const Drift &d, CheckingKind kind, const EventTrace &trace) {
    auto limit = checking_term(d, kind, StageEvents::at(at_the_end, trace));
    if (limit.kind == TermRef::Kind::Kernel)
        return LimitClass::KernelClass;
    return limit.tag == Rationality::Rational ? LimitClass::Rational : LimitClass::Irrational;
}

Generator berlin_s_generator() { return flatten(berlin_drift(), CheckingKind::Oscillatory, "berlin-s"); }

Point berlin_s(const EventTrace &trace) { return Point(berlin_s_generator(), trace); }

Family vienna_family() {
    return [](std::uint64_t v) { return Surd(Dyadic::unit(1) - Dyadic::unit(v + 1)); };
}

TermRef vienna_term(const Family &a, const StageEvents &ev) {
    std::uint64_t v = ev.seen == Resolution::Never ? ev.stage : ev.seen_at;
    return {TermRef::Kind::Member, v, a(v), Rationality::Rational};
}

CheckingRun vienna_sequence(const Family &a, const EventTrace &trace, std::uint64_t n) {
    CheckingRun run;
    for (std::uint64_t i = 1; i <= n; ++i)
        run.terms.push_back(vienna_term(a, StageEvents::at(i, trace)));
    if (trace.resolution == Resolution::Never) {
        run.limit = {TermRef::Kind::Kernel, 0, Surd(Dyadic::unit(1)), Rationality::Rational};
        run.limit_descriptor = "1/2";
    } else {
        run.limit = vienna_term(a, StageEvents::at(at_the_end, trace));
        run.limit_descriptor = run.limit.str();
    }
    return run;
}

Generator vienna_e_generator(Family a) {
    return targeted_process("vienna-e", [a = std::move(a)](const StageEvents &ev) { return vienna_term(a, ev).value; });
}

Point vienna_e(const EventTrace &trace, Family a) { return Point(vienna_e_generator(std::move(a)), trace); }

} // namespace brouwer
