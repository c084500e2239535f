// SPDX-License-Identifier: Apache-2.0

#include "brouwer/spreads.hpp"

#include <fstream>
#include <sstream>

namespace brouwer {

bool SpreadLaw::admits(PrefixView seq) const { return first_violation(seq) == 0; }

std::size_t SpreadLaw::first_violation(PrefixView seq) const {
    for (std::size_t i = 0; i < seq.size(); ++i) {
        bool ok = (i == 0) ? admits_first(seq[0]) : admits_next(seq.first(i), seq[i]);
        if (!ok)
            return i + 1;
    }
    return 0;
}

std::shared_ptr<const SpreadLaw> universal_spread() {
    static const auto law = std::make_shared<const SpreadLaw>(SpreadLaw{
        "universal",
        [](const Integer &v) { return v >= 0; },
        [](PrefixView, const Integer &v) { return v >= 0; },
        [](PrefixView) { return Integer(0); },
    });
    return law;
}

std::shared_ptr<const SpreadLaw> rng_spread() {
    static const auto law = std::make_shared<const SpreadLaw>(SpreadLaw{
        "rng",
        [](const Integer &) { return true; },
        [](PrefixView p, const Integer &z) { return admissible_successor(p.back(), z); },
        [](PrefixView p) { return p.empty() ? Integer(0) : Integer(2 * p.back()); },
    });
    return law;
}

EventTrace EventTrace::proved_at(std::uint64_t k) {
    if (k == 0)
        throw std::invalid_argument("resolution stage must be >= 1");
    EventTrace t;
    t.resolution = Resolution::Proved;
    t.stage = k;
    return t;
}

EventTrace EventTrace::refuted_at(std::uint64_t k) {
    if (k == 0)
        throw std::invalid_argument("resolution stage must be >= 1");
    EventTrace t;
    t.resolution = Resolution::Refuted;
    t.stage = k;
    return t;
}

EventTrace EventTrace::parse(std::string_view line) {
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r'))
        line.remove_suffix(1);
    bool lawlike = false;
    constexpr std::string_view suffix = " lawlike";
    if (line.size() >= suffix.size() && line.substr(line.size() - suffix.size()) == suffix) {
        lawlike = true;
        line.remove_suffix(suffix.size());
    }
    EventTrace t;
    if (line == "never") {
        t = never();
    } else {
        auto colon = line.find(':');
        if (colon == std::string_view::npos)
            throw std::invalid_argument("trace must be never | true:<k> | false:<k>: '" + std::string(line) + "'");
        auto head = line.substr(0, colon);
        auto digits = line.substr(colon + 1);
        if (digits.empty() || digits.size() > 18 || digits.find_first_not_of("0123456789") != std::string_view::npos)
            throw std::invalid_argument("trace stage must be a positive decimal integer: '" + std::string(line) + "'");
        std::uint64_t k = std::stoull(std::string(digits));
        if (k == 0)
            throw std::invalid_argument("trace stage must be >= 1");
        if (head == "true")
            t = proved_at(k);
        else if (head == "false")
            t = refuted_at(k);
        else
            throw std::invalid_argument("trace must be never | true:<k> | false:<k>: '" + std::string(line) + "'");
    }
    t.lawlike = lawlike;
    return t;
}

EventTrace EventTrace::load(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open trace file: " + path);
    std::string line;
    std::getline(in, line);
    std::string rest;
    while (std::getline(in, rest))
        if (!rest.empty() && rest != "\r")
            throw std::invalid_argument("trace file must contain a single line: " + path);
    return parse(line);
}

std::string EventTrace::str() const {
    std::string s;
    switch (resolution) {
    case Resolution::Never:
        s = "never";
        break;
    case Resolution::Proved:
        s = "true:" + std::to_string(stage);
        break;
    case Resolution::Refuted:
        s = "false:" + std::to_string(stage);
        break;
    }
    if (lawlike)
        s += " lawlike";
    return s;
}

StageEvents StageEvents::at(std::uint64_t n, const EventTrace &trace) {
    StageEvents ev;
    ev.stage = n;
    if (trace.resolved_by(n)) {
        ev.seen = trace.resolution;
        ev.seen_at = trace.stage;
    }
    return ev;
}

AdmissibilityFault::AdmissibilityFault(const std::string &generator, std::uint64_t stage, const std::string &detail)
    : std::runtime_error("generator '" + generator + "' emitted an inadmissible term at stage " +
                         std::to_string(stage) + ": " + detail),
      stage_(stage) {}

Generator Generator::lawlike(std::string name, Rule rule, std::shared_ptr<const SpreadLaw> law) {
    Generator g;
    g.name_ = std::move(name);
    g.law_ = std::move(law);
    g.step_ = [rule = std::move(rule)](PrefixView p) { return rule(p.size() + 1); };
    return g;
}

Generator Generator::lawlike_step(std::string name, Step step, std::shared_ptr<const SpreadLaw> law) {
    Generator g;
    g.name_ = std::move(name);
    g.law_ = std::move(law);
    g.step_ = std::move(step);
    return g;
}

Generator Generator::process(std::string name, Strategy strategy, std::shared_ptr<const SpreadLaw> law) {
    Generator g;
    g.name_ = std::move(name);
    g.law_ = std::move(law);
    g.strategy_ = std::move(strategy);
    return g;
}

Generator Generator::specialize_never() const {
    if (!is_process())
        return *this;
    return lawlike_step(name_ + "|never",
                        [s = strategy_](PrefixView p) { return s(p, StageEvents::at(p.size() + 1, EventTrace::never())); },
                        law_);
}

Integer Generator::next(PrefixView prefix, const EventTrace *trace) const {
    if (is_process()) {
        if (trace == nullptr)
            throw std::invalid_argument("process generator '" + name_ + "' requires an event trace");
        return strategy_(prefix, StageEvents::at(prefix.size() + 1, *trace));
    }
    return step_(prefix);
}

Prefix emit_prefix(const Generator &g, std::size_t n, const EventTrace *trace) {
    if (g.is_process() && trace == nullptr)
        throw std::invalid_argument("process generator '" + g.name() + "' requires an event trace");
    Prefix out;
    out.reserve(n);
    const auto &law = g.law();
    for (std::size_t i = 0; i < n; ++i) {
        Integer v = g.next(out, trace);
        bool ok = out.empty() ? law.admits_first(v) : law.admits_next(out, v);
        if (!ok) {
            std::ostringstream why;
            why << v.get_str() << " after " << (out.empty() ? std::string("<empty>") : out.back().get_str())
                << " under " << law.name;
            throw AdmissibilityFault(g.name(), i + 1, why.str());
        }
        out.push_back(std::move(v));
    }
    return out;
}

Prefix emit_prefix(const Generator &g, std::size_t n, const std::optional<EventTrace> &trace) {
    return emit_prefix(g, n, trace ? &*trace : nullptr);
}

Integer centering_step(PrefixView prefix, const Surd &target) {
    const std::uint64_t n = prefix.size() + 1;
    if (prefix.empty()) {
        // minimise |(a+1)/2 - x|  <=>  |a - (2x - 1)|, ties to the smaller a:
        // a = ceil(2x - 3/2) = -floor(3/2 - 2x)
        Surd y = Surd(Dyadic(Integer(3), 1)) - target * Dyadic(2);
        return -y.floor_scaled(0);
    }
    const Integer base = 2 * prefix.back();
    // candidate midpoints (base+k+1)/2^n for k = 0,1,2; pick the nearest by
    // comparing the target against the two separating points.
    for (int k = 0; k < 2; ++k) {
        Dyadic separator(2 * (base + k + 1) + 1, n + 1); // between midpoints k and k+1
        if (target.compare(separator) <= 0)
            return base + k;
    }
    return base + 2;
}

Generator targeted_lawlike(std::string name, std::function<Surd(std::uint64_t)> target) {
    return Generator::lawlike_step(std::move(name), [target = std::move(target)](PrefixView p) {
        return centering_step(p, target(p.size() + 1));
    });
}

Generator centered_generator(std::string name, Surd value) {
    return targeted_lawlike(std::move(name), [value = std::move(value)](std::uint64_t) { return value; });
}

Generator targeted_process(std::string name, std::function<Surd(const StageEvents &)> target) {
    return Generator::process(std::move(name), [target = std::move(target)](PrefixView p, const StageEvents &ev) {
        return centering_step(p, target(ev));
    });
}

} // namespace brouwer
