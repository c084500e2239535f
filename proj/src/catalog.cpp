// SPDX-License-Identifier: Apache-2.0

#include "brouwer/catalog.hpp"

#include <stdexcept>

namespace brouwer {

namespace {

std::uint64_t parse_count(std::string_view text, std::string_view what) {
    if (text.empty() || text.size() > 18 || text.find_first_not_of("0123456789") != std::string_view::npos)
        throw std::invalid_argument("expected a positive integer for " + std::string(what) + ", got '" +
                                    std::string(text) + "'");
    auto v = std::stoull(std::string(text));
    if (v == 0)
        throw std::invalid_argument(std::string(what) + " must be positive");
    return v;
}

/// Splits "head:rest" at the first colon.
std::pair<std::string_view, std::string_view> split(std::string_view spec) {
    auto colon = spec.find(':');
    if (colon == std::string_view::npos)
        return {spec, {}};
    return {spec.substr(0, colon), spec.substr(colon + 1)};
}

Family dyadic_down(std::uint64_t shift) {
    return [shift](std::uint64_t v) { return Surd(Dyadic::unit(v + shift)); };
}

} // namespace

const std::vector<SpecHelp> &generator_specs() {
    static const std::vector<SpecHelp> specs = {
        {"zero", "a_n = 0: the point 0", false},
        {"one", "a_n = 2^n - 2: the point 1", false},
        {"half", "centered on 1/2", false},
        {"minus-one", "a_n = -2^n: the point -1", false},
        {"centered:<m/2^k>", "centered on a dyadic value", false},
        {"kernel:<drift>", "centered on the kernel of a bundled drift", false},
        {"berlin-s", "oscillatory checking point of the Berlin drift", true},
        {"vienna-e", "follows 1/2 - 2^{-n-1} until the assertion is decided", true},
        {"checking:<drift>:<kind>", "checking point of a bundled drift (kind direct|osc|cond)", true},
        {"berlin-r[:<property>]", "0 until the least witness K, then (-2)^{-K}; default pattern:0123456789", false},
        {"cambridge-c[:<property>]", "2^{-n} frozen at the least witness; default run:9x6", false},
        {"veldman-f2[:<property>]", "xi_v = 2^{-v}, switching at the least witness; default run:9x6", false},
    };
    return specs;
}

Generator generator_from_spec(std::string_view spec) {
    auto [head, rest] = split(spec);
    if (spec == "zero")
        return Generator::lawlike("zero", [](std::uint64_t) { return Integer(0); });
    if (spec == "one")
        return Generator::lawlike("one", [](std::uint64_t n) -> Integer { return pow2(n) - 2; });
    if (spec == "minus-one")
        return Generator::lawlike("minus-one", [](std::uint64_t n) { return Integer(-pow2(n)); });
    if (spec == "half")
        return centered_generator("half", Surd(Dyadic::unit(1)));
    if (head == "centered")
        return centered_generator(std::string(spec), Surd(Dyadic::parse(rest)));
    if (head == "kernel")
        return centered_generator(std::string(spec), bundled_drift(rest).kernel);
    if (spec == "berlin-s")
        return berlin_s_generator();
    if (spec == "vienna-e")
        return vienna_e_generator();
    if (head == "checking") {
        auto [drift, kind] = split(rest);
        return flatten(bundled_drift(drift), parse_checking_kind(kind), std::string(spec));
    }
    if (head == "berlin-r")
        return berlin_r(property_from_spec(rest.empty() ? "pattern:0123456789" : rest));
    if (head == "cambridge-c")
        return cambridge_c(dyadic_down(0), property_from_spec(rest.empty() ? "run:9x6" : rest));
    if (head == "veldman-f2")
        return veldman_F2(dyadic_down(0), property_from_spec(rest.empty() ? "run:9x6" : rest));
    throw std::invalid_argument("unknown generator spec '" + std::string(spec) + "'");
}

DecidableProperty property_from_spec(std::string_view spec, DigitOracle &oracle) {
    auto [head, rest] = split(spec);
    if (spec == "empty")
        return empty_property();
    if (head == "threshold")
        return threshold_property(parse_count(rest, "threshold"));
    if (head == "singleton")
        return singleton_property(parse_count(rest, "singleton"));
    if (head == "pattern") {
        if (rest.empty() || rest.find_first_not_of("0123456789") != std::string_view::npos)
            throw std::invalid_argument("pattern must be a non-empty digit string");
        return pattern_property(std::string(rest), oracle);
    }
    if (head == "run") {
        auto x = rest.find('x');
        if (x != 1 || rest[0] < '0' || rest[0] > '9')
            throw std::invalid_argument("run property is run:<digit>x<length>");
        return run_property(rest[0] - '0', parse_count(rest.substr(2), "run length"), oracle);
    }
    throw std::invalid_argument("unknown property spec '" + std::string(spec) + "'");
}

} // namespace brouwer
