#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "brouwer/drift.hpp"
#include "brouwer/spreads.hpp"
#include "oracles.hpp"

#include <cstdio>
#include <fstream>
#include <random>

using namespace brouwer;

namespace {

std::vector<mpz_class> as_mpz(const Prefix &p) { return {p.begin(), p.end()}; }

std::vector<EventTrace> small_traces(std::uint64_t k_max) {
    std::vector<EventTrace> out{EventTrace::never()};
    for (std::uint64_t k = 1; k <= k_max; ++k) {
        out.push_back(EventTrace::proved_at(k));
        out.push_back(EventTrace::refuted_at(k));
    }
    return out;
}

} // namespace

TEST_CASE("bundled laws") {
    auto u = universal_spread();
    Prefix ok{Integer(0), Integer(5), Integer(3)};
    Prefix bad{Integer(0), Integer(-1)};
    CHECK(u->admits(ok));
    CHECK(u->first_violation(bad) == 2);

    auto r = rng_spread();
    CHECK(r->admits(Prefix{Integer(-7), Integer(-14), Integer(-27), Integer(-52)}));
    CHECK(r->first_violation(Prefix{Integer(1), Integer(2), Integer(7)}) == 3);
    CHECK(r->first_violation(Prefix{Integer(1), Integer(1)}) == 2);
}

TEST_CASE("productivity witness, fuzzed") {
    std::mt19937_64 rng(11);
    for (auto law : {universal_spread(), rng_spread()}) {
        for (int i = 0; i < 10000; ++i) {
            Prefix p;
            std::size_t len = rng() % 12;
            for (std::size_t k = 0; k < len; ++k) {
                if (law->name == "rng")
                    p.push_back(k == 0 ? Integer(long(rng() % 201) - 100) : Integer(2 * p.back() + long(rng() % 3)));
                else
                    p.push_back(Integer(long(rng() % 1000)));
            }
            REQUIRE(law->admits(p));
            Integer s = law->some_successor(p);
            p.push_back(s);
            REQUIRE(law->admits(p));
        }
    }
}

TEST_CASE("trace text format") {
    CHECK(EventTrace::parse("never") == EventTrace::never());
    CHECK(EventTrace::parse("true:3") == EventTrace::proved_at(3));
    CHECK(EventTrace::parse("false:12\n") == EventTrace::refuted_at(12));
    auto lw = EventTrace::parse("true:2 lawlike");
    CHECK(lw.lawlike);
    CHECK(lw.str() == "true:2 lawlike");
    for (const auto &t : small_traces(4))
        CHECK(EventTrace::parse(t.str()) == t);
    for (const char *bad : {"", "maybe", "true:", "true:0", "false:-1", "true:3x", "never lawlike extra", "TRUE:3"})
        CHECK_THROWS_AS(EventTrace::parse(bad), std::invalid_argument);
    CHECK_THROWS_AS(EventTrace::proved_at(0), std::invalid_argument);
    CHECK_THROWS_AS(EventTrace::refuted_at(0), std::invalid_argument);

    auto path = std::string("spreads_trace_tmp.txt");
    {
        std::ofstream f(path);
        f << "false:4\n";
    }
    CHECK(EventTrace::load(path) == EventTrace::refuted_at(4));
    std::remove(path.c_str());
    CHECK_THROWS(EventTrace::load("no/such/trace/file"));
}

TEST_CASE("events become visible at their stage") {
    auto t = EventTrace::proved_at(3);
    CHECK(StageEvents::at(2, t).seen == Resolution::Never);
    CHECK(StageEvents::at(3, t).seen == Resolution::Proved);
    CHECK(StageEvents::at(3, t).seen_at == 3);
    CHECK(StageEvents::at(9, t).seen == Resolution::Proved);
    CHECK(StageEvents::at(9, EventTrace::never()).seen == Resolution::Never);
    CHECK(t.resolved_by(3));
    CHECK_FALSE(t.resolved_by(2));
}

TEST_CASE("nearest-midpoint centering matches the oracle") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 300; ++i) {
        long num = long(rng() % 2001) - 1000;
        std::uint64_t e = rng() % 9;
        Dyadic v(Integer(num), e);
        auto g = centered_generator("c", Surd(v));
        auto got = emit_prefix(g, 14);
        mpq_class target = mpq_class(num) / oracle::pow2q(e);
        target.canonicalize();
        auto want = oracle::walk(14, [&](std::uint64_t) { return target; });
        REQUIRE(as_mpz(got) == want);
    }
    // the 0-centred point sits at a_n = -1
    auto z = emit_prefix(centered_generator("z", Surd(Dyadic(0))), 6);
    for (const auto &t : z)
        CHECK(t == -1);
}

TEST_CASE("berlin-s examples") {
    auto g = berlin_s_generator();
    auto zero = [](std::uint64_t) { return mpq_class(0); };

    auto t0 = EventTrace::never();
    CHECK(as_mpz(emit_prefix(g, 3, &t0)) == oracle::walk(3, zero));

    auto t2 = EventTrace::proved_at(2);
    auto got = as_mpz(emit_prefix(g, 4, &t2));
    auto want = oracle::walk(4, [](std::uint64_t n) { return n < 2 ? mpq_class(0) : mpq_class(1, 4); });
    CHECK(got == want);
    CHECK(got[0] == oracle::walk(1, zero)[0]);
}

TEST_CASE("replay determinism and prefix stability") {
    auto g = berlin_s_generator();
    for (const auto &t : small_traces(5)) {
        auto long_p = emit_prefix(g, 30, &t);
        for (std::size_t n = 0; n <= 30; n += 3) {
            auto p = emit_prefix(g, n, &t);
            REQUIRE(std::equal(p.begin(), p.end(), long_p.begin()));
        }
        REQUIRE(emit_prefix(g, 30, &t) == long_p);
        REQUIRE(oracle::rng_admissible(as_mpz(long_p)));
    }
}

TEST_CASE("a process under `never` equals its lawlike specialisation") {
    std::vector<Generator> procs{berlin_s_generator(), vienna_e_generator()};
    for (auto kind : {CheckingKind::Direct, CheckingKind::Conditional})
        procs.push_back(flatten(rational_right_drift(), kind));
    procs.push_back(flatten(two_winged_mixed_drift(), CheckingKind::Oscillatory));
    auto never = EventTrace::never();
    for (const auto &g : procs) {
        REQUIRE(g.is_process());
        auto lawlike = g.specialize_never();
        CHECK_FALSE(lawlike.is_process());
        CHECK(emit_prefix(g, 25, &never) == emit_prefix(lawlike, 25));
    }
}

TEST_CASE("process generators need a trace") {
    auto g = berlin_s_generator();
    CHECK_THROWS_AS(emit_prefix(g, 3), std::invalid_argument);
    CHECK_THROWS_AS(g.next(Prefix{}, nullptr), std::invalid_argument);
}

TEST_CASE("inadmissible terms are reported with their stage") {
    auto bad = Generator::lawlike("jumpy", [](std::uint64_t n) { return n == 3 ? Integer(100) : Integer(0); });
    try {
        (void)emit_prefix(bad, 5);
        FAIL("expected a fault");
    } catch (const AdmissibilityFault &f) {
        CHECK(f.stage() == 3);
        CHECK(std::string(f.what()).find("jumpy") != std::string::npos);
    }
    CHECK(emit_prefix(bad, 2).size() == 2);

    auto neg = Generator::lawlike("negative", [](std::uint64_t) { return Integer(-1); }, universal_spread());
    CHECK_THROWS_AS(emit_prefix(neg, 1), AdmissibilityFault);
}

TEST_CASE("lawlike generators from rules and steps agree") {
    auto rule = Generator::lawlike("doubling", [](std::uint64_t n) -> Integer { return Integer(3) * pow2(n - 1); });
    auto step = Generator::lawlike_step("doubling", [](PrefixView p) -> Integer { return p.empty() ? Integer(3) : Integer(2 * p.back()); });
    CHECK(emit_prefix(rule, 20) == emit_prefix(step, 20));
}
