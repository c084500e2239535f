#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "brouwer/dyadic.hpp"
#include "brouwer/surd.hpp"
#include "oracles.hpp"

#include <random>

using namespace brouwer;

namespace {

mpq_class q_of(const Dyadic &d) {
    mpq_class v = mpq_class(d.numerator()) / oracle::pow2q(d.exponent());
    v.canonicalize();
    return v;
}

} // namespace

TEST_CASE("canonical form") {
    Dyadic d(Integer(12), 4); // 12/16 = 3/4
    CHECK(d.numerator() == 3);
    CHECK(d.exponent() == 2);
    CHECK(Dyadic(Integer(0), 9) == Dyadic(0));
    CHECK(Dyadic(Integer(8), 3) == Dyadic(1));
    CHECK(Dyadic::unit(3).str() == "1/2^3");
}

TEST_CASE("parse and print") {
    CHECK(Dyadic::parse("3/2^2") == Dyadic(Integer(3), 2));
    CHECK(Dyadic::parse("-5") == Dyadic(-5));
    CHECK(Dyadic::parse("6/2^1") == Dyadic(3));
    CHECK(Dyadic::parse(Dyadic(Integer(-7), 5).str()) == Dyadic(Integer(-7), 5));
    CHECK_THROWS_AS(Dyadic::parse("1/3"), std::invalid_argument);
    CHECK_THROWS_AS(Dyadic::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(Dyadic::parse("x/2^1"), std::invalid_argument);

    auto iv = Interval::parse("[-1/2^1,3/2^2]");
    CHECK(iv.lo == Dyadic(Integer(-1), 1));
    CHECK(iv.hi == Dyadic(Integer(3), 2));
    CHECK(Interval::parse(iv.str()) == iv);
    CHECK_THROWS_AS(Interval::parse("[1,0]"), std::invalid_argument);
    CHECK_THROWS_AS(Interval::parse("1,2"), std::invalid_argument);
}

TEST_CASE("shifts") {
    CHECK(floor_shift(Integer(-3), 1) == -2);
    CHECK(ceil_shift(Integer(-3), 1) == -1);
    CHECK(floor_shift(Integer(7), 2) == 1);
    CHECK(ceil_shift(Integer(7), 2) == 2);
    CHECK(pow2(10) == 1024);
    for (long x = -40; x <= 40; ++x)
        CHECK(floor_shift(Integer(x), 1) == oracle::floor_half(x));
}

TEST_CASE("interval relations") {
    auto I = [](long a, long b) { return Interval(Dyadic(a), Dyadic(b)); };
    CHECK(interval_relate(I(0, 1), I(2, 3)) == Relation::Disjoint);
    CHECK(interval_relate(I(0, 1), I(1, 2)) == Relation::Overlap);
    CHECK(interval_relate(I(0, 1), Interval(Dyadic::unit(2), Dyadic(Integer(3), 2))) == Relation::Contains);
    CHECK(interval_relate(Interval(Dyadic::unit(2), Dyadic(Integer(3), 2)), I(0, 1)) == Relation::ContainedIn);
    CHECK(interval_relate(I(0, 1), I(0, 1)) == Relation::Contains);
    CHECK(to_string(Relation::Overlap) == "Overlap");
}

TEST_CASE("lambda intervals: exact length and nesting, exhaustive") {
    for (std::uint64_t n = 1; n <= 16; ++n) {
        for (long a = -64; a <= 64; ++a) {
            auto iv = lambda_interval(n, Integer(a));
            auto ref = oracle::lambda(n, Integer(a));
            REQUIRE(q_of(iv.lo) == ref.lo);
            REQUIRE(q_of(iv.hi) == ref.hi);
            REQUIRE(iv.length() == Dyadic(Integer(1), n - 1));
            for (long z = 2 * a - 1; z <= 2 * a + 3; ++z) {
                bool adm = admissible_successor(Integer(a), Integer(z));
                REQUIRE(adm == (z >= 2 * a && z <= 2 * a + 2));
                auto child = oracle::lambda(n + 1, Integer(z));
                bool nested = ref.lo <= child.lo && child.hi <= ref.hi;
                REQUIRE(nested == adm);
                if (adm)
                    REQUIRE(iv.contains(lambda_interval(n + 1, Integer(z))));
            }
        }
    }
    CHECK_THROWS_AS(lambda_interval(0, Integer(0)), std::invalid_argument);
}

TEST_CASE("arithmetic is exact") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(-1'000'000, 1'000'000);
    std::uniform_int_distribution<std::uint64_t> ex(0, 80);
    for (int i = 0; i < 5000; ++i) {
        Dyadic p(Integer(num(rng)), ex(rng));
        Dyadic q(Integer(num(rng)), ex(rng));
        REQUIRE((p + q) - q == p);
        REQUIRE(q_of(p + q) == q_of(p) + q_of(q));
        REQUIRE(q_of(p * q) == q_of(p) * q_of(q));
        REQUIRE(q_of(-p) == -q_of(p));
        REQUIRE(((p <=> q) < 0) == (q_of(p) < q_of(q)));
        REQUIRE(q_of(p.half()) == q_of(p) / 2);
        std::uint64_t n = ex(rng);
        mpz_class fl;
        mpq_class scaled = q_of(p) * oracle::pow2q(n);
        mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
        REQUIRE(p.floor_scaled(n) == fl);
        long b = num(rng) % 97;
        long c = 1 + std::abs(num(rng)) % 89;
        mpq_class r(b, c);
        r.canonicalize();
        int want = q_of(p) < r ? -1 : (q_of(p) > r ? 1 : 0);
        REQUIRE(p.compare_rational(Integer(b), Integer(c)) == want);
    }
    CHECK_THROWS_AS(Dyadic(1).compare_rational(Integer(1), Integer(0)), std::invalid_argument);
}

TEST_CASE("surd comparison against a rational oracle") {
    auto s = Surd::sqrt2();
    CHECK_FALSE(s.is_rational());
    CHECK(s.compare(Dyadic(1)) > 0);
    CHECK(s.compare(Dyadic(Integer(3), 1)) < 0);
    for (std::uint64_t n = 0; n < 60; ++n) {
        // floor(sqrt2 * 2^n) = isqrt(2^{2n+1})
        mpz_class r;
        mpz_class two = oracle::pow2q(2 * n + 1).get_num();
        mpz_sqrt(r.get_mpz_t(), two.get_mpz_t());
        REQUIRE(s.floor_scaled(n) == r);
    }
    Surd k = s - Surd(Dyadic(1));
    CHECK(k.compare(Dyadic(Integer(13), 5)) > 0); // 0.40625
    CHECK(k.compare(Dyadic(Integer(27), 6)) < 0); // 0.421875
    CHECK(Surd(Dyadic(Integer(3), 2)).is_rational());
    CHECK(Surd(Dyadic(Integer(3), 2)).as_dyadic() == Dyadic(Integer(3), 2));
}
