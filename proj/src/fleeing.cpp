// SPDX-License-Identifier: Apache-2.0

#include "brouwer/fleeing.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <vector>

namespace brouwer {

ResourceLimit::ResourceLimit(std::size_t requested, std::size_t limit)
    : std::runtime_error("requested " + std::to_string(requested) + " digits of pi, limit is " +
                         std::to_string(limit) + " (BW_DIGIT_LIMIT)"),
      requested_(requested), limit_(limit) {}

// --- Chudnovsky ---------------------------------------------------------------

namespace {

struct Split {
    mpz_class p, q, t;
};

// Binary splitting over terms [a, b).
Split chudnovsky_split(unsigned long a, unsigned long b) {
    static const mpz_class c3_over_24("10939058860032000");
    Split s;
    if (b - a == 1) {
        if (a == 0) {
            s.p = 1;
            s.q = 1;
        } else {
            mpz_class k = a;
            s.p = (6 * k - 5) * (2 * k - 1) * (6 * k - 1);
            s.q = k * k * k * c3_over_24;
        }
        s.t = s.p * (mpz_class(13591409) + mpz_class(545140134) * a);
        if (a & 1)
            s.t = -s.t;
        return s;
    }
    unsigned long m = a + (b - a) / 2;
    Split l = chudnovsky_split(a, m);
    Split r = chudnovsky_split(m, b);
    s.p = l.p * r.p;
    s.q = l.q * r.q;
    s.t = r.q * l.t + l.p * r.t;
    return s;
}

std::string chudnovsky_with_guard(std::size_t n, std::size_t guard) {
    const std::size_t d = n + guard;
    const unsigned long terms = static_cast<unsigned long>(d / 14) + 2;
    Split s = chudnovsky_split(0, terms);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, 2 * d);
    mpz_class root = 10005 * scale;
    mpz_sqrt(root.get_mpz_t(), root.get_mpz_t());
    mpz_class pi = (s.q * 426880 * root) / s.t;
    return pi.get_str();
}

} // namespace

std::string pi_digits_chudnovsky(std::size_t n) {
    if (n == 0)
        return {};
    std::size_t guard = 16;
    for (;;) {
        std::string s = chudnovsky_with_guard(n, guard);
        // s = "3" followed by n + guard decimals; a run of 0s or 9s in the
        // guard could hide a carry into the requested digits.
        auto tail = std::string_view(s).substr(n + 1);
        bool carry_risk = tail.find_first_not_of('9') == std::string_view::npos ||
                          tail.find_first_not_of('0') == std::string_view::npos;
        if (!carry_risk)
            return s.substr(1, n);
        guard *= 2;
    }
}

std::string pi_digits_spigot(std::size_t n) {
    if (n == 0)
        return {};
    // Emits a leading 0 predigit, then 3, then the decimals; a short margin
    // lets held-back nines settle.
    const std::size_t total = n + 12;
    const std::size_t len = 10 * total / 3 + 1;
    std::vector<std::uint64_t> a(len, 2);
    std::string out;
    out.reserve(total + 1);
    std::uint64_t nines = 0, predigit = 0;
    for (std::size_t j = 1; j <= total; ++j) {
        std::uint64_t q = 0;
        for (std::size_t i = len; i > 0; --i) {
            std::uint64_t x = 10 * a[i - 1] + q * i;
            a[i - 1] = x % (2 * i - 1);
            q = x / (2 * i - 1);
        }
        a[0] = q % 10;
        q /= 10;
        if (q == 9) {
            ++nines;
        } else if (q == 10) {
            out.push_back(char('0' + predigit + 1));
            out.append(nines, '0');
            predigit = 0;
            nines = 0;
        } else {
            out.push_back(char('0' + predigit));
            predigit = q;
            out.append(nines, '9');
            nines = 0;
        }
    }
    // out = "03" followed by decimals
    return out.substr(2, n);
}

namespace {

mpz_class atan_inverse(unsigned long x, const mpz_class &scale) {
    mpz_class sum = 0;
    mpz_class power = scale / x; // scale / x^(2k+1)
    const unsigned long x2 = x * x;
    for (unsigned long k = 0; power != 0; ++k) {
        mpz_class term = power / (2 * k + 1);
        if (k & 1)
            sum -= term;
        else
            sum += term;
        power /= x2;
    }
    return sum;
}

} // namespace

std::string pi_digits_machin(std::size_t n) {
    if (n == 0)
        return {};
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, n + 20);
    mpz_class pi = 4 * (4 * atan_inverse(5, scale) - atan_inverse(239, scale));
    return pi.get_str().substr(1, n);
}

// --- oracle ---------------------------------------------------------------------

std::size_t digit_limit_from_env() {
    const char *env = std::getenv("BW_DIGIT_LIMIT");
    if (env == nullptr || *env == '\0')
        return DigitOracle::default_limit;
    char *end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0)
        throw std::invalid_argument(std::string("BW_DIGIT_LIMIT must be a positive integer, got '") + env + "'");
    return static_cast<std::size_t>(v);
}

DigitOracle::DigitOracle() : limit_(digit_limit_from_env()) {}

DigitOracle::DigitOracle(std::size_t limit) : limit_(limit) {}

DigitOracle &DigitOracle::shared() {
    static DigitOracle oracle;
    static const bool checked = [] {
        auto report = oracle.self_test(std::min<std::size_t>(1000, oracle.limit()));
        if (!report.ok())
            throw std::runtime_error("pi oracle self-test failed: independent algorithms disagree");
        return true;
    }();
    (void)checked;
    return oracle;
}

void DigitOracle::ensure(std::size_t n) {
    if (n > limit_)
        throw ResourceLimit(n, limit_);
    {
        std::shared_lock lock(mutex_);
        if (cache_.size() >= n)
            return;
    }
    std::unique_lock lock(mutex_);
    if (cache_.size() >= n)
        return;
    std::size_t target = std::min(limit_, std::max({n, 2 * cache_.size(), std::size_t{1024}}));
    std::string fresh = pi_digits_chudnovsky(target);
    if (fresh.compare(0, cache_.size(), cache_) != 0)
        throw std::logic_error("pi oracle recomputation disagrees with its cached prefix");
    cache_ = std::move(fresh);
}

std::string DigitOracle::digits(std::size_t n) {
    ensure(n);
    std::shared_lock lock(mutex_);
    return cache_.substr(0, n);
}

char DigitOracle::digit(std::size_t pos) {
    if (pos == 0)
        throw std::invalid_argument("digit positions are 1-based");
    ensure(pos);
    std::shared_lock lock(mutex_);
    return cache_[pos - 1];
}

bool DigitOracle::matches_at(std::size_t pos, std::string_view pattern) {
    if (pos == 0)
        throw std::invalid_argument("digit positions are 1-based");
    ensure(pos + pattern.size() - 1);
    std::shared_lock lock(mutex_);
    return std::string_view(cache_).substr(pos - 1, pattern.size()) == pattern;
}

OracleSelfTest DigitOracle::self_test(std::size_t n) {
    OracleSelfTest r;
    r.digits = n;
    std::string main = digits(n);
    r.spigot_agrees = pi_digits_spigot(n) == main;
    r.machin_agrees = pi_digits_machin(n) == main;
    return r;
}

// --- properties -------------------------------------------------------------------

DecidableProperty pattern_property(std::string pattern, DigitOracle &oracle) {
    if (pattern.empty() || pattern.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("digit pattern must be a non-empty string of decimal digits");
    DecidableProperty p;
    p.name = "pattern:" + pattern;
    const std::size_t len = pattern.size();
    p.holds = [&oracle, pattern](std::uint64_t n) { return oracle.matches_at(n, pattern); };
    p.prepare = [&oracle, len](std::uint64_t n) { oracle.ensure(n + len - 1); };
    return p;
}

DecidableProperty run_property(int digit, std::size_t run_length, DigitOracle &oracle) {
    if (digit < 0 || digit > 9)
        throw std::invalid_argument("run digit must be 0..9");
    if (run_length == 0)
        throw std::invalid_argument("run length must be >= 1");
    auto p = pattern_property(std::string(run_length, char('0' + digit)), oracle);
    p.name = "run:" + std::to_string(digit) + "x" + std::to_string(run_length);
    return p;
}

DecidableProperty threshold_property(std::uint64_t k) {
    return {"n>=" + std::to_string(k), [k](std::uint64_t n) { return n >= k; }, {}};
}

DecidableProperty singleton_property(std::uint64_t k) {
    return {"n==" + std::to_string(k), [k](std::uint64_t n) { return n == k; }, {}};
}

DecidableProperty empty_property() {
    return {"never", [](std::uint64_t) { return false; }, {}};
}

std::string CriticalSearch::str() const {
    if (found)
        return std::to_string(*found);
    return "none-below:" + std::to_string(horizon);
}

CriticalSearch critical_number(const DecidableProperty &p, std::uint64_t horizon) {
    CriticalSearch r;
    r.property = p.name;
    r.horizon = horizon;
    if (p.prepare && horizon > 0)
        p.prepare(horizon);
    for (std::uint64_t n = 1; n <= horizon; ++n) {
        if (p.holds(n)) {
            r.found = n;
            break;
        }
    }
    return r;
}

// --- switching points ---------------------------------------------------------------

namespace {

std::optional<std::uint64_t> least_witness_upto(const DecidableProperty &p, std::uint64_t n) {
    for (std::uint64_t k = 1; k <= n; ++k)
        if (p.holds(k))
            return k;
    return std::nullopt;
}

} // namespace

Generator berlin_r(DecidableProperty p) {
    std::string name = "berlin-r[" + p.name + "]";
    return targeted_lawlike(std::move(name), [p = std::move(p)](std::uint64_t n) -> Surd {
        auto k = least_witness_upto(p, n);
        if (!k)
            return Dyadic(0);
        Dyadic v = Dyadic::unit(*k);
        return (*k % 2 == 1) ? -v : v;
    });
}

Generator veldman_F2(Family xi, DecidableProperty p) {
    std::string name = "veldman-F2[" + p.name + "]";
    return targeted_lawlike(std::move(name), [xi = std::move(xi), p = std::move(p)](std::uint64_t n) {
        auto k = least_witness_upto(p, n);
        return xi(k ? *k : 0);
    });
}

Generator cambridge_c(Family a, DecidableProperty p) {
    std::string name = "cambridge-c[" + p.name + "]";
    return targeted_lawlike(std::move(name), [a = std::move(a), p = std::move(p)](std::uint64_t n) {
        auto k = least_witness_upto(p, n);
        return a(k ? *k : n);
    });
}

} // namespace brouwer
