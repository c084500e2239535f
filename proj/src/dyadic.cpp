// SPDX-License-Identifier: Apache-2.0

#include "brouwer/dyadic.hpp"

#include <algorithm>
#include <cctype>

namespace brouwer {

Integer pow2(std::uint64_t k) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, k);
    return r;
}

Integer floor_shift(const Integer &a, std::uint64_t k) {
    Integer r;
    mpz_fdiv_q_2exp(r.get_mpz_t(), a.get_mpz_t(), k);
    return r;
}

Integer ceil_shift(const Integer &a, std::uint64_t k) {
    Integer r;
    mpz_cdiv_q_2exp(r.get_mpz_t(), a.get_mpz_t(), k);
    return r;
}

Dyadic::Dyadic(Integer num, std::uint64_t exponent) : num_(std::move(num)), exp_(exponent) {
    canonicalize();
}

void Dyadic::canonicalize() {
    if (num_ == 0) {
        exp_ = 0;
        return;
    }
    auto tz = mpz_scan1(num_.get_mpz_t(), 0);
    auto shift = std::min<std::uint64_t>(tz, exp_);
    if (shift > 0) {
        mpz_fdiv_q_2exp(num_.get_mpz_t(), num_.get_mpz_t(), shift);
        exp_ -= shift;
    }
}

namespace {

Integer scaled(const Dyadic &d, std::uint64_t to_exp) {
    Integer r = d.numerator();
    mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), to_exp - d.exponent());
    return r;
}

Integer parse_integer(std::string_view s, std::string_view what) {
    if (s.empty())
        throw std::invalid_argument("empty " + std::string(what));
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size())
        throw std::invalid_argument("malformed " + std::string(what) + ": " + std::string(s));
    for (std::size_t j = i; j < s.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(s[j])))
            throw std::invalid_argument("malformed " + std::string(what) + ": " + std::string(s));
    std::string body(s[0] == '+' ? s.substr(1) : s);
    return Integer(body, 10);
}

} // namespace

Dyadic operator+(const Dyadic &a, const Dyadic &b) {
    auto e = std::max(a.exp_, b.exp_);
    return Dyadic(scaled(a, e) + scaled(b, e), e);
}

Dyadic operator-(const Dyadic &a, const Dyadic &b) {
    auto e = std::max(a.exp_, b.exp_);
    return Dyadic(scaled(a, e) - scaled(b, e), e);
}

Dyadic operator*(const Dyadic &a, const Dyadic &b) {
    return Dyadic(a.num_ * b.num_, a.exp_ + b.exp_);
}

Dyadic operator-(const Dyadic &a) { return Dyadic(-a.num_, a.exp_); }

std::strong_ordering operator<=>(const Dyadic &a, const Dyadic &b) {
    auto e = std::max(a.exp_, b.exp_);
    int c = cmp(scaled(a, e), scaled(b, e));
    if (c < 0)
        return std::strong_ordering::less;
    if (c > 0)
        return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

int Dyadic::compare_rational(const Integer &p, const Integer &q) const {
    if (q <= 0)
        throw std::invalid_argument("rational comparand needs a positive denominator");
    // num/2^e vs p/q  <=>  num*q vs p*2^e
    Integer lhs = num_ * q;
    Integer rhs = p;
    mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), exp_);
    int c = cmp(lhs, rhs);
    return (c > 0) - (c < 0);
}

Integer Dyadic::floor_scaled(std::uint64_t n) const {
    if (n >= exp_) {
        Integer r = num_;
        mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), n - exp_);
        return r;
    }
    return floor_shift(num_, exp_ - n);
}

std::string Dyadic::str() const { return num_.get_str() + "/2^" + std::to_string(exp_); }

Dyadic Dyadic::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Dyadic(parse_integer(text, "dyadic"), 0);
    auto den = text.substr(slash + 1);
    if (den.substr(0, 2) != "2^")
        throw std::invalid_argument("dyadic denominator must be 2^k: " + std::string(text));
    auto k = parse_integer(den.substr(2), "dyadic exponent");
    if (k < 0 || !k.fits_ulong_p())
        throw std::invalid_argument("dyadic exponent out of range: " + std::string(text));
    return Dyadic(parse_integer(text.substr(0, slash), "dyadic numerator"), k.get_ui());
}

Interval::Interval(Dyadic l, Dyadic h) : lo(std::move(l)), hi(std::move(h)) {
    if (hi < lo)
        throw std::invalid_argument("interval with lo > hi: " + lo.str() + " > " + hi.str());
}

std::string Interval::str() const { return "[" + lo.str() + "," + hi.str() + "]"; }

Interval Interval::parse(std::string_view text) {
    if (text.size() < 5 || text.front() != '[' || text.back() != ']')
        throw std::invalid_argument("interval must look like [lo,hi]: " + std::string(text));
    auto body = text.substr(1, text.size() - 2);
    auto comma = body.find(',');
    if (comma == std::string_view::npos)
        throw std::invalid_argument("interval must look like [lo,hi]: " + std::string(text));
    return Interval(Dyadic::parse(body.substr(0, comma)), Dyadic::parse(body.substr(comma + 1)));
}

std::string_view to_string(Relation r) {
    switch (r) {
    case Relation::Disjoint:
        return "Disjoint";
    case Relation::Overlap:
        return "Overlap";
    case Relation::Contains:
        return "Contains";
    case Relation::ContainedIn:
        return "ContainedIn";
    }
    return "?";
}

Interval lambda_interval(std::uint64_t n, const Integer &a) {
    if (n == 0)
        throw std::invalid_argument("lambda-interval index must be >= 1 (generation indices are 1-based)");
    return Interval(Dyadic(a, n), Dyadic(a + 2, n));
}

bool admissible_successor(const Integer &a, const Integer &z) {
    Integer d = z - 2 * a;
    return d >= 0 && d <= 2;
}

Relation interval_relate(const Interval &p, const Interval &q) {
    if (p.hi < q.lo || q.hi < p.lo)
        return Relation::Disjoint;
    if (p.contains(q))
        return Relation::Contains;
    if (q.contains(p))
        return Relation::ContainedIn;
    return Relation::Overlap;
}

} // namespace brouwer
