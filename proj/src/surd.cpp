// SPDX-License-Identifier: Apache-2.0

#include "brouwer/surd.hpp"

#include <algorithm>

namespace brouwer {

namespace {

Integer shl(const Integer &a, std::uint64_t k) {
    Integer r = a;
    mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), k);
    return r;
}

// sign(a + b*sqrt2)
int sign_surd(const Integer &a, const Integer &b) {
    int sa = sgn(a), sb = sgn(b);
    if (sb == 0)
        return sa;
    if (sa == 0)
        return sb;
    if (sa == sb)
        return sa;
    // opposite signs: compare a^2 with 2 b^2
    Integer a2 = a * a;
    Integer b2 = 2 * b * b;
    int c = cmp(a2, b2);
    // c != 0 because 2 is not a rational square
    return (c > 0) ? sa : sb;
}

// floor(b * sqrt2)
Integer floor_sqrt2_times(const Integer &b) {
    Integer r;
    Integer sq = 2 * b * b;
    mpz_sqrt(r.get_mpz_t(), sq.get_mpz_t());
    if (b >= 0)
        return r;
    // sqrt(2 b^2) irrational for b != 0, so floor(-x) = -floor(x) - 1
    return -r - 1;
}

} // namespace

Surd::Surd(const Dyadic &d) : p_(d.numerator()), q_(0), e_(d.exponent()) {}

Surd::Surd(Integer p, Integer q, std::uint64_t e) : p_(std::move(p)), q_(std::move(q)), e_(e) {
    canonicalize();
}

void Surd::canonicalize() {
    while (e_ > 0 && mpz_even_p(p_.get_mpz_t()) && mpz_even_p(q_.get_mpz_t())) {
        p_ /= 2;
        q_ /= 2;
        --e_;
    }
}

int Surd::compare(const Dyadic &d) const {
    auto e = std::max(e_, d.exponent());
    Integer a = shl(p_, e - e_) - shl(d.numerator(), e - d.exponent());
    Integer b = shl(q_, e - e_);
    return sign_surd(a, b);
}

int Surd::compare(const Surd &o) const {
    auto e = std::max(e_, o.e_);
    Integer a = shl(p_, e - e_) - shl(o.p_, e - o.e_);
    Integer b = shl(q_, e - e_) - shl(o.q_, e - o.e_);
    return sign_surd(a, b);
}

Integer Surd::floor_scaled(std::uint64_t n) const {
    if (n >= e_) {
        auto k = n - e_;
        return shl(p_, k) + floor_sqrt2_times(shl(q_, k));
    }
    Integer whole = p_ + floor_sqrt2_times(q_);
    return floor_shift(whole, e_ - n);
}

Surd operator+(const Surd &a, const Surd &b) {
    auto e = std::max(a.e_, b.e_);
    return Surd(shl(a.p_, e - a.e_) + shl(b.p_, e - b.e_), shl(a.q_, e - a.e_) + shl(b.q_, e - b.e_), e);
}

Surd operator-(const Surd &a) { return Surd(-a.p_, -a.q_, a.e_); }

Surd operator-(const Surd &a, const Surd &b) { return a + (-b); }

Surd operator*(const Surd &a, const Dyadic &k) {
    return Surd(a.p_ * k.numerator(), a.q_ * k.numerator(), a.e_ + k.exponent());
}

std::string Surd::str() const {
    if (q_ == 0)
        return as_dyadic().str();
    return "(" + p_.get_str() + "+" + q_.get_str() + "*sqrt2)/2^" + std::to_string(e_);
}

} // namespace brouwer
