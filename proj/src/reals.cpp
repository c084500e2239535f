// SPDX-License-Identifier: Apache-2.0

#include "brouwer/reals.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace brouwer {

std::string_view to_string(VerdictValue v) {
    switch (v) {
    case VerdictValue::Holds:
        return "Holds";
    case VerdictValue::Fails:
        return "Fails";
    case VerdictValue::UnknownAtHorizon:
        return "UnknownAtHorizon";
    }
    return "?";
}

std::string_view to_string(Direction d) {
    switch (d) {
    case Direction::None:
        return "none";
    case Direction::FirstLess:
        return "first<second";
    case Direction::SecondLess:
        return "second<first";
    }
    return "?";
}

namespace {

void require_horizon(std::uint64_t h) {
    if (h == 0)
        throw std::invalid_argument("horizon must be >= 1");
}

Verdict holds_at(std::uint64_t h, std::uint64_t n, Direction d = Direction::None) {
    return {VerdictValue::Holds, h, n, d};
}

} // namespace

std::optional<std::uint64_t> lt_witness(PrefixView a, PrefixView b) {
    auto n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] + 2 < b[i])
            return i + 1;
    return std::nullopt;
}

std::optional<std::uint64_t> disjoint_witness(PrefixView a, PrefixView b) {
    auto n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
        if (interval_relate(lambda_interval(i + 1, a[i]), lambda_interval(i + 1, b[i])) == Relation::Disjoint)
            return i + 1;
    return std::nullopt;
}

std::optional<std::uint64_t> close_witness(PrefixView a, PrefixView b, const Dyadic &r) {
    auto n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        Integer d = a[i] - b[i];
        if (d < 0)
            d = -d;
        if (Dyadic(d + 2, i + 1) < r)
            return i + 1;
    }
    return std::nullopt;
}

Verdict lt_at(const Point &a, const Point &b, std::uint64_t horizon) {
    require_horizon(horizon);
    auto w = lt_witness(a.prefix(horizon), b.prefix(horizon));
    return w ? holds_at(horizon, *w) : Verdict::unknown_at(horizon);
}

Verdict lt_rational(const Point &a, const Integer &p, const Integer &q, std::uint64_t horizon) {
    require_horizon(horizon);
    auto pre = a.prefix(horizon);
    for (std::size_t i = 0; i < pre.size(); ++i)
        if (Dyadic(pre[i] + 2, i + 1).compare_rational(p, q) < 0)
            return holds_at(horizon, i + 1);
    return Verdict::unknown_at(horizon);
}

Verdict gt_rational(const Point &a, const Integer &p, const Integer &q, std::uint64_t horizon) {
    require_horizon(horizon);
    auto pre = a.prefix(horizon);
    for (std::size_t i = 0; i < pre.size(); ++i)
        if (Dyadic(pre[i], i + 1).compare_rational(p, q) > 0)
            return holds_at(horizon, i + 1);
    return Verdict::unknown_at(horizon);
}

Verdict apart_at(const Point &a, const Point &b, std::uint64_t horizon) {
    require_horizon(horizon);
    auto pa = a.prefix(horizon);
    auto pb = b.prefix(horizon);
    auto ab = lt_witness(pa, pb);
    auto ba = lt_witness(pb, pa);
    if (ab && (!ba || *ab <= *ba))
        return holds_at(horizon, *ab, Direction::FirstLess);
    if (ba)
        return holds_at(horizon, *ba, Direction::SecondLess);
    return Verdict::unknown_at(horizon);
}

Verdict coincide_refute(const Point &a, const Point &b, std::uint64_t horizon) {
    require_horizon(horizon);
    // Intervals nest, so a disjoint pair (n, m) implies a disjoint pair
    // (max, max); the diagonal is enough.
    auto w = disjoint_witness(a.prefix(horizon), b.prefix(horizon));
    if (w)
        return {VerdictValue::Fails, horizon, *w, Direction::None};
    return Verdict::unknown_at(horizon);
}

Prefix center(PrefixView prefix, std::uint64_t n) {
    if (n == 0 || prefix.size() < n)
        throw std::invalid_argument("center: prefix shorter than the centering index");
    Prefix out(prefix.begin(), prefix.end());
    for (std::uint64_t k = n - 1; k >= 1; --k) {
        Integer t = out[k] - 1; // a'_{k+1} - 1, with out[k] holding index k+1
        mpz_fdiv_q_2exp(t.get_mpz_t(), t.get_mpz_t(), 1);
        out[k - 1] = t;
    }
    return out;
}

PrefixMap identity_map() {
    return {"identity", [](PrefixView p) { return Prefix(p.begin(), p.end()); },
            [](std::uint64_t m) { return m; }};
}

PrefixMap negation_map() {
    return {"negation",
            [](PrefixView p) {
                Prefix out;
                out.reserve(p.size());
                for (const auto &a : p)
                    out.push_back(-a - 2);
                return out;
            },
            [](std::uint64_t m) { return m; }};
}

PrefixMap delay_map() {
    return {"delay",
            [](PrefixView p) {
                Prefix out;
                for (std::size_t k = 1; 2 * k <= p.size(); ++k)
                    out.push_back(floor_shift(p[2 * k - 1], k));
                return out;
            },
            [](std::uint64_t m) { return 2 * m; }};
}

Modulus cpf_modulus(const PrefixMap &f, PrefixView a, std::uint64_t m) {
    if (m == 0)
        throw std::invalid_argument("output precision must be >= 1");
    Modulus r;
    r.horizon = a.size();
    if (f.input_length_for(m) > a.size())
        return r;
    for (std::size_t n = 1; n <= a.size(); ++n) {
        if (f.apply(a.first(n)).size() >= m) {
            r.found = true;
            r.n = n;
            return r;
        }
    }
    return r;
}

Modulus cpf_modulus(const PrefixMap &f, const Point &a, std::uint64_t m, std::uint64_t horizon) {
    require_horizon(horizon);
    return cpf_modulus(f, a.prefix(horizon), m);
}

ContinuityModulus continuity_modulus(const PrefixMap &f, const Point &a, std::uint64_t m0, std::uint64_t horizon) {
    require_horizon(horizon);
    ContinuityModulus r;
    Prefix rep = a.prefix(horizon);
    auto mod = cpf_modulus(f, rep, m0 + 2);
    // Centering can only change terms below n0 + 2, so re-derive n0 on the
    // centered representative until it is stable.
    for (std::uint64_t round = 0; round <= horizon && mod.found; ++round) {
        if (mod.n + 2 > horizon)
            return r;
        Prefix centered = center(rep, mod.n + 2);
        auto again = cpf_modulus(f, centered, m0 + 2);
        if (again.found && again.n == mod.n) {
            r.found = true;
            r.n0 = mod.n;
            r.q = Dyadic::unit(mod.n + 2);
            r.centered = std::move(centered);
            return r;
        }
        mod = again;
    }
    return r;
}

ContinuitySampling continuity_sampling(const PrefixMap &f, const Point &a, std::uint64_t m0, std::size_t samples,
                                       std::uint64_t seed, std::uint64_t horizon) {
    ContinuitySampling out;
    out.modulus = continuity_modulus(f, a, m0, horizon);
    if (!out.modulus.found)
        return out;
    const std::uint64_t n = out.modulus.n0 + 2;
    const std::uint64_t depth = n + 20;
    Prefix x = a.prefix(std::max<std::uint64_t>(depth, horizon));
    x.resize(depth);
    x = center(x, n);
    Prefix fx = f.apply(x);

    // y within q of x: lambda^depth(t) inside [(x_n - 1)/2^n, (x_n + 3)/2^n].
    const Integer lo = (x[n - 1] - 1) * pow2(depth - n);
    const std::uint64_t span = (std::uint64_t{4} << (depth - n)) - 2;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> pick(0, span);
    const Dyadic bound = Dyadic::unit(m0);
    for (std::size_t i = 0; i < samples; ++i) {
        ++out.samples;
        Integer t = lo + Integer(std::to_string(pick(rng)));
        Prefix y(depth, t);
        y = center(y, depth);
        Prefix fy = f.apply(y);
        std::size_t k = std::min(fx.size(), fy.size());
        if (k < m0 + 2)
            continue;
        Interval ix = lambda_interval(k, fx[k - 1]);
        Interval iy = lambda_interval(k, fy[k - 1]);
        Dyadic width = std::max(ix.hi, iy.hi) - std::min(ix.lo, iy.lo);
        double ratio = mpz_get_d(width.numerator().get_mpz_t()) /
                       std::ldexp(1.0, static_cast<int>(width.exponent()) - static_cast<int>(m0));
        out.worst_ratio = std::max(out.worst_ratio, ratio);
        if (width < bound)
            ++out.passed;
    }
    return out;
}

// --- virtual order ----------------------------------------------------------

OrderTable::OrderTable(std::vector<std::string> n)
    : names(std::move(n)), rel(names.size(), std::vector<PairRelation>(names.size(), PairRelation::Undecided)) {
    for (std::size_t i = 0; i < names.size(); ++i)
        rel[i][i] = PairRelation::Coincident;
}

std::size_t OrderTable::index_of(const std::string &name) const {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end())
        throw std::invalid_argument("unknown sample element: " + name);
    return static_cast<std::size_t>(it - names.begin());
}

void OrderTable::set_less(const std::string &a, const std::string &b) {
    auto i = index_of(a), j = index_of(b);
    rel[i][j] = PairRelation::Less;
    rel[j][i] = PairRelation::Greater;
}

void OrderTable::set_coincident(const std::string &a, const std::string &b) {
    auto i = index_of(a), j = index_of(b);
    rel[i][j] = rel[j][i] = PairRelation::Coincident;
}

UndecidedPair::UndecidedPair(const std::string &a, const std::string &b, std::uint64_t horizon)
    : std::runtime_error("UndecidedPair: " + a + " vs " + b + " is UnknownAtHorizon at " + std::to_string(horizon)) {}

OrderTable order_table(const std::vector<Point> &sample, const std::vector<std::pair<std::size_t, std::size_t>> &coincident,
                       std::uint64_t horizon) {
    std::vector<std::string> names;
    for (const auto &p : sample)
        names.push_back(p.name());
    OrderTable t(names);
    auto declared = [&](std::size_t i, std::size_t j) {
        return std::any_of(coincident.begin(), coincident.end(), [&](const auto &pr) {
            return (pr.first == i && pr.second == j) || (pr.first == j && pr.second == i);
        });
    };
    for (std::size_t i = 0; i < sample.size(); ++i) {
        for (std::size_t j = i + 1; j < sample.size(); ++j) {
            if (declared(i, j)) {
                if (coincide_refute(sample[i], sample[j], horizon).fails())
                    throw std::invalid_argument("declared-coincident pair is refuted: " + names[i] + ", " + names[j]);
                t.rel[i][j] = t.rel[j][i] = PairRelation::Coincident;
                continue;
            }
            auto v = apart_at(sample[i], sample[j], horizon);
            if (!v.holds())
                throw UndecidedPair(names[i], names[j], horizon);
            if (v.direction == Direction::FirstLess) {
                t.rel[i][j] = PairRelation::Less;
                t.rel[j][i] = PairRelation::Greater;
            } else {
                t.rel[i][j] = PairRelation::Greater;
                t.rel[j][i] = PairRelation::Less;
            }
        }
    }
    return t;
}

VirtualOrderReport virtual_order_check(const OrderTable &table) {
    const auto n = table.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (table.rel[i][j] == PairRelation::Undecided)
                throw UndecidedPair(table.names[i], table.names[j], 0);

    auto eq = [&](std::size_t x, std::size_t y) { return table.rel[x][y] == PairRelation::Coincident; };
    auto lt = [&](std::size_t x, std::size_t y) { return table.rel[x][y] == PairRelation::Less; };
    auto prec = [&](std::size_t x, std::size_t y) { return !eq(x, y) && !lt(y, x); };
    auto succ = [&](std::size_t x, std::size_t y) { return prec(y, x); };

    VirtualOrderReport report;
    report.passed.fill(true);
    auto fail = [&](int c, std::vector<std::size_t> els, std::string detail) {
        report.passed[c - 1] = false;
        report.violations.push_back({c, std::move(els), std::move(detail)});
    };

    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t s = 0; s < n; ++s) {
            int count = int(eq(r, s)) + int(prec(r, s)) + int(succ(r, s));
            if (count > 1)
                fail(1, {r, s}, "=, prec and succ do not exclude each other");
            if (!succ(r, s) && !eq(r, s) && !prec(r, s))
                fail(3, {r, s}, "neither succ nor = yet not prec");
            if (!succ(r, s) && !prec(r, s) && !eq(r, s))
                fail(4, {r, s}, "neither succ nor prec yet not =");
            for (std::size_t u = 0; u < n; ++u) {
                for (std::size_t v = 0; v < n; ++v)
                    if (eq(r, u) && eq(s, v) && prec(r, s) && !prec(u, v))
                        fail(2, {r, s, u, v}, "prec not preserved under =");
                if (prec(r, s) && prec(s, u) && !prec(r, u))
                    fail(5, {r, s, u}, "prec not transitive");
            }
        }
    }
    return report;
}

} // namespace brouwer
