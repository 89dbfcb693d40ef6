#include <random>

#include "doctest.h"
#include "ltk/laurent.hpp"

using namespace ltk;

namespace {

WittElem random_coeff(const WittRing& r, std::mt19937_64& rng) {
    std::uniform_int_distribution<i64> dist(0, r.pn() - 1);
    std::vector<i64> rep(r.d());
    for (auto& c : rep) c = dist(rng);
    return r.from_rep(rep);
}

// Random exact series: p-divisible terms in [neg, 0), arbitrary terms in [0, top).
LaurentSeries random_series(const SeriesRing& R, std::mt19937_64& rng, int neg, int top) {
    std::map<int, WittElem> t;
    const WittElem p = R.coeff().from_int(R.p());
    for (int k = neg; k < 0; ++k) t.emplace(k, random_coeff(R.coeff(), rng) * p);
    for (int k = 0; k < top; ++k) t.emplace(k, random_coeff(R.coeff(), rng));
    return R.from_terms(t);
}

// Legendre: v_p(n!)
i64 legendre(i64 n, int p) {
    i64 v = 0;
    for (i64 pk = p; pk <= n; pk *= p) v += n / pk;
    return v;
}

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("valuation and unit classification examples") {
    SeriesRing R(WittRing(FiniteField::prime(3), 2), -10, 20);
    const auto p = R.from_int(3);
    const auto x = R.monomial(1);
    CHECK(v_x(p * R.monomial(-3) + x) == -3);
    CHECK(is_unit(R.monomial(-1) + p));
    CHECK_FALSE(is_unit(p * x));
    CHECK(is_topologically_nilpotent(x));
    CHECK_FALSE(is_topologically_nilpotent(R.one() + x));
    CHECK(is_topologically_nilpotent(x + p * R.monomial(-5)));
    CHECK(v_x(R.zero()) == kInfinity);
    // A p-divisible series known only to finite precision is undecided.
    CHECK(kind_of([&] { (void)is_unit((p * x).with_x_prec(5)); }) == ErrorKind::PrecisionInsufficient);
}

TEST_CASE("kummer valuation matches Legendre's formula") {
    CHECK(kummer_valuation(2, 3, 2) == 4);
    CHECK(kummer_valuation(3, 2, 1) == 3);
    for (int p : {2, 3, 5})
        for (int r = 0; r <= 4; ++r) {
            const i64 pr = ipow(p, r);
            if (pr > 700) continue;
            for (i64 i = 1; i <= pr; ++i) {
                const i64 vbin = legendre(pr, p) - legendre(i, p) - legendre(pr - i, p);
                REQUIRE(kummer_valuation(p, r, i) == i + vbin);
            }
        }
    CHECK(kind_of([] { (void)kummer_valuation(2, 3, 9); }) == ErrorKind::OutOfRange);
    CHECK(kind_of([] { (void)kummer_valuation(2, 3, 0); }) == ErrorKind::OutOfRange);
}

TEST_CASE("ring axioms on random series") {
    std::mt19937_64 rng(17);
    for (auto [p, d, n] : {std::tuple{2, 1, 3}, {3, 2, 2}, {5, 1, 2}}) {
        SeriesRing R(WittRing(FiniteField::standard(p, d), n), -12, 16);
        for (int i = 0; i < 40; ++i) {
            auto a = random_series(R, rng, -3, 16);
            auto b = random_series(R, rng, -3, 16);
            auto c = random_series(R, rng, -3, 16);
            REQUIRE(a + b == b + a);
            REQUIRE(a * b == b * a);
            REQUIRE((a * b) * c == a * (b * c));
            REQUIRE(a * (b + c) == a * b + a * c);
            REQUIRE((a - a).is_zero());
            REQUIRE(a * R.one() == a);
        }
    }
}

TEST_CASE("products respect the precision rule") {
    SeriesRing R(WittRing(FiniteField::prime(3), 2), -6, 20);
    auto f = R.monomial(2).with_x_prec(10);
    auto g = R.monomial(3).with_x_prec(8);
    CHECK((f * g).x_prec() == 10);  // min(10 + 3, 8 + 2, 18)
    auto z = R.zero().with_x_prec(5);
    CHECK((z * g).x_prec() == 8);  // zero times O(x^5) is O(x^{5 + 3})
}

TEST_CASE("window overflow on the low side") {
    SeriesRing R(WittRing(FiniteField::prime(3), 3), -4, 10);
    auto f = R.from_int(3) * R.monomial(-3);
    CHECK(kind_of([&] { (void)(f * f); }) == ErrorKind::WindowOverflow);
}

TEST_CASE("inverse") {
    std::mt19937_64 rng(23);
    for (auto [p, d, n] : {std::tuple{2, 1, 3}, {3, 2, 2}, {5, 1, 3}, {2, 2, 2}}) {
        SeriesRing R(WittRing(FiniteField::standard(p, d), n), -30, 20);
        int checked = 0;
        for (int i = 0; i < 60; ++i) {
            auto f = random_series(R, rng, -2, 12);
            if (!is_unit(f)) continue;
            INFO(f.to_string());
            auto g = ls_invert(f);
            auto prod = f * g;
            // large unit degrees legitimately exhaust the window
            if (prod.x_prec() <= 0) continue;
            REQUIRE(prod == R.one());
            ++checked;
        }
        CHECK(checked > 20);
    }
    SeriesRing R(WittRing(FiniteField::prime(3), 3), -20, 20);
    auto xinv = ls_invert(R.monomial(1));
    CHECK(xinv == R.monomial(-1));
    CHECK(kind_of([&] { (void)ls_invert(R.from_int(3)); }) == ErrorKind::NotUnit);
}

TEST_CASE("powers agree with repeated products") {
    std::mt19937_64 rng(29);
    SeriesRing R(WittRing(FiniteField::standard(3, 2), 2), -20, 20);
    for (int i = 0; i < 20; ++i) {
        auto f = random_series(R, rng, -2, 10);
        LaurentSeries acc = R.one();
        for (int m = 0; m <= 4; ++m) {
            auto pw = ls_pow(f, m);
            REQUIRE(pw == acc);
            REQUIRE(pw.x_prec() >= std::min(acc.x_prec(), R.hi()));
            acc = acc * f;
        }
    }
}

TEST_CASE("classifier agrees with the nilpotence oracle") {
    std::mt19937_64 rng(31);
    for (auto [p, n] : {std::pair{2, 2}, {3, 2}, {5, 2}, {2, 3}}) {
        SeriesRing R(WittRing(FiniteField::prime(p), n), -60, 24);
        // p^r_max >= hi so a degree >= 1 unit part is pushed out of the window.
        int r_max = 0;
        while (ipow(p, r_max) < 4 * R.hi()) ++r_max;
        int agree = 0;
        for (int i = 0; i < 60; ++i) {
            std::uniform_int_distribution<int> lead(0, 2);
            const int deg = lead(rng);
            std::map<int, WittElem> t;
            const WittElem pe = R.coeff().from_int(p);
            for (int k = -6; k < 0; ++k) t.emplace(k, random_coeff(R.coeff(), rng) * pe);
            for (int k = 0; k < deg; ++k) t.emplace(k, random_coeff(R.coeff(), rng) * pe);
            t.insert_or_assign(deg, R.coeff().one());
            for (int k = deg + 1; k < 8; ++k) t.emplace(k, random_coeff(R.coeff(), rng));
            auto f = R.from_terms(t);
            REQUIRE(is_topologically_nilpotent(f) == nilpotence_oracle(f, r_max));
            ++agree;
        }
        CHECK(agree == 60);
    }
}

TEST_CASE("hensel roots") {
    SeriesRing R(WittRing(FiniteField::prime(3), 1), 0, 12);
    auto g = hensel_root(R.one() + R.monomial(1), 2);
    CHECK(g.coeff(0).is_one());
    CHECK(g.coeff(1) == R.coeff().from_int(2));
    CHECK(g * g == R.one() + R.monomial(1));
    CHECK(kind_of([&] { (void)hensel_root(R.monomial(1), 2); }) == ErrorKind::NoRoot);
    CHECK(kind_of([&] { (void)hensel_root(R.one(), 3); }) == ErrorKind::NoRoot);

    std::mt19937_64 rng(37);
    SeriesRing S(WittRing(FiniteField::standard(5, 2), 3), -4, 14);
    for (int i = 0; i < 20; ++i) {
        auto f = random_series(S, rng, 0, 14);
        f = f - S.constant(f.coeff(0)) + S.one();
        for (int e : {2, 3, 4, 24}) {
            auto r = hensel_root(f, e);
            REQUIRE(ls_pow(r, e) == f);
        }
    }
}

TEST_CASE("membership in 1 + x k[[x]] via iterated roots") {
    // Oracle: extract (q-1)-th roots m times, each with leading coefficient 1.
    std::mt19937_64 rng(41);
    for (auto [p, d] : {std::pair{3, 1}, {5, 1}, {2, 2}, {3, 2}}) {
        SeriesRing R(WittRing(FiniteField::standard(p, d), 1), -4, 16);
        const int e = static_cast<int>(R.coeff().q() - 1);
        for (int i = 0; i < 30; ++i) {
            auto f = random_series(R, rng, 0, 16);
            if (i % 2 == 0) f = f - R.constant(f.coeff(0)) + R.one();
            bool oracle = true;
            try {
                auto g = f;
                for (int m = 0; m < 3; ++m) g = hensel_root(g, e);
            } catch (const Error&) {
                oracle = false;
            }
            REQUIRE(s_membership(f, 3) == oracle);
        }
        CHECK_FALSE(s_membership(R.monomial(1), 2));
        CHECK_FALSE(s_membership(R.monomial(-1) + R.one(), 2));
        CHECK(s_membership(R.one() + R.monomial(3), 2));
    }
}

TEST_CASE("substitution") {
    SeriesRing R(WittRing(FiniteField::prime(3), 2), -20, 30);
    const auto x = R.monomial(1);
    // x -> x^2 on 1 + x + x^-1 with exact input
    auto f = R.one() + x + R.monomial(-1);
    auto y = x * x;
    auto s = substitute(f.with_x_prec(10), y, 0);
    CHECK(s == R.one() + y + R.monomial(-2));
    CHECK(s.x_prec() == 20);
    // Frobenius lift y = x^3 + 3: substitution is a ring map.
    std::mt19937_64 rng(43);
    auto y2 = ls_pow(x, 3) + R.from_int(3);
    for (int i = 0; i < 20; ++i) {
        auto a = random_series(R, rng, 0, 8).with_x_prec(8);
        auto b = random_series(R, rng, 0, 8).with_x_prec(8);
        REQUIRE(substitute(a * b, y2, 0) == substitute(a, y2, 0) * substitute(b, y2, 0));
        REQUIRE(substitute(a + b, y2, 0) == substitute(a, y2, 0) + substitute(b, y2, 0));
    }
    CHECK(kind_of([&] { (void)substitute(f, R.one(), 0); }) == ErrorKind::NotTopologicallyNilpotent);
}

TEST_CASE("text form") {
    SeriesRing R(WittRing(FiniteField::prime(5), 2), -3, 6);
    auto f = R.from_terms({{-1, R.coeff().from_int(3)}, {0, R.coeff().one()}, {2, R.coeff().from_int(5)}});
    CHECK(f.to_string() == "3*x^-1 + 1 + 5*x^2");
    CHECK(f.with_x_prec(4).to_string() == "3*x^-1 + 1 + 5*x^2 + O(x^4)");
}
