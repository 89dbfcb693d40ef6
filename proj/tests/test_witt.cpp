#include <random>

#include "doctest.h"
#include "ltk/witt.hpp"

using namespace ltk;

namespace {

// Brute force: the unique y in [0, p^n) with y = a mod p and y^(p-1) = 1 (or y = 0).
i64 brute_teichmuller(int p, int n, i64 a) {
    const i64 pn = ipow(p, n);
    for (i64 y = 0; y < pn; ++y) {
        if (y % p != a) continue;
        i64 acc = 1;
        for (int i = 0; i < p; ++i) acc = acc * y % pn;
        if (acc == y) return y;
    }
    return -1;
}

WittElem random_elem(const WittRing& r, std::mt19937_64& rng) {
    std::uniform_int_distribution<i64> dist(0, r.pn() - 1);
    std::vector<i64> rep(r.d());
    for (auto& c : rep) c = dist(rng);
    return r.from_rep(rep);
}

}  // namespace

TEST_CASE("finite field construction rejects reducible moduli") {
    CHECK_THROWS_AS(FiniteField(3, {-1, 0, 1}), Error);  // T^2 - 1
    CHECK_NOTHROW(FiniteField(3, {1, 0, 1}));                // T^2 + 1
    CHECK(FiniteField::standard(3, 2).degree() == 2);
    CHECK(FiniteField::standard(2, 4).degree() == 4);
    CHECK_THROWS_AS(FiniteField(4, {0, 1}), Error);
}

TEST_CASE("witt_add and witt_mul examples") {
    WittRing w25(FiniteField::prime(5), 2);
    CHECK((w25.from_int(7) + w25.from_int(18)).is_zero());
    CHECK(w25.from_int(7) * w25.from_int(7) == w25.from_int(24));

    WittRing w8(FiniteField::prime(2), 3);
    CHECK((w8.from_int(3) + w8.from_int(5)).is_zero());

    WittRing w9(FiniteField::standard(3, 2), 2);
    WittElem t = w9.gen();
    CHECK((t + t).rep() == std::vector<i64>{0, 2});
    CHECK((t + t).to_string() == "2*T");

    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i) {
        auto a = random_elem(w9, rng);
        CHECK(a * w9.one() == a);
        CHECK((a * w9.zero()).is_zero());
    }
}

TEST_CASE("mismatched rings are rejected") {
    WittRing a(FiniteField::prime(5), 2);
    WittRing b(FiniteField::prime(5), 3);
    try {
        (void)(a.one() + b.one());
        FAIL("expected RingMismatch");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::RingMismatch);
    }
}

TEST_CASE("prime-field Witt arithmetic equals Z/p^n exhaustively") {
    for (auto [p, n] : {std::pair{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {5, 1}, {5, 2}, {5, 3}, {3, 3}}) {
        WittRing r(FiniteField::prime(p), n);
        const i64 pn = r.pn();
        if (pn > 125) continue;
        for (i64 a = 0; a < pn; ++a)
            for (i64 b = 0; b < pn; ++b) {
                REQUIRE((r.from_int(a) + r.from_int(b)).rep()[0] == (a + b) % pn);
                REQUIRE((r.from_int(a) * r.from_int(b)).rep()[0] == (a * b) % pn);
                REQUIRE((r.from_int(a) - r.from_int(b)).rep()[0] == mod_reduce(a - b, pn));
            }
    }
}

TEST_CASE("teichmuller lifts") {
    WittRing w25(FiniteField::prime(5), 2);
    WittRing f5 = w25.residue_field();
    CHECK(teichmuller(w25, f5.from_int(2)) == w25.from_int(7));
    CHECK(brute_teichmuller(5, 2, 2) == 7);
    for (i64 a = 0; a < 5; ++a)
        CHECK(teichmuller(w25, f5.from_int(a)).rep()[0] == brute_teichmuller(5, 2, a));
    CHECK(teichmuller(w25, f5.one()).is_one());
    CHECK(teichmuller(w25, f5.zero()).is_zero());

    SUBCASE("multiplicative for every q <= 25") {
        for (auto [p, d] : {std::pair{2, 1}, {3, 1}, {5, 1}, {2, 2}, {3, 2}, {2, 3}, {2, 4}, {5, 2}}) {
            WittRing r(FiniteField::standard(p, d), 3);
            WittRing k = r.residue_field();
            const i64 q = r.q();
            std::vector<WittElem> elems;
            for (i64 code = 0; code < q; ++code) {
                std::vector<i64> rep(d);
                i64 c = code;
                for (int j = 0; j < d; ++j) {
                    rep[j] = c % p;
                    c /= p;
                }
                elems.push_back(k.from_rep(rep));
            }
            for (const auto& a : elems)
                for (const auto& b : elems)
                    REQUIRE(teichmuller(r, a * b) == teichmuller(r, a) * teichmuller(r, b));
        }
    }
}

TEST_CASE("frobenius and verschiebung") {
    WittRing w9(FiniteField::prime(3), 2);
    CHECK(frobenius(w9.from_int(5)) == w9.from_int(5));
    CHECK(frobenius(w9.zero()).is_zero());

    WittRing r(FiniteField::standard(3, 2), 2);
    WittRing k = r.residue_field();
    std::mt19937_64 rng(11);
    for (int i = 0; i < 20; ++i) {
        auto b = random_elem(k, rng);
        CHECK(frobenius(teichmuller(r, b)) == teichmuller(r, b.pow(3)));
    }

    WittRing w(FiniteField::standard(5, 2), 3);
    CHECK(verschiebung(w.one()) == w.from_int(5));
    CHECK(verschiebung(w.zero()).is_zero());
    const WittElem p = w.from_int(5);
    for (int i = 0; i < 200; ++i) {
        auto a = random_elem(w, rng);
        auto b = random_elem(w, rng);
        REQUIRE(frobenius(verschiebung(a)) == p * a);
        REQUIRE(verschiebung(a * frobenius(b)) == verschiebung(a) * b);
        // F(w) = w^p mod p
        REQUIRE(frobenius(a).reduce(1) == a.pow(5).reduce(1));
        REQUIRE(frobenius_inverse(frobenius(a)) == a);
    }
}

TEST_CASE("teichmuller digits") {
    WittRing w25(FiniteField::prime(5), 2);
    auto digits = teich_digits(w25.from_int(7));
    REQUIRE(digits.size() == 2);
    CHECK(digits[0].rep()[0] == 2);
    CHECK(digits[1].is_zero());

    WittRing r(FiniteField::standard(2, 3), 4);
    auto pd = teich_digits(r.from_int(2));
    CHECK(pd[0].is_zero());
    CHECK(pd[1].is_one());
    CHECK(pd[2].is_zero());
    for (const auto& b : teich_digits(r.zero())) CHECK(b.is_zero());

    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        auto w = random_elem(r, rng);
        REQUIRE(from_teich_digits(r, teich_digits(w)) == w);
    }
}

TEST_CASE("lift_witt_map") {
    // F_3 -> W_2(F_3): 2 maps to the brute-force Teichmueller lift 8.
    FiniteField f3 = FiniteField::prime(3);
    WittRing w9(f3, 2);
    auto emb = lift_witt_map(f3, w9, w9.residue_field().zero());
    WittRing src(f3, 2);
    CHECK(emb.apply(teichmuller(src, src.residue_field().from_int(2))) == w9.from_int(8));
    CHECK(emb.generator_image().is_zero());
    CHECK(brute_teichmuller(3, 2, 2) == 8);

    SUBCASE("identity embedding is the identity on digits") {
        WittRing r(FiniteField::standard(2, 2), 3);
        auto id = lift_witt_map(r.field(), r, r.residue_field().gen());
        std::mt19937_64 rng(2);
        for (int i = 0; i < 30; ++i) {
            auto w = random_elem(r, rng);
            CHECK(id.apply(w) == w);
        }
        // The nontrivial automorphism T -> T^2 is also an embedding.
        auto frob = lift_witt_map(r.field(), r, r.residue_field().gen().pow(2));
        for (int i = 0; i < 30; ++i) {
            auto w = random_elem(r, rng);
            CHECK(frob.apply(w) == frobenius(w));
        }
    }

    SUBCASE("prime field into an extension lands in the prime subring") {
        WittRing big(FiniteField::standard(3, 2), 2);
        auto emb2 = lift_witt_map(f3, big, big.residue_field().zero());
        for (i64 a = 0; a < 9; ++a) {
            auto img = emb2.apply(WittRing(f3, 2).from_int(a));
            CHECK(img == big.from_int(a));
        }
    }

    SUBCASE("non-roots are rejected") {
        WittRing r(FiniteField::standard(3, 2), 2);
        try {
            (void)lift_witt_map(r.field(), r, r.residue_field().one());
            FAIL("expected NotEmbedding");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::NotEmbedding);
        }
    }
}

TEST_CASE("inverse and valuation") {
    WittRing r(FiniteField::standard(3, 2), 4);
    std::mt19937_64 rng(9);
    for (int i = 0; i < 50; ++i) {
        auto a = random_elem(r, rng);
        if (!a.is_unit()) continue;
        CHECK(a * a.inverse() == r.one());
    }
    CHECK(r.from_int(9).valuation() == 2);
    CHECK(r.zero().valuation() == 4);
    CHECK_THROWS_AS((void)r.from_int(3).inverse(), Error);
    CHECK(r.from_int(9).div_p() == r.with_precision(3).from_int(3));
}
