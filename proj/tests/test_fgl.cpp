#include <random>

#include "doctest.h"
#include "ltk/fgl.hpp"
#include "oracles.hpp"

using namespace ltk;
using oracle::rational_honda_pseries;
using oracle::rational_mod;

namespace {

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

TEST_CASE("padic arithmetic tracks precision") {
    PadicRing R(3, 6);
    const auto a = R.from_int(9);
    CHECK(a.valuation() == 2);
    CHECK((a * R.from_int(3).inverse()) == R.from_int(3));
    const auto third = R.from_int(3).inverse();
    CHECK(third.valuation() == -1);
    CHECK((third * R.from_int(3)) == R.one());
    // 1 + O(3^6) minus 1 leaves a zero known mod 3^6
    const auto z = R.one() - R.one();
    CHECK(z.is_zero());
    CHECK(z.abs_precision() == 6);
    CHECK(R.from_int(-5).to_witt(WittRing(FiniteField::prime(3), 2)) == WittRing(FiniteField::prime(3), 2).from_int(4));
    CHECK(kind_of([&] { (void)third.to_witt(WittRing(FiniteField::prime(3), 1)); }) ==
          ErrorKind::PrecisionGuardExceeded);
}

TEST_CASE("honda p=2 n=1 against the rational oracle") {
    const auto G = honda_fgl(2, 1, 8, 4);
    const auto ps = p_series(G);
    const auto oracle = rational_honda_pseries(2, 1, 8);
    for (int k = 0; k <= 8; ++k) CHECK(ps[k].rep()[0] == rational_mod(oracle[k], 16));
    CHECK(ps[1] == G.ring.from_int(2));
    CHECK(ps[2] == G.ring.from_int(-1));
    CHECK(check_axioms(G).ok());
    // F(x, 0) = x
    for (int k = 1; k <= 8; ++k) CHECK((G.F.at(k, 0) - (k == 1 ? G.ring.one() : G.ring.zero())).is_zero());
}

TEST_CASE("honda reductions mod p") {
    const auto G = reduce_mod(honda_fgl(2, 1, 16, 2), 1);
    CHECK(p_series(G) == PowerSeries<WittRing>::monomial(G.ring, 16, 2, G.ring.one()));
    CHECK(check_axioms(G).ok());
    CHECK(height(G) == 1);

    const auto H = reduce_mod(honda_fgl(3, 2, 9, 2), 1);
    CHECK(p_series(H) == PowerSeries<WittRing>::monomial(H.ring, 9, 9, H.ring.one()));
    CHECK(height(H) == 2);
    CHECK(check_axioms(H).ok());

    // Rational oracle at p = 3, n = 2.
    const auto full = honda_fgl(3, 2, 10, 3);
    const auto ps = p_series(full);
    const auto oracle = rational_honda_pseries(3, 2, 10);
    for (int k = 0; k <= 10; ++k) CHECK(ps[k].rep()[0] == rational_mod(oracle[k], 27));
}

TEST_CASE("additive law") {
    WittRing W(FiniteField::prime(3), 2);
    const auto A = additive_fgl(W, 3, 6);
    CHECK(p_series(A) == PowerSeries<WittRing>::monomial(W, 6, 1, W.from_int(3)));
    CHECK(check_axioms(A).ok());
    const auto Ak = reduce_mod(A, 1);
    CHECK(kind_of([&] { (void)height(Ak); }) == ErrorKind::HeightExceedsPrecision);
    const auto f = PowerSeries<WittRing>(W, 6, {W.zero(), W.one(), W.from_int(2)});
    const auto g = PowerSeries<WittRing>(W, 6, {W.zero(), W.from_int(5), W.zero(), W.one()});
    CHECK(formal_sum(A, f, g) == f + g);
    CHECK(formal_sum(A, f, PowerSeries<WittRing>(W, 6)) == f);
    // h = x for the already-normal additive law over Z/9
    const auto norm = normalize_coordinate(A, 2);  // x^{p^n} lies beyond D, all u_i = 0
    CHECK(norm.trivial);
    CHECK(kind_of([&] { (void)formal_sum(A, f + PowerSeries<WittRing>::monomial(W, 6, 0, W.one()), g); }) ==
          ErrorKind::ValuationTooLow);
}

TEST_CASE("formal negation and difference") {
    const auto G = honda_fgl(3, 1, 10, 3);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<i64> dist(0, 26);
    for (int t = 0; t < 10; ++t) {
        PowerSeries<WittRing> f(G.ring, 10);
        for (int k = 1; k <= 10; ++k) f[k] = G.ring.from_int(dist(rng));
        CHECK(formal_sum(G, f, formal_neg(G, f)).is_zero());
        CHECK(formal_diff(G, f, f).is_zero());
    }
}

TEST_CASE("honda needs a coordinate change for exact normal form") {
    const auto G = honda_fgl(2, 1, 8, 2);
    CHECK(kind_of([&] { (void)extract_lt_params(G, 1); }) == ErrorKind::NotNormalForm);
    CHECK(kind_of([&] { (void)normalize_coordinate(G, 1); }) == ErrorKind::NormalizationObstructed);
    // Mod p the Honda law is already normal with no parameters.
    CHECK(extract_lt_params(reduce_mod(G, 1), 1).empty());
    const auto H2 = reduce_mod(honda_fgl(3, 2, 12, 2), 1);
    const auto params = extract_lt_params(H2, 2);
    REQUIRE(params.size() == 1);
    CHECK(params[0].is_zero());

    for (auto [p, n, D] : {std::tuple{2, 1, 8}, {2, 2, 8}, {3, 1, 9}, {3, 2, 10}}) {
        const auto norm = honda_fgl_normalized(p, n, D, 2);
        CHECK(check_axioms(norm.law).ok());
        const auto u = extract_lt_params(norm.law, n);
        for (const auto& c : u) CHECK(c.is_zero());
        CHECK(assemble_normal_pseries(norm.law, u, n) == p_series(norm.law));
        // h is an isomorphism from the raw Honda law to the normalized one.
        CHECK(iso_check(honda_fgl(p, n, D, 2), norm.law, norm.h));
    }
    CHECK_FALSE(honda_fgl_normalized(2, 1, 8, 2).trivial);
}

TEST_CASE("normalization recovers a known coordinate change") {
    const int p = 2, n = 2, D = 9;
    const auto base = honda_fgl_padic(p, n, D, 30);
    const auto G = normalize_coordinate(base, n).law;
    const PadicRing& R = G.ring;
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<i64> dist(0, 100);
    for (int t = 0; t < 3; ++t) {
        PowerSeries<PadicRing> h0 = G.x();
        for (int k = 2; k <= D; ++k)
            if (k != 2) h0[k] = R.from_int(dist(rng));  // degree p^1 left free by the tie-break
        const auto conj = conjugate(G, h0);
        const auto norm = normalize_coordinate(conj, n);
        CHECK(norm.h.compose(h0) == G.x());
        CHECK(iso_check(conj, norm.law, norm.h));
    }
}

TEST_CASE("lubin-tate deformation") {
    const auto G = lubin_tate_fgl(2, 2, 8, 2);
    CHECK(check_axioms(G).ok());
    const auto u = extract_lt_params(G, 2);
    REQUIRE(u.size() == 1);
    CHECK(u[0] == G.ring.var(0));
    CHECK(p_series(G)[1] == G.ring.from_int(2));

    const auto Gk = reduce_mod(G, 1);
    const auto ps = p_series(Gk);
    CHECK(ps[1].is_zero());
    CHECK(ps[2] == Gk.ring.var(0));

    // mod (p, u1): Honda of height 2
    const auto G0 = specialize(Gk, {Gk.ring.base().zero()});
    CHECK(p_series(G0) == PowerSeries<WittRing>::monomial(G0.ring, 8, 4, G0.ring.one()));
    CHECK(height(G0) == 2);

    // over k((u)) with u1 -> u: height 1
    SeriesRing K(WittRing(FiniteField::prime(2), 1), -8, 40);
    const auto H = specialize_series(Gk, K, {K.monomial(1)});
    CHECK(height(H) == 1);
    CHECK(extract_lt_params(H, 2)[0] == K.monomial(1));

    // u1 -> 0 over Z/4 gives [2](x) = 2x + O(x^2)
    const auto Gz = specialize(G, {G.ring.base().zero()});
    CHECK(p_series(Gz)[1] == Gz.ring.from_int(2));

    const auto G3 = lubin_tate_fgl(3, 2, 9, 2);
    CHECK(check_axioms(G3).ok());
    CHECK(extract_lt_params(G3, 2)[0] == G3.ring.var(0));

    const auto G23 = lubin_tate_fgl(2, 3, 8, 2);
    const auto u3 = extract_lt_params(G23, 3);
    REQUIRE(u3.size() == 2);
    CHECK(u3[0] == G23.ring.var(0));
    CHECK(u3[1] == G23.ring.var(1));
}

TEST_CASE("iso checks") {
    const auto G1 = reduce_mod(honda_fgl(2, 1, 8, 1), 1);
    const auto G2 = reduce_mod(honda_fgl(2, 2, 8, 1), 1);
    CHECK(iso_check(G1, G1, G1.x()));
    CHECK_FALSE(iso_check(G1, G2, G1.x()));
    const WittRing& W = G1.ring;
    PowerSeries<WittRing> h = G1.x();
    h[3] = W.one();
    h[5] = W.one();
    CHECK(iso_check(G1, conjugate(G1, h), h));
    PowerSeries<WittRing> bad = G1.x();
    bad[1] = W.zero();
    CHECK_FALSE(iso_check(G1, G1, bad));
}
