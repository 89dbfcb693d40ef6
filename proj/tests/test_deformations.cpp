#include <random>

#include "doctest.h"
#include "ltk/deformations.hpp"

using namespace ltk;

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

// h = x + sum c_k x^k with integer c_k plus u-terms, zero at degrees p^j (j < n).
PowerSeries<ParamRing> random_coordinate(const ParamRing& R, int p, int n, int D, std::mt19937_64& rng) {
    std::uniform_int_distribution<i64> c(0, 7);
    PowerSeries<ParamRing> h = PowerSeries<ParamRing>::x(R, D);
    for (int k = 2; k <= D; ++k) {
        bool skip = false;
        for (i64 pj = p; pj <= D && pj <= ipow(p, n - 1); pj *= p) skip = skip || k == pj;
        if (skip) continue;
        h[k] = R.from_int(c(rng));
        for (int i = 0; i < R.nvars(); ++i) h[k] += R.var(i) * R.from_int(c(rng));
    }
    return h;
}

}  // namespace

TEST_CASE("universal deformation") {
    for (auto [p, n, D] : {std::tuple{2, 2, 8}, {3, 2, 10}, {2, 3, 8}}) {
        const auto U = universal_deformation(p, n, D, 2);
        CHECK(validate(U));
        CHECK(check_axioms(U.G).ok());
        const auto params = extract_lt_params(U.G, n);
        REQUIRE(static_cast<int>(params.size()) == n - 1);
        for (int i = 0; i + 1 < n; ++i) CHECK(params[i] == U.G.ring.var(i));
        // Reduction mod (p, u) has [p](x) = x^{p^n}.
        const auto Gk = residue_law(U);
        CHECK(p_series(Gk) == PowerSeries<WittRing>::monomial(Gk.ring, D, static_cast<int>(ipow(p, n)), Gk.ring.one()));
        CHECK(height(Gk) == n);
        // Gamma is isomorphic to the Honda law mod p via the normalizing coordinate.
        const auto honda = honda_fgl_normalized(p, n, D, 1);
        const WittRing& K = Gk.ring;
        auto emb = [&](const WittElem& a) { return embed_prime(a, K); };
        const FormalGroupLaw<WittRing> Hk{K, p, D, honda.law.F.map_coeffs(K, emb)};
        CHECK(Hk.F == Gk.F);
    }
}

TEST_CASE("classify the universal deformation and its pullbacks") {
    const int p = 2, n = 2, D = 8;
    const auto U = universal_deformation(p, n, D, 3);
    const auto cls = classify(U);
    CHECK(cls.precision == 3);
    REQUIRE(cls.params.size() == 1);
    CHECK(cls.params[0] == U.G.ring.var(0));
    CHECK(cls.iso == U.G.x());

    // Base change along u_1 -> c for c in W_3(k) and for c = u_1 + p u_1^2.
    const ParamRing& R = U.G.ring;
    const WittRing& W = R.base();
    for (const auto& c : {R.constant(W.gen()), R.constant(W.from_int(5)),
                          R.var(0) + R.from_int(p) * R.var(0) * R.var(0)}) {
        const Deformation d{pullback_universal(U, R, {c}), n, 0, U.alpha};
        const auto k = classify(d);
        REQUIRE(k.params.size() == 1);
        CHECK(k.params[0] == c);
        CHECK(k.iso == d.G.x());
    }
}

TEST_CASE("classify recovers a coordinate change") {
    std::mt19937_64 rng(11);
    for (auto [p, n, D, m] : {std::tuple{2, 2, 8, 12}, {3, 2, 10, 8}}) {
        const auto U = universal_deformation(p, n, D, m);
        const ParamRing& R = U.G.ring;
        for (int t = 0; t < 2; ++t) {
            const auto h = random_coordinate(R, p, n, D, rng);
            const auto hbar = h.map_coeffs(U.alpha.ring(), [](const TruncPoly<WittRing>& c) {
                return c.constant_term().reduce(1);
            });
            const Deformation d{conjugate(U.G, h), n, 0, hbar.compose(U.alpha)};
            CHECK(validate(d));
            const auto cls = classify(d);
            INFO("p = " << p << ", surviving digits " << cls.precision);
            REQUIRE(cls.precision >= 1);
            const auto Gd = reduce_mod(d.G, cls.precision);
            CHECK(iso_check(Gd, cls.normal, cls.iso));
            const auto Ured = reduce_mod(U.G, cls.precision);
            const Deformation Ur{Ured, n, 0, U.alpha};
            CHECK(pullback_universal(Ur, cls.normal.ring, cls.params).F == cls.normal.F);
            for (int i = 0; i + 1 < n; ++i) CHECK(cls.params[i] == cls.normal.ring.var(i));
            // The tie-break makes the recovered iso exactly h^-1.
            const auto hred = h.map_coeffs(cls.normal.ring, [&](const TruncPoly<WittRing>& c) {
                return c.map_coeffs(cls.normal.ring, [&](const WittElem& a) { return a.reduce(cls.precision); });
            });
            CHECK(cls.iso.compose(hred) == PowerSeries<ParamRing>::x(cls.normal.ring, D));
            // Idempotence: the normal form classifies with the trivial iso.
            const auto again = classify(Deformation{cls.normal, n, 0, U.alpha});
            CHECK(again.iso == cls.normal.x());
            CHECK(again.params == cls.params);
        }
    }
}

TEST_CASE("classify rejects non-prime coordinate changes") {
    const auto U = universal_deformation(2, 2, 8, 4);
    const ParamRing& R = U.G.ring;
    auto h = U.G.x();
    h[3] = R.constant(R.base().gen());
    const Deformation d{conjugate(U.G, h), 2, 0, U.alpha};
    CHECK(kind_of([&] { (void)classify(d); }) == ErrorKind::NormalizationObstructed);
}

TEST_CASE("augmented deformations") {
    const int p = 2, D = 8;
    const SeriesRing window(WittRing(FiniteField::prime(p), 1), -12, 24);
    const auto H = augmented_universal(p, 2, D, 2, window);
    CHECK(validate(H));
    CHECK(height(residue_law(H)) == 1);
    const auto cls = classify_augmented(H);
    CHECK(cls.params.empty());
    CHECK(cls.j.frob == 0);
    CHECK(cls.j.u_image == H.G.ring.base().monomial(1));

    const SeriesRing& Lambda = H.G.ring.base();
    const LambdaMap shift{0, Lambda.monomial(1) + Lambda.from_int(p)};
    const auto B = base_change(H, shift);
    CHECK(validate(B));
    const auto cb = classify_augmented(B);
    CHECK(cb.j.u_image == shift.u_image);
    CHECK(check_axioms(B.G).ok());

    // A map sending u to a unit is not local-continuous.
    CHECK_FALSE(validate(LambdaMap{0, Lambda.one()}));

    const auto H3 = augmented_universal(p, 3, D, 2, window);
    CHECK(validate(H3));
    const auto c3 = classify_augmented(H3);
    REQUIRE(c3.params.size() == 1);
    CHECK(c3.params[0] == H3.G.ring.var(0));
    CHECK(c3.j.u_image == H3.G.ring.base().monomial(1));
    CHECK(height(residue_law(H3)) == 2);
}

TEST_CASE("stabilizer group") {
    std::mt19937_64 rng(3);
    for (auto [p, n, D] : {std::tuple{2, 2, 8}, {3, 2, 9}}) {
        const auto U = universal_deformation(p, n, D, 2);
        const auto gamma = gamma_of(U);
        const auto e = stabilizer_identity(gamma);
        CHECK(validate(e, gamma));
        std::vector<StabilizerElement> xs;
        for (int t = 0; t < 4; ++t) xs.push_back(random_stabilizer(gamma, n, rng));
        for (const auto& a : xs) {
            CHECK(validate(a, gamma));
            const auto ea = stabilizer_compose(e, a);
            CHECK(ea.tau == a.tau);
            CHECK(ea.g == a.g);
            const auto ai = stabilizer_compose(a, stabilizer_inverse(a));
            CHECK(ai.tau == 0);
            CHECK(ai.g == gamma.x());
            const auto ia = stabilizer_compose(stabilizer_inverse(a), a);
            CHECK(ia.g == gamma.x());
        }
        for (int i = 0; i + 2 < static_cast<int>(xs.size()); ++i) {
            const auto& a = xs[i];
            const auto& b = xs[i + 1];
            const auto& c = xs[i + 2];
            const auto l = stabilizer_compose(stabilizer_compose(a, b), c);
            const auto r = stabilizer_compose(a, stabilizer_compose(b, c));
            CHECK(l.tau == r.tau);
            CHECK(l.g == r.g);
            CHECK(validate(stabilizer_compose(a, b), gamma));
        }
        // Left action on deformations.
        CHECK(stabilizer_act(e, U).alpha == U.alpha);
        for (int i = 0; i + 1 < static_cast<int>(xs.size()); ++i) {
            const auto& s = xs[i];
            const auto& t = xs[i + 1];
            const auto one = stabilizer_act(s, stabilizer_act(t, U));
            const auto two = stabilizer_act(stabilizer_compose(s, t), U);
            CHECK(one.i_frob == two.i_frob);
            CHECK(one.alpha == two.alpha);
            CHECK(one.G.F == U.G.F);
            CHECK(validate(one));
        }
    }
}

TEST_CASE("cooperation points") {
    const int p = 2, n = 2, D = 8;
    const auto U = universal_deformation(p, n, D, 2);
    const auto right = residue_law(U);
    const CoopPoint canon{0, right.x()};
    CHECK(validate_coop_point(canon, U, right).ok);

    auto bad = right.x();
    bad[1] = right.ring.zero();
    bad[2] = right.ring.one();
    const auto r1 = validate_coop_point({0, bad}, U, right);
    CHECK_FALSE(r1.ok);
    CHECK(r1.reason == CoopReason::NonUnitLeading);

    const auto taller = residue_gamma(p, 3, D, right.ring.field());
    const auto r2 = validate_coop_point(canon, U, taller);
    CHECK_FALSE(r2.ok);
    CHECK(r2.reason == CoopReason::HeightMismatch);

    // A stabilizer element is a valid point from Gamma to itself.
    std::mt19937_64 rng(9);
    const auto s = random_stabilizer(right, n, rng);
    CHECK(validate_coop_point({s.tau, s.g}, U, right).ok);
    CHECK(to_string(r2.reason) == "height_mismatch");
}
