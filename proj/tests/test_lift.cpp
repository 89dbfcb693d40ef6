#include <chrono>
#include <random>

#include "doctest.h"
#include "ltk/lift.hpp"

using namespace ltk;

namespace {

using DualRing = TruncPolyRing<SeriesRing>;

// Height-1 law over k((u)): Lubin-Tate p, n = 2 with u_1 -> u, reduced mod p.
FormalGroupLaw<SeriesRing> residue_law(int p, int D, const SeriesRing& K) {
    const auto G = lubin_tate_fgl(p, 2, D, 1);
    return specialize_series(G, K, {K.monomial(1)});
}

FormalGroupLaw<DualRing> constant_extension(const FormalGroupLaw<SeriesRing>& G, const DualRing& A) {
    return {A, G.p, G.D, G.F.map_coeffs(A, [&](const LaurentSeries& c) { return A.constant(c); })};
}

LaurentSeries random_poly(const SeriesRing& K, std::mt19937_64& rng, int max_deg) {
    std::uniform_int_distribution<i64> c(0, K.p() - 1);
    std::map<int, WittElem> t;
    for (int k = 0; k <= max_deg; ++k) t.emplace(k, K.coeff().from_int(c(rng)));
    return K.from_terms(t);
}

PowerSeries<DualRing> random_iso(const DualRing& A, int D, std::mt19937_64& rng) {
    const SeriesRing& K = A.base();
    PowerSeries<DualRing> phi = PowerSeries<DualRing>::x(A, D);
    for (int k = 2; k <= D; ++k)
        phi[k] = A.constant(random_poly(K, rng, 1)) + A.var(0) * A.constant(random_poly(K, rng, 1));
    return phi;
}

}  // namespace

TEST_CASE("lift_iso over k((u))[e]/e^2 reproduces known isomorphisms") {
    // Truncation leaves the top coefficients near p-power degrees undetermined;
    // D is chosen so the determined range covers degree 12 at p = 2.
    for (auto [p, D, want] : {std::tuple{2, 18, 12}, {3, 12, 8}}) {
        SeriesRing K(WittRing(FiniteField::prime(p), 1), -40, 64);
        DualRing A(K, {"e"}, 1, {2});
        const auto F1 = constant_extension(residue_law(p, D, K), A);
        REQUIRE(check_axioms(F1).ok());
        std::mt19937_64 rng(100 + p);
        for (int t = 0; t < 3; ++t) {
            const auto phi = random_iso(A, D, rng);
            const auto F2 = conjugate(F1, phi);
            const auto phibar = reduce_mod_ideal(phi);
            const auto lift = lift_iso(F1, F2, phibar);
            INFO("p = " << p << ", determined to degree " << lift.determined_degree);
            CHECK(lift.determined_degree >= want);
            for (int j = 0; j <= lift.determined_degree; ++j) CHECK(lift.phi[j] == phi[j]);
            const auto again = lift_iso(F1, F2, phibar);
            for (int j = 0; j <= lift.determined_degree; ++j) CHECK(again.phi[j] == lift.phi[j]);
        }
    }
}

TEST_CASE("lift_iso trivial cases") {
    SeriesRing K(WittRing(FiniteField::prime(2), 1), -20, 40);
    DualRing A(K, {"e"}, 1, {2});
    const auto F = constant_extension(residue_law(2, 8, K), A);
    const auto lift = lift_iso(F, F, reduce_mod_ideal(F).x());
    for (int j = 0; j <= lift.determined_degree; ++j) CHECK(lift.phi[j] == F.x()[j]);

    // Zero ideal: nothing to lift.
    DualRing Z(K, {}, 0);
    const auto Fz = constant_extension(residue_law(2, 8, K), Z);
    const auto lz = lift_iso(Fz, Fz, reduce_mod_ideal(Fz).x());
    CHECK(lz.determined_degree == 8);

    // A non-isomorphism mod the ideal is rejected.
    auto bad = reduce_mod_ideal(F).x();
    bad[2] = K.one();
    try {
        (void)lift_iso(F, F, bad);
        FAIL("expected NoLift");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoLift);
    }
}
