#pragma once

// One-dimensional formal group laws truncated at total degree D, generic over
// the coefficient ring, plus the concrete Honda and Lubin-Tate constructions.

#include <optional>
#include <string>
#include <vector>

#include "ltk/padic.hpp"
#include "ltk/powerseries.hpp"
#include "ltk/truncpoly.hpp"

namespace ltk {

template <class R>
struct FormalGroupLaw {
    R ring;
    int p;
    int D;
    BiSeries<R> F;

    using E = elem_t<R>;
    PowerSeries<R> x() const { return PowerSeries<R>::x(ring, D); }
};

template <class R>
FormalGroupLaw<R> additive_fgl(const R& ring, int p, int D) {
    return {ring, p, D, BiSeries<R>::x(ring, D) + BiSeries<R>::y(ring, D)};
}

struct AxiomReport {
    bool unit = false;
    bool commutative = false;
    bool associative = false;
    std::string detail;
    bool ok() const { return unit && commutative && associative; }
};

template <class R>
AxiomReport check_axioms(const FormalGroupLaw<R>& G) {
    AxiomReport rep;
    const int D = G.D;
    const auto& F = G.F;
    rep.unit = F.at(0, 0).is_zero();
    for (int k = 1; k <= D && rep.unit; ++k) {
        const auto expect = k == 1 ? G.ring.one() : G.ring.zero();
        if (!(F.at(k, 0) - expect).is_zero() || !(F.at(0, k) - expect).is_zero()) {
            rep.unit = false;
            rep.detail += "unit axiom fails at degree " + std::to_string(k) + "; ";
        }
    }
    rep.commutative = true;
    for (int i = 0; i <= D && rep.commutative; ++i)
        for (int j = 0; i + j <= D; ++j)
            if (!(F.at(i, j) - F.at(j, i)).is_zero()) {
                rep.commutative = false;
                rep.detail += "commutativity fails at (" + std::to_string(i) + "," + std::to_string(j) + "); ";
                break;
            }
    // Trivariate comparison F(F(x,y),z) vs F(x,F(y,z)); index [a][b][c] over a+b+c <= D.
    const int S = D + 1;
    using E = elem_t<R>;
    std::vector<E> lhs(S * S * S, G.ring.zero()), rhs(S * S * S, G.ring.zero());
    auto idx = [S](int a, int b, int c) { return (a * S + b) * S + c; };
    std::vector<BiSeries<R>> pw{BiSeries<R>(G.ring, D)};
    pw[0].at(0, 0) = G.ring.one();
    for (int k = 1; k <= D; ++k) pw.push_back(pw.back() * F);
    for (int i = 0; i <= D; ++i)
        for (int j = 0; i + j <= D; ++j) {
            const E& c = F.at(i, j);
            if (drop_zero(c)) continue;
            // lhs: c * F(x,y)^i * z^j ; rhs: c * x^i * F(y,z)^j
            for (int a = 0; a + j <= D; ++a)
                for (int b = 0; a + b + j <= D; ++b) {
                    const E& l = pw[i].at(a, b);
                    if (!drop_zero(l)) lhs[idx(a, b, j)] += c * l;
                }
            for (int b = 0; i + b <= D; ++b)
                for (int cc = 0; i + b + cc <= D; ++cc) {
                    const E& r = pw[j].at(b, cc);
                    if (!drop_zero(r)) rhs[idx(i, b, cc)] += c * r;
                }
        }
    rep.associative = true;
    for (int a = 0; a <= D && rep.associative; ++a)
        for (int b = 0; a + b <= D && rep.associative; ++b)
            for (int c = 0; a + b + c <= D; ++c)
                if (!(lhs[idx(a, b, c)] - rhs[idx(a, b, c)]).is_zero()) {
                    rep.associative = false;
                    rep.detail += "associativity fails at x^" + std::to_string(a) + " y^" + std::to_string(b) +
                                  " z^" + std::to_string(c) + "; ";
                    break;
                }
    return rep;
}

template <class R>
PowerSeries<R> formal_sum(const FormalGroupLaw<R>& G, const PowerSeries<R>& f, const PowerSeries<R>& g) {
    if (f.valuation() < 1 || g.valuation() < 1)
        fail(ErrorKind::ValuationTooLow, "formal sum needs series without constant term");
    return G.F.evaluate(f, g);
}

/// The inverse series i(x) with F(x, i(x)) = 0.
template <class R>
PowerSeries<R> inverse_series(const FormalGroupLaw<R>& G) {
    PowerSeries<R> iota = -G.x();
    const auto x = G.x();
    for (int k = 2; k <= G.D; ++k) {
        const auto e = G.F.evaluate(x, iota);
        iota[k] -= e[k];
    }
    return iota;
}

template <class R>
PowerSeries<R> formal_neg(const FormalGroupLaw<R>& G, const PowerSeries<R>& f) {
    if (f.valuation() < 1) fail(ErrorKind::ValuationTooLow, "formal negation needs series without constant term");
    return inverse_series(G).compose(f);
}

template <class R>
PowerSeries<R> formal_diff(const FormalGroupLaw<R>& G, const PowerSeries<R>& f, const PowerSeries<R>& g) {
    return formal_sum(G, f, formal_neg(G, g));
}

/// [m](x) for m >= 0.
template <class R>
PowerSeries<R> multiple_series(const FormalGroupLaw<R>& G, int m) {
    require(m >= 0, ErrorKind::InvalidArgument, "multiple_series needs m >= 0");
    PowerSeries<R> acc(G.ring, G.D);
    const auto x = G.x();
    for (int i = 0; i < m; ++i) acc = i == 0 ? x : G.F.evaluate(acc, x);
    return acc;
}

template <class R>
PowerSeries<R> p_series(const FormalGroupLaw<R>& G) {
    return multiple_series(G, G.p);
}

/// Height from the leading term of [p]; the base must have characteristic p.
template <class R>
int height(const FormalGroupLaw<R>& G) {
    const auto ps = p_series(G);
    const int k = ps.valuation();
    if (k > G.D)
        fail(ErrorKind::HeightExceedsPrecision,
             "[p] vanishes to degree " + std::to_string(G.D) + " (infinite height or D too small)");
    int h = 0;
    i64 pk = 1;
    while (pk < k) {
        pk *= G.p;
        ++h;
    }
    if (pk != k) fail(ErrorKind::NonPPowerLeadingTerm, "leading term of [p] at non-p-power degree " + std::to_string(k));
    if (!unit_elem(ps[k]))
        fail(ErrorKind::NonPPowerLeadingTerm, "leading coefficient of [p] at degree " + std::to_string(k) + " is not a unit");
    return h;
}

/// u_1..u_{n-1} read off [p] = px +_F u_1 x^p +_F ... +_F x^{p^n}.
template <class R>
std::vector<elem_t<R>> extract_lt_params(const FormalGroupLaw<R>& G, int n) {
    require(n >= 1, ErrorKind::InvalidArgument, "height must be >= 1");
    std::vector<elem_t<R>> params;
    PowerSeries<R> r = p_series(G);
    i64 pi = 1;
    for (int i = 0; i <= n; ++i, pi *= G.p) {
        if (pi > G.D) {
            // Remaining terms sit beyond the truncation; they are 0 to degree D.
            for (int j = i; j < n; ++j) params.push_back(G.ring.zero());
            return params;
        }
        for (int k = 1; k < pi; ++k)
            if (!r[k].is_zero())
                fail(ErrorKind::NotNormalForm, "residual " + std::to_string(i) + " has a term at degree " +
                                                   std::to_string(k) + " below " + std::to_string(pi));
        const elem_t<R> ui = r[static_cast<int>(pi)];
        if (i == 0) {
            if (!(ui - G.ring.from_int(G.p)).is_zero())
                fail(ErrorKind::NotNormalForm, "linear coefficient of [p] is not p");
        } else if (i < n) {
            params.push_back(ui);
        } else {
            // Final residual must be exactly x^{p^n}.
            const auto want = PowerSeries<R>::monomial(G.ring, G.D, static_cast<int>(pi), G.ring.one());
            if (!(r == want)) {
                const auto diff = r - want;
                fail(ErrorKind::NotNormalForm,
                     "final residual differs from x^" + std::to_string(pi) + " at degree " + std::to_string(diff.valuation()));
            }
            return params;
        }
        const auto term = PowerSeries<R>::monomial(G.ring, G.D, static_cast<int>(pi), ui);
        r = formal_diff(G, r, term);
    }
    return params;
}

/// px +_F u_1 x^p +_F ... +_F x^{p^n}.
template <class R>
PowerSeries<R> assemble_normal_pseries(const FormalGroupLaw<R>& G, const std::vector<elem_t<R>>& params, int n) {
    PowerSeries<R> acc = PowerSeries<R>::monomial(G.ring, G.D, 1, G.ring.from_int(G.p));
    i64 pi = 1;
    for (int i = 1; i <= n; ++i) {
        pi *= G.p;
        if (pi > G.D) break;
        const auto c = i < n ? params.at(i - 1) : G.ring.one();
        acc = formal_sum(G, acc, PowerSeries<R>::monomial(G.ring, G.D, static_cast<int>(pi), c));
    }
    return acc;
}

/// h(F(h^-1 x, h^-1 y)) for h = x + O(x^2).
template <class R>
FormalGroupLaw<R> conjugate(const FormalGroupLaw<R>& G, const PowerSeries<R>& h) {
    const auto hinv = h.reversion();
    const auto inner = G.F.evaluate_separate(hinv, hinv);
    return {G.ring, G.p, G.D, inner.compose_into(h)};
}

/// phi(F1(x,y)) = F2(phi x, phi y) to degree D, with phi = (unit) x + O(x^2).
template <class R>
bool iso_check(const FormalGroupLaw<R>& F1, const FormalGroupLaw<R>& F2, const PowerSeries<R>& phi) {
    if (!phi[0].is_zero() || !unit_elem(phi[1])) return false;
    const auto lhs = F1.F.compose_into(phi);
    const auto rhs = F2.F.evaluate_separate(phi, phi);
    return lhs == rhs;
}

/// Coefficient-wise image along a ring map; the image must again be a group law.
template <class R, class R2, class Fn>
FormalGroupLaw<R2> base_change(const FormalGroupLaw<R>& G, const R2& target, Fn&& fn) {
    FormalGroupLaw<R2> out{target, G.p, G.D, G.F.map_coeffs(target, fn)};
    const auto rep = check_axioms(out);
    if (!rep.ok()) fail(ErrorKind::UnsupportedMap, "image is not a formal group law: " + rep.detail);
    return out;
}

template <class R>
struct Normalization {
    PowerSeries<R> h;
    FormalGroupLaw<R> law;
    bool trivial;  // h = x
};

/// Over bases without division by p, only already-normal laws normalize.
template <class R>
Normalization<R> normalize_coordinate(const FormalGroupLaw<R>& G, int n) {
    try {
        (void)extract_lt_params(G, n);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotNormalForm) throw;
        fail(ErrorKind::NormalizationObstructed,
             std::string("coordinate change needs division by p over this base: ") + e.what());
    }
    return {G.x(), G, true};
}

/// Exact normalization over the p-adic base (tie-break: h'(0) = 1, no correction at degrees p^i, i < n).
Normalization<PadicRing> normalize_coordinate(const FormalGroupLaw<PadicRing>& G, int n);

using ParamRing = TruncPolyRing<WittRing>;
using ParamPadicRing = TruncPolyRing<PadicRing>;

/// Same algorithm with coefficients in a truncated parameter extension of the p-adic base.
Normalization<ParamPadicRing> normalize_coordinate(const FormalGroupLaw<ParamPadicRing>& G, int n);

// ---- concrete constructions ----

/// Guard digits carried while building a law of height n to degree D.
int guard_digits(int p, int n, int D);

/// Logarithm sum_k x^{p^{nk}} / p^k.
PowerSeries<PadicRing> honda_log(const PadicRing& ring, int n, int D);

/// Honda law over the p-adic base at the given relative precision.
FormalGroupLaw<PadicRing> honda_fgl_padic(int p, int n, int D, int N);

/// Honda law over W_m(F_p); PrecisionGuardExceeded if the guard was insufficient.
FormalGroupLaw<WittRing> honda_fgl(int p, int n, int D, int m = 2);

/// Honda law brought to normal form [p] = px +_F x^{p^n} over W_m(F_p), with the coordinate change used.
Normalization<WittRing> honda_fgl_normalized(int p, int n, int D, int m = 2);

/// Parameter ring W_m(F_p)[u_1..u_{n-1}] truncated at the exact weight bound for degree D.
ParamRing lt_param_ring(int p, int n, int D, int m);

/// Lubin-Tate universal deformation in normal form.
FormalGroupLaw<ParamRing> lubin_tate_fgl(int p, int n, int D, int m = 2);

/// Reduce W_m coefficients mod p^k.
FormalGroupLaw<WittRing> reduce_mod(const FormalGroupLaw<WittRing>& G, int k);
FormalGroupLaw<ParamRing> reduce_mod(const FormalGroupLaw<ParamRing>& G, int k);

/// Specialize u_i to the given elements of W_m (residue level must match).
FormalGroupLaw<WittRing> specialize(const FormalGroupLaw<ParamRing>& G, const std::vector<WittElem>& values);

/// Specialize over k((u)): u_i maps to the given Laurent series (ring of precision 1).
FormalGroupLaw<SeriesRing> specialize_series(const FormalGroupLaw<ParamRing>& G, const SeriesRing& target,
                                             const std::vector<LaurentSeries>& values);

}  // namespace ltk
