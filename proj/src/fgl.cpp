#include "ltk/fgl.hpp"

#include <algorithm>

namespace ltk {

namespace {

// Is k = p^j? Returns j or -1.
int p_power_index(int k, int p) {
    int j = 0;
    while (k % p == 0) {
        k /= p;
        ++j;
    }
    return k == 1 ? j : -1;
}

int ceil_log(int p, int D) {
    int e = 0;
    for (i64 v = 1; v < D; v *= p) ++e;
    return e;
}

PadicRing guarded_ring(int p, int N) {
    if (N > PadicRing::max_digits(p))
        fail(ErrorKind::PrecisionGuardExceeded, "guard precision " + std::to_string(N) + " exceeds the 62-bit kernel");
    return PadicRing(p, N);
}

template <class R>
PowerSeries<R> series_inverse_unit_constant(const PowerSeries<R>& w) {
    // w = 1 + O(x): inverse by the triangular recursion.
    PowerSeries<R> inv(w.ring(), w.D());
    inv[0] = w.ring().one();
    for (int k = 1; k <= w.D(); ++k) {
        auto acc = w.ring().zero();
        for (int j = 1; j <= k; ++j) acc += w[j] * inv[k - j];
        inv[k] = -acc;
    }
    return inv;
}

}  // namespace

int guard_digits(int p, int n, int D) { return (D + p - 2) / (p - 1) + n + 2; }

PowerSeries<PadicRing> honda_log(const PadicRing& ring, int n, int D) {
    PowerSeries<PadicRing> l(ring, D);
    i64 deg = 1;
    for (int k = 0; deg <= D; ++k) {
        l[static_cast<int>(deg)] = ring.make(-k, 1, ring.N());
        deg = deg * ipow(ring.p(), n);
    }
    return l;
}

FormalGroupLaw<PadicRing> honda_fgl_padic(int p, int n, int D, int N) {
    require(n >= 1, ErrorKind::InvalidArgument, "height must be >= 1");
    const PadicRing ring = guarded_ring(p, N);
    const auto l = honda_log(ring, n, D);
    const auto e = l.reversion();
    const auto s = BiSeries<PadicRing>::in_x(l) + BiSeries<PadicRing>::in_y(l);
    return {ring, p, D, s.compose_into(e)};
}

FormalGroupLaw<WittRing> honda_fgl(int p, int n, int D, int m) {
    require(m >= 1, ErrorKind::InvalidArgument, "p-precision must be >= 1");
    const auto G = honda_fgl_padic(p, n, D, m + guard_digits(p, n, D));
    const WittRing W(FiniteField::prime(p), m);
    return {W, p, D, G.F.map_coeffs(W, [&](const Padic& c) { return c.to_witt(W); })};
}

namespace {

// Shared by the p-adic base and its parameter extension; scalar embeds a p-adic constant.
template <class R, class Scalar>
Normalization<R> normalize_impl(const FormalGroupLaw<R>& G, int n, const PadicRing& Qp, Scalar&& scalar) {
    using E = elem_t<R>;
    require(n >= 1, ErrorKind::InvalidArgument, "height must be >= 1");
    const R& R_ = G.ring;
    const int p = G.p;
    const int D = G.D;
    // Logarithm: l' = 1 / (dF/dy)(x, 0).
    PowerSeries<R> omega(R_, D);
    const auto Fy = G.F.dy();
    for (int k = 0; k < D; ++k) omega[k] = Fy.at(k, 0);
    const auto dl = series_inverse_unit_constant(omega);
    PowerSeries<R> l(R_, D);
    for (int k = 1; k <= D; ++k) l[k] = dl[k - 1] * scalar(Qp.from_int(k).inverse());

    // Solve for g = h^-1 so that l(g(x)) is an Araki logarithm with v_n = 1, v_{>n} = 0.
    PowerSeries<R> g = G.x();
    std::vector<E> m{R_.one()};  // m_j = coefficient of x^{p^j}
    std::vector<E> v{R_.from_int(p)};
    auto pow_elem = [&](const E& a, i64 e) {
        E r = R_.one();
        for (i64 i = 0; i < e; ++i) r *= a;
        return r;
    };
    auto p_to_pj = [&](int j) { return scalar(Qp.make(static_cast<int>(ipow(p, j)), 1, Qp.N())); };
    bool trivial = true;
    for (int k = 2; k <= D; ++k) {
        const auto L = l.compose(g);
        const int j = p_power_index(k, p);
        E target = R_.zero();
        if (j >= 0 && j < n) {
            // Keep c_k = 0 and read off v_j.
            const E mj = L[k];
            E vj = R_.from_int(p) * mj - mj * p_to_pj(j);
            for (int i = 1; i < j; ++i) vj -= m[i] * pow_elem(v[j - i], ipow(p, i));
            m.push_back(mj);
            v.push_back(vj);
            continue;
        }
        if (j >= n) {
            if (static_cast<int>(v.size()) == n) v.push_back(R_.one());
            while (static_cast<int>(v.size()) <= j) v.push_back(R_.zero());
            E rhs = R_.zero();
            for (int i = 0; i < j; ++i) rhs += m[i] * pow_elem(v[j - i], ipow(p, i));
            const Padic denom = Qp.from_int(p) - Qp.make(static_cast<int>(ipow(p, j)), 1, Qp.N());
            target = rhs * scalar(denom.inverse());
            m.push_back(target);
        }
        const E ck = target - L[k];
        if (!ck.is_zero()) trivial = false;
        g[k] = ck;
    }
    const auto h = g.reversion();
    auto law = trivial ? G : conjugate(G, h);
    try {
        (void)extract_lt_params(law, n);
    } catch (const Error& e) {
        fail(ErrorKind::NormalizationObstructed, std::string("normal form not reached at working precision: ") + e.what());
    }
    return {trivial ? G.x() : h, law, trivial};
}

}  // namespace

Normalization<PadicRing> normalize_coordinate(const FormalGroupLaw<PadicRing>& G, int n) {
    return normalize_impl(G, n, G.ring, [](const Padic& c) { return c; });
}

Normalization<ParamPadicRing> normalize_coordinate(const FormalGroupLaw<ParamPadicRing>& G, int n) {
    const ParamPadicRing& PR = G.ring;
    return normalize_impl(G, n, PR.base(), [&](const Padic& c) { return PR.constant(c); });
}

Normalization<WittRing> honda_fgl_normalized(int p, int n, int D, int m) {
    const int N = m + guard_digits(p, n, D) + ceil_log(p, D) + n + 2;
    const auto G = honda_fgl_padic(p, n, D, N);
    const auto norm = normalize_coordinate(G, n);
    const WittRing W(FiniteField::prime(p), m);
    auto conv = [&](const Padic& c) { return c.to_witt(W); };
    FormalGroupLaw<WittRing> law{W, p, D, norm.law.F.map_coeffs(W, conv)};
    return {norm.h.map_coeffs(W, conv), law, norm.trivial};
}

ParamRing lt_param_ring(int p, int n, int D, int m) {
    std::vector<std::string> names;
    for (int i = 1; i < n; ++i) names.push_back("u" + std::to_string(i));
    const int cap = std::min(254, std::max(0, (D - 1) / (p - 1)));
    return ParamRing(WittRing(FiniteField::prime(p), m), names, cap);
}

FormalGroupLaw<ParamRing> lubin_tate_fgl(int p, int n, int D, int m) {
    require(n >= 1, ErrorKind::InvalidArgument, "height must be >= 1");
    require(m >= 1, ErrorKind::InvalidArgument, "p-precision must be >= 1");
    const ParamRing target = lt_param_ring(p, n, D, m);
    const PadicRing R = guarded_ring(p, m + guard_digits(p, n, D));
    std::vector<std::string> names;
    for (int i = 1; i < n; ++i) names.push_back("u" + std::to_string(i));
    const ParamPadicRing PR(R, names, target.total_cap());

    // Araki logarithm: m_k (p - p^{p^k}) = sum_{i<k} m_i v_{k-i}^{p^i}.
    std::vector<TruncPoly<PadicRing>> v{PR.from_int(p)};
    for (int i = 1; i < n; ++i) v.push_back(PR.var(i - 1));
    v.push_back(PR.one());
    auto pw = [&](const TruncPoly<PadicRing>& a, i64 e) {
        auto r = PR.one();
        for (i64 i = 0; i < e; ++i) r = r * a;
        return r;
    };
    std::vector<TruncPoly<PadicRing>> mk{PR.one()};
    PowerSeries<ParamPadicRing> l(PR, D);
    l[1] = PR.one();
    for (int k = 1; ipow(p, k) <= D; ++k) {
        auto rhs = PR.zero();
        for (int i = 0; i < k; ++i) {
            const int vi = k - i;
            if (vi > n) continue;
            rhs += mk[i] * pw(v[vi], ipow(p, i));
        }
        const Padic denom = R.from_int(p) - R.make(static_cast<int>(ipow(p, k)), 1, R.N());
        mk.push_back(rhs * PR.constant(denom.inverse()));
        l[static_cast<int>(ipow(p, k))] = mk.back();
    }
    const auto e = l.reversion();
    const auto s = BiSeries<ParamPadicRing>::in_x(l) + BiSeries<ParamPadicRing>::in_y(l);
    const auto F = s.compose_into(e);
    const WittRing& W = target.base();
    return {target, p, D,
            F.map_coeffs(target, [&](const TruncPoly<PadicRing>& c) {
                return c.map_coeffs(target, [&](const Padic& a) { return a.to_witt(W); });
            })};
}

FormalGroupLaw<WittRing> reduce_mod(const FormalGroupLaw<WittRing>& G, int k) {
    const WittRing W = G.ring.with_precision(k);
    return {W, G.p, G.D, G.F.map_coeffs(W, [k](const WittElem& c) { return c.reduce(k); })};
}

FormalGroupLaw<ParamRing> reduce_mod(const FormalGroupLaw<ParamRing>& G, int k) {
    std::vector<std::string> names;
    for (int i = 0; i < G.ring.nvars(); ++i) names.push_back(G.ring.name(i));
    const ParamRing target(G.ring.base().with_precision(k), names, G.ring.total_cap(), G.ring.var_caps());
    return {target, G.p, G.D, G.F.map_coeffs(target, [&](const TruncPoly<WittRing>& c) {
                return c.map_coeffs(target, [k](const WittElem& a) { return a.reduce(k); });
            })};
}

FormalGroupLaw<WittRing> specialize(const FormalGroupLaw<ParamRing>& G, const std::vector<WittElem>& values) {
    const WittRing& W = G.ring.base();
    return {W, G.p, G.D, G.F.map_coeffs(W, [&](const TruncPoly<WittRing>& c) { return c.evaluate(values); })};
}

FormalGroupLaw<SeriesRing> specialize_series(const FormalGroupLaw<ParamRing>& G, const SeriesRing& target,
                                             const std::vector<LaurentSeries>& values) {
    require(static_cast<int>(values.size()) == G.ring.nvars(), ErrorKind::InvalidArgument,
            "specialize_series: wrong number of values");
    const int tn = target.n();
    require(tn <= G.ring.base().n(), ErrorKind::UnsupportedMap, "target p-precision exceeds the source");
    return {target, G.p, G.D, G.F.map_coeffs(target, [&](const TruncPoly<WittRing>& c) {
                LaurentSeries acc = target.zero();
                for (const auto& [key, a] : c.terms()) {
                    LaurentSeries t = target.constant(a.reduce(tn));
                    for (int i = 0; i < G.ring.nvars(); ++i)
                        for (int e = 0; e < ParamRing::exponent(key, i); ++e) t = t * values[i];
                    acc += t;
                }
                return acc;
            })};
}

}  // namespace ltk
