#include "ltk/deformations.hpp"

#include <algorithm>

namespace ltk {

namespace {

int mod_pos(int a, int m) { return ((a % m) + m) % m; }

// Compositional inverse of c x + O(x^2) with c a unit.
template <class R>
PowerSeries<R> series_inverse(const PowerSeries<R>& g) {
    require(unit_elem(g[1]), ErrorKind::InvalidArgument, "series inverse needs a unit linear coefficient");
    const auto c_inv = inverse_elem(g[1]);
    const auto monic = g.scale(c_inv);
    const auto lin = PowerSeries<R>::monomial(g.ring(), g.D(), 1, c_inv);
    return monic.reversion().compose(lin);
}

ParamRing with_base(const ParamRing& R, const WittRing& base) {
    std::vector<std::string> names;
    for (int i = 0; i < R.nvars(); ++i) names.push_back(R.name(i));
    return ParamRing(base, names, R.total_cap(), R.var_caps());
}

bool prime_coefficients(const FormalGroupLaw<ParamRing>& G) {
    for (int a = 0; a <= G.D; ++a)
        for (int b = 0; a + b <= G.D; ++b)
            for (const auto& [key, c] : G.F.at(a, b).terms())
                for (std::size_t t = 1; t < c.rep().size(); ++t)
                    if (c.rep()[t] != 0) return false;
    return true;
}

int min_precision(const Padic& a, int cap) {
    if (a.exact_zero()) return cap;
    return std::min(cap, a.abs_precision());
}

int min_precision(const TruncPoly<PadicRing>& a, int cap) {
    for (const auto& [key, c] : a.terms()) cap = min_precision(c, cap);
    return cap;
}

}  // namespace

WittElem embed_prime(const WittElem& a, const WittRing& target) {
    require(a.ring().d() == 1, ErrorKind::InvalidArgument, "embed_prime needs a W(F_p) element");
    require(a.ring().p() == target.p() && target.n() <= a.ring().n(), ErrorKind::UnsupportedMap,
            "embed_prime: incompatible target");
    return target.from_int(a.rep()[0]);
}

WittElem frobenius_twist(const WittElem& a, int e) { return frobenius_pow(a, mod_pos(e, a.ring().d())); }

PowerSeries<WittRing> frobenius_twist(const PowerSeries<WittRing>& f, int e) {
    return f.map_coeffs(f.ring(), [e](const WittElem& a) { return frobenius_twist(a, e); });
}

FormalGroupLaw<WittRing> frobenius_twist(const FormalGroupLaw<WittRing>& G, int e) {
    return {G.ring, G.p, G.D, G.F.map_coeffs(G.ring, [e](const WittElem& a) { return frobenius_twist(a, e); })};
}

FormalGroupLaw<WittRing> residue_gamma(int p, int n, int D, const FiniteField& k) {
    require(k.p() == p, ErrorKind::InvalidArgument, "residue field characteristic differs from p");
    const auto G = lubin_tate_fgl(p, n, D, 1);
    const WittRing Fp(FiniteField::prime(p), 1);
    const auto G0 = specialize(G, std::vector<WittElem>(n - 1, Fp.zero()));
    const WittRing K(k, 1);
    return {K, p, D, G0.F.map_coeffs(K, [&](const WittElem& a) { return embed_prime(a, K); })};
}

FormalGroupLaw<WittRing> residue_law(const Deformation& d) {
    const WittRing K = d.G.ring.base().residue_field();
    return {K, d.G.p, d.G.D,
            d.G.F.map_coeffs(K, [](const TruncPoly<WittRing>& c) { return c.constant_term().reduce(1); })};
}

FormalGroupLaw<WittRing> gamma_of(const Deformation& d) {
    return residue_gamma(d.G.p, d.n, d.G.D, d.G.ring.base().field());
}

bool validate(const Deformation& d) {
    return iso_check(frobenius_twist(gamma_of(d), d.i_frob), residue_law(d), d.alpha);
}

Deformation universal_deformation(int p, int n, int D, int m) {
    return universal_deformation(p, n, D, m, FiniteField::standard(p, n));
}

Deformation universal_deformation(int p, int n, int D, int m, const FiniteField& k) {
    require(k.p() == p, ErrorKind::InvalidArgument, "residue field characteristic differs from p");
    const auto G0 = lubin_tate_fgl(p, n, D, m);
    const WittRing W(k, m);
    const ParamRing R = with_base(G0.ring, W);
    FormalGroupLaw<ParamRing> G{R, p, D, G0.F.map_coeffs(R, [&](const TruncPoly<WittRing>& c) {
                                    return c.map_coeffs(R, [&](const WittElem& a) { return embed_prime(a, W); });
                                })};
    return {G, n, 0, PowerSeries<WittRing>::x(W.residue_field(), D)};
}

FormalGroupLaw<ParamRing> pullback_universal(const Deformation& universal, const ParamRing& target,
                                             const std::vector<TruncPoly<WittRing>>& images) {
    const ParamRing& S = universal.G.ring;
    require(static_cast<int>(images.size()) == S.nvars(), ErrorKind::InvalidArgument,
            "pullback needs one image per parameter");
    const int m = target.base().n();
    require(m <= S.base().n() && target.base().field() == S.base().field(), ErrorKind::UnsupportedMap,
            "pullback target must be a quotient of the universal base");
    std::vector<std::vector<TruncPoly<WittRing>>> powers(images.size());
    auto power = [&](std::size_t i, int e) -> const TruncPoly<WittRing>& {
        auto& pw = powers[i];
        if (pw.empty()) pw.push_back(target.one());
        while (static_cast<int>(pw.size()) <= e) pw.push_back(pw.back() * images[i]);
        return pw[e];
    };
    auto map = [&](const TruncPoly<WittRing>& c) {
        TruncPoly<WittRing> acc = target.zero();
        for (const auto& [key, a] : c.terms()) {
            TruncPoly<WittRing> t = target.constant(a.reduce(m));
            for (int i = 0; i < S.nvars(); ++i) {
                const int e = ParamRing::exponent(key, i);
                if (e > 0) t = t * power(i, e);
            }
            acc += t;
        }
        return acc;
    };
    return {target, universal.G.p, universal.G.D, universal.G.F.map_coeffs(target, map)};
}

Classification classify(const Deformation& d) {
    const ParamRing& R = d.G.ring;
    const WittRing& W = R.base();
    try {
        auto params = extract_lt_params(d.G, d.n);
        return {std::move(params), PowerSeries<ParamRing>::x(R, d.G.D), d.G, W.n()};
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotNormalForm) throw;
    }
    if (!prime_coefficients(d.G))
        fail(ErrorKind::NormalizationObstructed, "coordinate change needs division by p outside W(F_p)");

    // Lift to the p-adic parameter ring, normalize there, and keep the digits that survive.
    const int p = d.G.p;
    const int m = W.n();
    const PadicRing Qp(p, std::min(PadicRing::max_digits(p), m + guard_digits(p, d.n, d.G.D)));
    std::vector<std::string> names;
    for (int i = 0; i < R.nvars(); ++i) names.push_back(R.name(i));
    const ParamPadicRing PP(Qp, names, R.total_cap(), R.var_caps());
    const WittRing Wp(FiniteField::prime(p), m);
    auto lift = [&](const TruncPoly<WittRing>& c) {
        return c.map_coeffs(PP, [&](const WittElem& a) { return Qp.from_witt(Wp.from_int(a.rep()[0])); });
    };
    const FormalGroupLaw<ParamPadicRing> Gp{PP, p, d.G.D, d.G.F.map_coeffs(PP, lift)};
    const auto norm = normalize_coordinate(Gp, d.n);
    const auto params_p = extract_lt_params(norm.law, d.n);

    int prec = m;
    for (const auto& c : norm.h.coeffs()) prec = min_precision(c, prec);
    for (const auto& c : params_p) prec = min_precision(c, prec);
    for (int a = 0; a <= d.G.D; ++a)
        for (int b = 0; a + b <= d.G.D; ++b) prec = min_precision(norm.law.F.at(a, b), prec);
    if (prec < 1) fail(ErrorKind::NormalizationObstructed, "normalization exhausted the p-adic precision");

    const WittRing Wout(W.field(), prec);
    const WittRing Wpo(FiniteField::prime(p), prec);
    const ParamRing Rout = with_base(R, Wout);
    auto down = [&](const TruncPoly<PadicRing>& c) {
        return c.map_coeffs(Rout, [&](const Padic& a) { return embed_prime(a.to_witt(Wpo), Wout); });
    };
    Classification out{{}, norm.h.map_coeffs(Rout, down), {Rout, p, d.G.D, norm.law.F.map_coeffs(Rout, down)}, prec};
    for (const auto& c : params_p) out.params.push_back(down(c));
    return out;
}

// ---- augmented deformations ----

LambdaMap identity_lambda_map(const SeriesRing& Lambda) { return {0, Lambda.monomial(1)}; }

LaurentSeries apply_lambda_map(const LambdaMap& j, const LaurentSeries& f) {
    return substitute(f, j.u_image, j.frob);
}

LambdaMap compose_lambda_maps(const LambdaMap& j, const LambdaMap& j2) {
    return {j.frob + j2.frob, apply_lambda_map(j2, j.u_image)};
}

bool validate(const LambdaMap& j) { return is_topologically_nilpotent(j.u_image.reduce(1)); }

AugmentedDeformation augmented_universal(int p, int n, int D, int m, const SeriesRing& residue_window) {
    require(n == 2 || n == 3, ErrorKind::InvalidArgument, "augmented deformations are supported for n = 2, 3");
    require(residue_window.p() == p, ErrorKind::InvalidArgument, "window characteristic differs from p");
    const SeriesRing Lambda = residue_window.with_precision(m);
    const auto G0 = lubin_tate_fgl(p, n, D, m);
    std::vector<std::string> names;
    for (int i = 1; i + 1 < n; ++i) names.push_back("u" + std::to_string(i));
    const AugRing A(Lambda, names, G0.ring.total_cap());
    const int last = n - 2;  // index of u_{n-1}
    const auto low_mask = (AugRing::Key{1} << (8 * last)) - 1;
    auto map = [&](const TruncPoly<WittRing>& c) {
        TruncPoly<SeriesRing> acc = A.zero();
        for (const auto& [key, a] : c.terms()) {
            const int e = ParamRing::exponent(key, last);
            acc += A.term(key & low_mask, Lambda.monomial(e, embed_prime(a, Lambda.coeff())));
        }
        return acc;
    };
    FormalGroupLaw<AugRing> G{A, p, D, G0.F.map_coeffs(A, map)};
    return {G, n, identity_lambda_map(Lambda), PowerSeries<SeriesRing>::x(Lambda.residue(), D)};
}

FormalGroupLaw<SeriesRing> residue_law(const AugmentedDeformation& d) {
    const SeriesRing K = d.G.ring.base().residue();
    return {K, d.G.p, d.G.D,
            d.G.F.map_coeffs(K, [](const TruncPoly<SeriesRing>& c) { return c.constant_term().reduce(1); })};
}

FormalGroupLaw<SeriesRing> residue_h(const AugmentedDeformation& d) {
    const SeriesRing K = d.G.ring.base().residue();
    return residue_law(augmented_universal(d.G.p, d.n, d.G.D, 1, K));
}

bool validate(const AugmentedDeformation& d) {
    if (!validate(d.j)) return false;
    const LambdaMap jbar{d.j.frob, d.j.u_image.reduce(1)};
    const auto H = residue_h(d);
    const FormalGroupLaw<SeriesRing> Hj{H.ring, H.p, H.D,
                                        H.F.map_coeffs(H.ring, [&](const LaurentSeries& c) { return apply_lambda_map(jbar, c); })};
    return iso_check(Hj, residue_law(d), d.alpha);
}

AugmentedDeformation base_change(const AugmentedDeformation& d, const LambdaMap& j2) {
    require(validate(j2), ErrorKind::UnsupportedMap, "the u-image is not a topologically nilpotent residue unit");
    const AugRing& A = d.G.ring;
    auto map = [&](const TruncPoly<SeriesRing>& c) {
        return c.map_coeffs(A, [&](const LaurentSeries& a) { return apply_lambda_map(j2, a); });
    };
    const LambdaMap j2bar{j2.frob, j2.u_image.reduce(1)};
    return {{A, d.G.p, d.G.D, d.G.F.map_coeffs(A, map)},
            d.n,
            compose_lambda_maps(d.j, j2),
            d.alpha.map_coeffs(d.alpha.ring(), [&](const LaurentSeries& a) { return apply_lambda_map(j2bar, a); })};
}

AugmentedClassification classify_augmented(const AugmentedDeformation& d) {
    const auto norm = normalize_coordinate(d.G, d.n);
    auto params = extract_lt_params(norm.law, d.n);
    const auto& last = params.back();
    for (const auto& [key, c] : last.terms())
        if (key != 0 && !c.is_zero())
            fail(ErrorKind::UnsupportedMap, "the image of u involves the formal parameters");
    AugmentedClassification out{{}, {d.j.frob, last.constant_term()}};
    out.params.assign(params.begin(), params.end() - 1);
    return out;
}

// ---- stabilizer group ----

StabilizerElement stabilizer_identity(const FormalGroupLaw<WittRing>& gamma) { return {0, gamma.x()}; }

bool validate(const StabilizerElement& s, const FormalGroupLaw<WittRing>& gamma) {
    return iso_check(gamma, frobenius_twist(gamma, s.tau), s.g);
}

StabilizerElement stabilizer_compose(const StabilizerElement& a, const StabilizerElement& b) {
    const int f = a.g.ring().d();
    return {mod_pos(a.tau + b.tau, f), a.g.compose(frobenius_twist(b.g, a.tau))};
}

StabilizerElement stabilizer_inverse(const StabilizerElement& s) {
    const int f = s.g.ring().d();
    return {mod_pos(-s.tau, f), frobenius_twist(series_inverse(s.g), -s.tau)};
}

StabilizerElement random_stabilizer(const FormalGroupLaw<WittRing>& gamma, int n, std::mt19937_64& rng) {
    const WittRing& K = gamma.ring;
    const int f = K.d();
    require(f % n == 0, ErrorKind::InvalidArgument, "the residue field must contain F_{p^n}");
    std::uniform_int_distribution<i64> digit(0, K.p() - 1);
    // Rejection sampling for c in F_{p^n}, i.e. c^{p^n} = c.
    auto random_fpn = [&](bool nonzero) {
        for (;;) {
            std::vector<i64> rep(f);
            for (auto& r : rep) r = digit(rng);
            WittElem c = K.from_rep(rep);
            if (!(frobenius_pow(c, n % f) == c)) continue;
            if (nonzero && c.is_zero()) continue;
            return c;
        }
    };
    PowerSeries<WittRing> g(K, gamma.D);
    i64 pj = 1;
    for (int j = 0; pj <= gamma.D; ++j, pj *= K.p()) {
        const auto c = random_fpn(j == 0);
        g = formal_sum(gamma, g, PowerSeries<WittRing>::monomial(K, gamma.D, static_cast<int>(pj), c));
    }
    std::uniform_int_distribution<int> t(0, f - 1);
    return {t(rng), g};
}

Deformation stabilizer_act(const StabilizerElement& s, const Deformation& d) {
    const int f = d.G.ring.base().d();
    const int i_new = mod_pos(d.i_frob + s.tau, f);
    const auto ginv = frobenius_twist(series_inverse(s.g), -i_new);
    return {d.G, d.n, i_new, d.alpha.compose(ginv)};
}

// ---- cooperation points ----

std::string to_string(CoopReason r) {
    switch (r) {
        case CoopReason::Ok: return "ok";
        case CoopReason::BadStructureMap: return "bad_structure_map";
        case CoopReason::NonUnitLeading: return "non_unit_leading";
        case CoopReason::HeightMismatch: return "height_mismatch";
        case CoopReason::NotIsomorphism: return "not_isomorphism";
    }
    return "unknown";
}

CoopCheck validate_coop_point(const CoopPoint& pt, const Deformation& left, const FormalGroupLaw<WittRing>& right) {
    const auto L = residue_law(left);
    if (!(right.ring == L.ring) || right.D != L.D || right.p != L.p) return {false, CoopReason::BadStructureMap};
    if (!(pt.gamma.ring() == L.ring) || pt.gamma.D() != L.D) return {false, CoopReason::BadStructureMap};
    if (!pt.gamma[0].is_zero() || !unit_elem(pt.gamma[1])) return {false, CoopReason::NonUnitLeading};
    const auto Lj = frobenius_twist(L, pt.j_frob);
    if (iso_check(Lj, right, pt.gamma)) return {true, CoopReason::Ok};
    auto height_or = [](const FormalGroupLaw<WittRing>& G) {
        try {
            return height(G);
        } catch (const Error&) {
            return -1;
        }
    };
    const int hl = height_or(Lj);
    const int hr = height_or(right);
    if (hl != hr) return {false, CoopReason::HeightMismatch};
    return {false, CoopReason::NotIsomorphism};
}

}  // namespace ltk
