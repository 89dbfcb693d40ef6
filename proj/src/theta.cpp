#include "ltk/theta.hpp"

#include <sstream>

namespace ltk {

namespace {

i64 binomial(int n, int k) {
    i64 r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// sum_{i=1}^{p-1} (C(p, i) / p) f^i g^{p-i}
LaurentSeries sum_correction(const LaurentSeries& f, const LaurentSeries& g, int p) {
    const SeriesRing& R = f.ring();
    LaurentSeries acc = R.zero();
    for (int i = 1; i < p; ++i)
        acc += (ls_pow(f, i) * ls_pow(g, p - i)).scale(R.coeff().from_int(binomial(p, i) / p));
    return acc;
}

void record(ThetaReport& rep, const std::string& name, const LaurentSeries& lhs, const LaurentSeries& rhs) {
    const LaurentSeries diff = lhs - rhs;
    if (diff.is_zero()) return;
    const auto terms = diff.terms();
    std::ostringstream os;
    os << name << ": first mismatch at degree " << terms.begin()->first << ", coefficient "
       << terms.begin()->second.to_string();
    rep.ok = false;
    rep.mismatches.push_back(os.str());
}

int vx_or_inf(const LaurentSeries& f) { return f.is_zero() ? kInfinity : v_x(f); }

}  // namespace

PipeEndo pipe_endo(const LaurentSeries& y, int sigma) {
    if (!is_unit(y)) fail(ErrorKind::NotUnit, "the image of x must reduce to a nonzero series mod p");
    if (!is_topologically_nilpotent(y))
        fail(ErrorKind::NotTopologicallyNilpotent, "the image of x must reduce into x k[[x]]");
    return {y.ring(), y, sigma};
}

LaurentSeries pipe_apply(const PipeEndo& e, const LaurentSeries& f) {
    require(f.ring() == e.ring, ErrorKind::RingMismatch, "pipe_apply: ring mismatch");
    return substitute(f, e.y, e.sigma);
}

bool is_frobenius_lift(const PipeEndo& e) {
    const int d = e.ring.d();
    if (((e.sigma - 1) % d + d) % d != 0) return false;
    return (e.y - e.ring.monomial(e.ring.p())).reduce(1).is_zero();
}

ThetaStructure theta_structure(const PipeEndo& e) {
    if (!is_frobenius_lift(e)) fail(ErrorKind::NotFrobeniusLift, "y is not x^p mod p");
    if (e.ring.n() < 2) fail(ErrorKind::GuardDigitMissing, "theta needs one guard p-digit above the output");
    return {e, e.ring.n() - 1};
}

ThetaStructure standard_theta(const SeriesRing& out_ring, bool plus_p) {
    const SeriesRing R = out_ring.with_precision(out_ring.n() + 1);
    LaurentSeries y = R.monomial(R.p());
    if (plus_p) y += R.from_int(R.p());
    return theta_structure(pipe_endo(y));
}

SeriesRing theta_output_ring(const ThetaStructure& t) { return t.endo.ring.with_precision(t.n); }

LaurentSeries theta_of(const ThetaStructure& t, const LaurentSeries& f) {
    if (!(f.ring() == t.endo.ring)) {
        if (f.ring().n() == t.n) fail(ErrorKind::GuardDigitMissing, "theta input must carry the guard digit");
        fail(ErrorKind::RingMismatch, "theta_of: ring mismatch");
    }
    const LaurentSeries num = pipe_apply(t.endo, f) - ls_pow(f, t.endo.ring.p());
    if (!num.reduce(1).is_zero()) fail(ErrorKind::NotFrobeniusLift, "psi(f) - f^p is not divisible by p");
    return num.div_p();
}

WittElem theta_of(const WittElem& a) {
    require(a.ring().n() >= 2, ErrorKind::GuardDigitMissing, "theta on W(k) needs a guard digit");
    return (frobenius(a) - a.pow(a.ring().p())).div_p();
}

i64 theta_integer(int p, i64 m) {
    const __int128 mp = [&] {
        __int128 r = 1;
        for (int i = 0; i < p; ++i) r *= m;
        return r;
    }();
    const __int128 num = static_cast<__int128>(m) - mp;
    require(num % p == 0, ErrorKind::InvalidArgument, "m - m^p not divisible by p");
    const __int128 q = num / p;
    require(q >= INT64_MIN && q <= INT64_MAX, ErrorKind::OutOfRange, "theta_integer overflow");
    return static_cast<i64>(q);
}

ThetaReport theta_axioms_check(const ThetaStructure& t, const LaurentSeries& f, const LaurentSeries& g) {
    const SeriesRing& R = t.endo.ring;
    const int p = R.p();
    ThetaReport rep;
    const auto tf = theta_of(t, f);
    const auto tg = theta_of(t, g);
    const auto fn = f.reduce(t.n);
    const auto gn = g.reduce(t.n);

    record(rep, "sum", theta_of(t, f + g), tf + tg - sum_correction(f, g, p).reduce(t.n));
    const auto pp = theta_output_ring(t).coeff().from_int(p);
    record(rep, "product", theta_of(t, f * g), tf * ls_pow(gn, p) + ls_pow(fn, p) * tg + (tf * tg).scale(pp));
    const SeriesRing out = theta_output_ring(t);
    record(rep, "theta(0)", theta_of(t, R.zero()), out.zero());
    record(rep, "theta(1)", theta_of(t, R.one()), out.zero());
    return rep;
}

bool theta_descent_check(const ThetaStructure& t, const LaurentSeries& f, const LaurentSeries& g) {
    const int p = t.endo.ring.p();
    const auto shifted = f + g.scale(t.endo.ring.coeff().from_int(static_cast<i64>(p) * p));
    return (theta_of(t, shifted) - theta_of(t, f)).reduce(1).is_zero();
}

// ---- obstruction ----

void validate_candidate(const CandidateAut& c) {
    require(c.a.is_unit(), ErrorKind::NotUnit, "candidate: a must be a unit");
    require(c.g.is_zero() || v_x(c.g) >= 2, ErrorKind::InvalidArgument, "candidate: v_x(g) must be >= 2");
    for (const auto& [k, v] : c.h.terms())
        require(k <= 0, ErrorKind::InvalidArgument, "candidate: h must have support in degrees <= 0");
}

LaurentSeries candidate_series(const CandidateAut& c) {
    const SeriesRing& R = c.g.ring();
    return R.monomial(1, c.a) + c.g + c.h.scale(R.coeff().from_int(R.p()));
}

SeriesRing obstruction_ring(int p, const FiniteField& k) {
    // Negative powers of y = x^p + p reach x^{-6p - p}; g reaches 12p.
    return SeriesRing(WittRing(k, 1), -7 * p - 2, 12 * p + 4);
}

CandidateAut random_candidate(const ThetaStructure& t, std::mt19937_64& rng, bool h_zero) {
    const SeriesRing& R = t.endo.ring;
    const WittRing& W = R.coeff();
    const int p = R.p();
    std::uniform_int_distribution<i64> digit(0, W.pn() - 1);
    auto random_elem = [&](bool multiple_of_p) {
        std::vector<i64> rep(W.d());
        for (auto& r : rep) r = multiple_of_p ? (digit(rng) * p) % W.pn() : digit(rng);
        return W.from_rep(rep);
    };
    WittElem a = random_elem(false);
    while (!a.is_unit()) a = random_elem(false);
    std::map<int, WittElem> g, h;
    for (int k = 2; k <= 12; ++k) g.insert_or_assign(k, random_elem(false));
    for (int k = -6; k <= 0; ++k) h.insert_or_assign(k, random_elem(h_zero));
    return {a, R.from_terms(g), R.from_terms(h)};
}

LaurentSeries obstruction_value(const ThetaStructure& t, const CandidateAut& c) {
    validate_candidate(c);
    require(t.n == 1, ErrorKind::InvalidArgument, "the obstruction lives over W_2");
    return theta_of(t, candidate_series(c));
}

bool ObstructionCertificate::ok() const {
    if (!decomposition_matches || !bounds_hold) return false;
    if (h_zero_mod_p && !constant_is_a_p) return false;
    if (h_negative_support && !negative_part_nonzero) return false;
    return true;
}

ObstructionCertificate obstruction_certificate(const ThetaStructure& t, const CandidateAut& c) {
    const LaurentSeries value = obstruction_value(t, c);
    const SeriesRing& R = t.endo.ring;
    const SeriesRing k = theta_output_ring(t);
    const int p = R.p();

    std::vector<CertificateTerm> terms;
    auto add = [&](std::string name, LaurentSeries v, int bound, int alt) {
        const int vx = vx_or_inf(v);
        terms.push_back({std::move(name), std::move(v), vx, bound, bound < 0 || vx >= bound, alt});
    };
    const WittElem ap = c.a.pow(p).reduce(1);
    add("a^p", k.constant(ap), -1, -1);
    // The expansion puts theta(a) at x^p; the valuation line reads v_x = 1.
    add("theta(a)x^p", k.monomial(p, theta_of(c.a)), -1, 1);
    add("theta(g)", theta_of(t, c.g), 2, -1);
    const LaurentSeries ax = R.monomial(1, c.a);
    add("cross", -sum_correction(ax, c.g, p).reduce(1), p + 1, -1);
    const LaurentSeries hbar = c.h.reduce(1);
    add("theta(p)h^p", ls_pow(hbar, p).scale(k.coeff().from_int(theta_integer(p, p))), -1, -1);

    LaurentSeries total = k.zero();
    for (const auto& term : terms) total += term.value;
    bool bounds = true;
    for (const auto& term : terms) bounds = bounds && term.holds;

    ObstructionCertificate cert{value, terms, hbar.is_zero(), !hbar.negative_part().is_zero(),
                                (total - value).is_zero(), bounds, false, !value.negative_part().is_zero(),
                                !value.is_zero()};
    cert.constant_is_a_p = !value.is_zero() && v_x(value) == 0 && value.coeff(0) == ap;
    return cert;
}

}  // namespace ltk
