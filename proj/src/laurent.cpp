#include "ltk/laurent.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace ltk {

namespace {

// Dense Laurent polynomial used by the kernels: degrees [lo, lo + len).
struct RawPoly {
    int lo = 0;
    int len = 0;
    std::vector<i64> c;  // len * d

    int hi() const { return lo + len; }
};

bool slot_zero(const std::vector<i64>& c, int idx, int d) {
    for (int t = 0; t < d; ++t)
        if (c[static_cast<std::size_t>(idx) * d + t] != 0) return false;
    return true;
}

int raw_min_degree(const RawPoly& a, int d) {
    for (int i = 0; i < a.len; ++i)
        if (!slot_zero(a.c, i, d)) return a.lo + i;
    return kInfinity;
}

// Leading zeros are dropped; the top stays at x_prec.
RawPoly raw_from_series(const LaurentSeries& f) {
    const auto& data = f.data();
    const std::size_t d = static_cast<std::size_t>(f.ring().d());
    const auto first = std::find_if(data.begin(), data.end(), [](i64 c) { return c != 0; });
    const int skip = static_cast<int>(static_cast<std::size_t>(first - data.begin()) / d);
    RawPoly r;
    r.lo = f.lo() + skip;
    r.len = f.x_prec() - r.lo;
    r.c.assign(data.begin() + static_cast<std::ptrdiff_t>(skip * d), data.end());
    return r;
}

// Product truncated to degrees < cap.
RawPoly raw_mul(const WittRing& ring, const RawPoly& a, const RawPoly& b, int cap) {
    const int d = ring.d();
    RawPoly out;
    out.lo = a.lo + b.lo;
    out.len = std::max(0, std::min(cap, a.hi() + b.hi() - 1) - out.lo);
    out.c.assign(static_cast<std::size_t>(out.len) * d, 0);
    if (d == 1 && ring.pn() < (i64{1} << 31)) {
        // Prime field, small modulus: products fit in 64 bits.
        const i64 m = ring.pn();
        std::vector<int> nzb;
        for (int j = 0; j < b.len; ++j)
            if (b.c[j] != 0) nzb.push_back(j);
        i64* o = out.c.data();
        for (int i = 0; i < a.len; ++i) {
            const i64 ai = a.c[i];
            if (ai == 0) continue;
            const int lim = out.len - i;
            for (int j : nzb) {
                if (j >= lim) break;
                o[i + j] = (o[i + j] + ai * b.c[j]) % m;
            }
        }
        return out;
    }
    for (int i = 0; i < a.len; ++i) {
        if (slot_zero(a.c, i, d)) continue;
        std::span<const i64> ai(a.c.data() + static_cast<std::size_t>(i) * d, d);
        const int jmax = std::min(b.len, out.len - i);
        for (int j = 0; j < jmax; ++j) {
            if (slot_zero(b.c, j, d)) continue;
            std::span<const i64> bj(b.c.data() + static_cast<std::size_t>(j) * d, d);
            std::span<i64> acc(out.c.data() + static_cast<std::size_t>(i + j) * d, d);
            ring.mul_acc(acc, ai, bj);
        }
    }
    return out;
}

RawPoly raw_sub(const WittRing& ring, const RawPoly& a, const RawPoly& b) {
    const int d = ring.d();
    RawPoly out;
    out.lo = std::min(a.lo, b.lo);
    out.len = std::max(a.hi(), b.hi()) - out.lo;
    out.c.assign(static_cast<std::size_t>(out.len) * d, 0);
    for (int i = 0; i < a.len; ++i)
        ring.add_into(std::span<i64>(out.c.data() + static_cast<std::size_t>(a.lo + i - out.lo) * d, d),
                      std::span<const i64>(a.c.data() + static_cast<std::size_t>(i) * d, d));
    for (int i = 0; i < b.len; ++i)
        ring.sub_into(std::span<i64>(out.c.data() + static_cast<std::size_t>(b.lo + i - out.lo) * d, d),
                      std::span<const i64>(b.c.data() + static_cast<std::size_t>(i) * d, d));
    return out;
}

// Restrict to [ring.lo, prec); WindowOverflow if a nonzero coefficient sits below the window.
LaurentSeries raw_to_series(const SeriesRing& ring, const RawPoly& a, int prec) {
    const int d = ring.d();
    prec = std::min(prec, ring.hi());
    for (int i = 0; i < a.len; ++i) {
        const int deg = a.lo + i;
        if (deg >= ring.lo() || deg >= prec) break;
        if (!slot_zero(a.c, i, d))
            fail(ErrorKind::WindowOverflow,
                 "degree " + std::to_string(deg) + " below window " + std::to_string(ring.lo()));
    }
    const int out_prec = std::max(prec, ring.lo());
    std::vector<i64> data(static_cast<std::size_t>(out_prec - ring.lo()) * d, 0);
    for (int deg = ring.lo(); deg < out_prec; ++deg) {
        const int i = deg - a.lo;
        if (i < 0 || i >= a.len) continue;
        std::copy_n(a.c.begin() + static_cast<std::ptrdiff_t>(i) * d, d,
                    data.begin() + static_cast<std::ptrdiff_t>(deg - ring.lo()) * d);
    }
    return LaurentSeries(ring, out_prec, std::move(data));
}

int sat_add(int a, int b) {
    if (a == kInfinity || b == kInfinity) return kInfinity;
    return a + b;
}

}  // namespace

SeriesRing::SeriesRing(WittRing coeff, int lo, int hi) : coeff_(std::move(coeff)), lo_(lo), hi_(hi) {
    require(lo <= 0 && hi > 0, ErrorKind::InvalidArgument, "series window needs lo <= 0 < hi");
}

LaurentSeries SeriesRing::zero() const {
    return LaurentSeries(*this, hi_, std::vector<i64>(static_cast<std::size_t>(hi_ - lo_) * d(), 0));
}

LaurentSeries SeriesRing::one() const { return constant(coeff_.one()); }

LaurentSeries SeriesRing::from_int(i64 v) const { return constant(coeff_.from_int(v)); }

LaurentSeries SeriesRing::constant(const WittElem& c) const { return monomial(0, c); }

LaurentSeries SeriesRing::monomial(int k) const { return monomial(k, coeff_.one()); }

LaurentSeries SeriesRing::monomial(int k, const WittElem& c) const {
    std::map<int, WittElem> t;
    t.emplace(k, c);
    return from_terms(t, hi_);
}

LaurentSeries SeriesRing::from_terms(const std::map<int, WittElem>& terms, int x_prec) const {
    require(x_prec <= hi_ && x_prec >= lo_, ErrorKind::InvalidArgument, "x_prec outside window");
    std::vector<i64> data(static_cast<std::size_t>(x_prec - lo_) * d(), 0);
    for (const auto& [k, c] : terms) {
        require(c.ring() == coeff_, ErrorKind::RingMismatch, "coefficient ring mismatch");
        if (c.is_zero() || k >= x_prec) continue;
        if (k < lo_) fail(ErrorKind::WindowOverflow, "term degree below window");
        std::copy(c.rep().begin(), c.rep().end(), data.begin() + static_cast<std::ptrdiff_t>(k - lo_) * d());
    }
    return LaurentSeries(*this, x_prec, std::move(data));
}

LaurentSeries::LaurentSeries(SeriesRing ring, int x_prec, std::vector<i64> data)
    : ring_(std::move(ring)), x_prec_(x_prec), data_(std::move(data)) {
    require(x_prec_ >= ring_.lo() && x_prec_ <= ring_.hi(), ErrorKind::InvalidArgument, "bad x_prec");
    data_.resize(static_cast<std::size_t>(x_prec_ - ring_.lo()) * ring_.d(), 0);
}

std::span<const i64> LaurentSeries::slot(int k) const {
    return std::span<const i64>(data_.data() + static_cast<std::size_t>(k - lo()) * ring_.d(), ring_.d());
}

WittElem LaurentSeries::coeff(int k) const {
    if (k < lo()) return ring_.coeff().zero();
    if (k >= x_prec_) fail(ErrorKind::PrecisionInsufficient, "coefficient beyond x-precision");
    auto s = slot(k);
    return ring_.coeff().from_rep(std::vector<i64>(s.begin(), s.end()));
}

bool LaurentSeries::coeff_is_zero(int k) const {
    if (k < lo()) return true;
    if (k >= x_prec_) fail(ErrorKind::PrecisionInsufficient, "coefficient beyond x-precision");
    return slot_zero(data_, k - lo(), ring_.d());
}

bool LaurentSeries::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](i64 c) { return c == 0; });
}

int LaurentSeries::valuation() const {
    const auto it = std::find_if(data_.begin(), data_.end(), [](i64 c) { return c != 0; });
    if (it == data_.end()) return kInfinity;
    return lo() + static_cast<int>(static_cast<std::size_t>(it - data_.begin()) / ring_.d());
}

int LaurentSeries::unit_degree() const {
    const int p = ring_.p();
    for (int k = lo(); k < x_prec_; ++k) {
        auto s = slot(k);
        if (std::any_of(s.begin(), s.end(), [p](i64 c) { return c % p != 0; })) return k;
    }
    return kInfinity;
}

std::map<int, WittElem> LaurentSeries::terms() const {
    std::map<int, WittElem> out;
    for (int k = lo(); k < x_prec_; ++k)
        if (!coeff_is_zero(k)) out.emplace(k, coeff(k));
    return out;
}

LaurentSeries LaurentSeries::with_x_prec(int prec) const {
    prec = std::clamp(prec, lo(), x_prec_);
    std::vector<i64> data(data_.begin(), data_.begin() + static_cast<std::ptrdiff_t>(prec - lo()) * ring_.d());
    return LaurentSeries(ring_, prec, std::move(data));
}

LaurentSeries LaurentSeries::reduce(int m) const {
    require(m >= 1 && m <= ring_.n(), ErrorKind::InvalidArgument, "reduce: bad precision");
    SeriesRing r = ring_.with_precision(m);
    std::vector<i64> data = data_;
    const i64 pm = r.coeff().pn();
    for (auto& c : data) c %= pm;
    return LaurentSeries(r, x_prec_, std::move(data));
}

LaurentSeries LaurentSeries::lift(int m) const {
    require(m >= ring_.n(), ErrorKind::InvalidArgument, "lift: bad precision");
    return LaurentSeries(ring_.with_precision(m), x_prec_, data_);
}

LaurentSeries LaurentSeries::div_p() const {
    require(ring_.n() >= 2, ErrorKind::GuardDigitMissing, "div_p needs p-precision >= 2");
    const int p = ring_.p();
    std::vector<i64> data = data_;
    for (auto& c : data) {
        if (c % p != 0) fail(ErrorKind::InvalidArgument, "div_p: coefficient not divisible by p");
        c /= p;
    }
    return LaurentSeries(ring_.with_precision(ring_.n() - 1), x_prec_, std::move(data));
}

LaurentSeries LaurentSeries::shift(int k) const {
    RawPoly a = raw_from_series(*this);
    a.lo += k;
    return raw_to_series(ring_, a, x_prec_ + k);
}

LaurentSeries LaurentSeries::scale(const WittElem& c) const {
    require(c.ring() == ring_.coeff(), ErrorKind::RingMismatch, "scale: coefficient ring mismatch");
    std::vector<i64> data = data_;
    const int d = ring_.d();
    for (int i = 0; i < x_prec_ - lo(); ++i) {
        std::span<i64> s(data.data() + static_cast<std::size_t>(i) * d, d);
        std::vector<i64> tmp(d);
        ring_.coeff().mul(tmp, std::span<const i64>(s.data(), d), c.rep());
        std::copy(tmp.begin(), tmp.end(), s.begin());
    }
    return LaurentSeries(ring_, x_prec_, std::move(data));
}

LaurentSeries LaurentSeries::frobenius_coeffs(int e) const {
    if (ring_.d() == 1 || mod_reduce(e, ring_.d()) == 0) return *this;
    std::map<int, WittElem> t;
    for (auto& [k, c] : terms()) t.emplace(k, frobenius_pow(c, e));
    return ring_.from_terms(t, x_prec_);
}

LaurentSeries LaurentSeries::negative_part() const {
    std::vector<i64> data = data_;
    for (int k = std::max(0, lo()); k < x_prec_; ++k)
        std::fill_n(data.begin() + static_cast<std::ptrdiff_t>(k - lo()) * ring_.d(), ring_.d(), 0);
    return LaurentSeries(ring_, x_prec_, std::move(data));
}

void LaurentSeries::check_same(const LaurentSeries& o) const {
    if (!(ring_ == o.ring_)) fail(ErrorKind::RingMismatch, "series from different rings");
}

LaurentSeries LaurentSeries::operator-() const {
    std::vector<i64> data = data_;
    const i64 m = ring_.coeff().pn();
    for (auto& c : data) c = c == 0 ? 0 : m - c;
    return LaurentSeries(ring_, x_prec_, std::move(data));
}

LaurentSeries& LaurentSeries::operator+=(const LaurentSeries& o) {
    check_same(o);
    if (o.x_prec_ < x_prec_) *this = with_x_prec(o.x_prec_);
    ring_.coeff().add_into(data_, std::span<const i64>(o.data_.data(), data_.size()));
    return *this;
}

LaurentSeries& LaurentSeries::operator-=(const LaurentSeries& o) {
    check_same(o);
    if (o.x_prec_ < x_prec_) *this = with_x_prec(o.x_prec_);
    ring_.coeff().sub_into(data_, std::span<const i64>(o.data_.data(), data_.size()));
    return *this;
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    a.check_same(b);
    const int va = a.valuation();
    const int vb = b.valuation();
    // (a + da)(b + db) - ab = da*b + a*db + da*db
    int prec = a.x_prec_ + b.x_prec_;
    prec = std::min(prec, sat_add(a.x_prec_, vb));
    prec = std::min(prec, sat_add(b.x_prec_, va));
    prec = std::min(prec, a.ring_.hi());
    if (va == kInfinity || vb == kInfinity) return a.ring_.zero().with_x_prec(std::max(prec, a.ring_.lo()));
    RawPoly prod = raw_mul(a.ring_.coeff(), raw_from_series(a), raw_from_series(b), prec);
    return raw_to_series(a.ring_, prod, prec);
}

bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
    a.check_same(b);
    const int prec = std::min(a.x_prec_, b.x_prec_);
    const std::size_t n = static_cast<std::size_t>(prec - a.lo()) * a.ring_.d();
    return std::equal(a.data_.begin(), a.data_.begin() + static_cast<std::ptrdiff_t>(n), b.data_.begin());
}

std::string LaurentSeries::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms()) {
        if (!first) os << " + ";
        first = false;
        std::string cs = c.to_string();
        const bool compound = cs.find(" + ") != std::string::npos || cs.find('T') != std::string::npos;
        if (k == 0) {
            os << (compound ? "(" + cs + ")" : cs);
            continue;
        }
        if (!c.is_one()) os << (compound ? "(" + cs + ")" : cs) << "*";
        os << "x";
        if (k != 1) os << "^" << k;
    }
    if (first) os << "0";
    if (x_prec_ < ring_.hi()) os << " + O(x^" << x_prec_ << ")";
    return os.str();
}

int v_x(const LaurentSeries& f) { return f.valuation(); }

bool is_unit(const LaurentSeries& f) {
    if (f.unit_degree() != kInfinity) return true;
    if (f.x_prec() < f.ring().hi())
        fail(ErrorKind::PrecisionInsufficient, "reduction mod p vanishes to the known precision");
    return false;
}

bool is_topologically_nilpotent(const LaurentSeries& f) {
    require(is_unit(f), ErrorKind::NotUnit, "topological nilpotence is classified for units");
    return f.unit_degree() > 0;
}

LaurentSeries ls_invert(const LaurentSeries& f) {
    require(is_unit(f), ErrorKind::NotUnit, "ls_invert of a non-unit");
    const SeriesRing& ring = f.ring();
    const WittRing& cr = ring.coeff();
    const int n = ring.n();
    const int d = ring.d();
    const int ud = f.unit_degree();
    const WittElem lead_inv = f.coeff(ud).inverse();

    // u = lead^-1 x^-ud f = 1 + (p-divisible terms of degree < 0) + (terms of degree > 0)
    RawPoly u = raw_from_series(f);
    u.lo -= ud;
    for (int i = 0; i < u.len; ++i) {
        std::span<i64> s(u.c.data() + static_cast<std::size_t>(i) * d, d);
        std::vector<i64> tmp(d);
        cr.mul(tmp, std::span<const i64>(s.data(), d), lead_inv.rep());
        std::copy(tmp.begin(), tmp.end(), s.begin());
    }
    const int u_min = raw_min_degree(u, d);
    const int neg = std::max(0, -u_min);
    int iterations = 1;
    while ((1 << (iterations - 1)) < n) ++iterations;
    const int target = ring.hi() + ud;
    const int cap = target + 2 * iterations * (n - 1) * neg + 1;

    // Inverse modulo p by the triangular recursion (u = 1 + x k[[x]] mod p).
    const WittRing k = cr.residue_field();
    RawPoly g;
    g.lo = 0;
    g.len = cap;
    g.c.assign(static_cast<std::size_t>(cap) * d, 0);
    g.c[0] = 1;
    {
        auto ucoef = [&](int deg) {
            std::vector<i64> rep(d, 0);
            const int i = deg - u.lo;
            if (i >= 0 && i < u.len) rep.assign(u.c.begin() + static_cast<std::ptrdiff_t>(i) * d,
                                                u.c.begin() + static_cast<std::ptrdiff_t>(i + 1) * d);
            return k.from_rep(rep);
        };
        std::vector<WittElem> uk;
        for (int j = 0; j < cap; ++j) uk.push_back(ucoef(j));
        std::vector<WittElem> gk{k.one()};
        for (int m = 1; m < cap; ++m) {
            WittElem acc = k.zero();
            for (int j = 1; j <= m; ++j)
                if (!uk[j].is_zero() && !gk[m - j].is_zero()) acc += uk[j] * gk[m - j];
            gk.push_back(-acc);
            std::copy(gk[m].rep().begin(), gk[m].rep().end(), g.c.begin() + static_cast<std::ptrdiff_t>(m) * d);
        }
    }
    // Newton: g <- g + g (1 - u g), doubling the p-adic precision each step.
    RawPoly one;
    one.lo = 0;
    one.len = 1;
    one.c.assign(d, 0);
    one.c[0] = 1;
    for (int it = 0; it < iterations; ++it) {
        RawPoly ug = raw_mul(cr, u, g, cap);
        RawPoly err = raw_sub(cr, one, ug);
        RawPoly corr = raw_mul(cr, g, err, cap);
        RawPoly next = raw_sub(cr, g, raw_sub(cr, RawPoly{0, 0, {}}, corr));
        g = std::move(next);
    }
    const int g_min = raw_min_degree(g, d);
    const int m_neg = std::max(0, -g_min);
    int prec = f.x_prec() - 2 * ud - (n - 1) * m_neg;
    // An error delta in f moves f^-1 by sum_k (-delta)^k f^-(k+1); when P + v(f^-1) >= 0
    // the k = 1 term dominates, giving P + v(f^-2).
    if (f.x_prec() + g_min - ud >= 0) {
        const int g2_min = raw_min_degree(raw_mul(cr, g, g, cap), d);
        prec = std::max(prec, f.x_prec() + g2_min - 2 * ud);
    }
    prec = std::min(prec, ring.hi());

    // f^-1 = lead^-1 x^-ud g
    for (int i = 0; i < g.len; ++i) {
        std::span<i64> s(g.c.data() + static_cast<std::size_t>(i) * d, d);
        std::vector<i64> tmp(d);
        cr.mul(tmp, std::span<const i64>(s.data(), d), lead_inv.rep());
        std::copy(tmp.begin(), tmp.end(), s.begin());
    }
    g.lo -= ud;
    if (prec <= ring.lo())
        fail(ErrorKind::PrecisionInsufficient, "inverse has no known coefficients in the window");
    return raw_to_series(ring, g, prec);
}

LaurentSeries ls_pow(const LaurentSeries& f, int m) {
    require(m >= 0, ErrorKind::InvalidArgument, "ls_pow: negative exponent");
    const SeriesRing& ring = f.ring();
    if (m == 0) return ring.one();
    if (m == 1) return f;
    const int d = ring.d();
    RawPoly base = raw_from_series(f);
    const int fmin = raw_min_degree(base, d);
    const int neg = fmin == kInfinity ? 0 : std::max(0, -fmin);
    const int cap = ring.hi() + (m + 1) * neg + 1;
    std::vector<RawPoly> powers;
    std::vector<int> vals;
    RawPoly one;
    one.lo = 0;
    one.len = 1;
    one.c.assign(d, 0);
    one.c[0] = 1;
    powers.push_back(one);
    vals.push_back(0);
    for (int j = 1; j <= m; ++j) {
        powers.push_back(raw_mul(ring.coeff(), powers.back(), base, cap));
        const int exact = cap - (j - 1) * neg;
        const int v = raw_min_degree(powers.back(), d);
        vals.push_back(v == kInfinity ? exact : std::min(v, exact));
    }
    // (f + D)^m - f^m = sum_{k>=1} C(m,k) D^k f^(m-k)
    long long prec = ring.hi();
    for (int kk = 1; kk <= m; ++kk) prec = std::min<long long>(prec, 1LL * kk * f.x_prec() + vals[m - kk]);
    return raw_to_series(ring, powers.back(), static_cast<int>(prec));
}

bool nilpotence_oracle(const LaurentSeries& f, int r_max) {
    require(r_max >= 0, ErrorKind::InvalidArgument, "r_max must be >= 0");
    LaurentSeries g = f;
    const int p = f.ring().p();
    for (int r = 1; r <= r_max; ++r) g = ls_pow(g, p);
    if (g.x_prec() <= 0)
        fail(ErrorKind::PrecisionInsufficient, "power lost all precision at nonnegative degrees");
    const int v = g.valuation();
    return v == kInfinity || v > 0;
}

int kummer_valuation(int p, int r, i64 i) {
    require(r >= 0, ErrorKind::OutOfRange, "r must be >= 0");
    require(i >= 1 && i <= ipow(p, r), ErrorKind::OutOfRange, "i must lie in [1, p^r]");
    return static_cast<int>(i) + r - int_valuation(i, p);
}

LaurentSeries hensel_root(const LaurentSeries& f, int e) {
    const SeriesRing& ring = f.ring();
    const int p = ring.p();
    if (e < 1 || e % p == 0) fail(ErrorKind::NoRoot, "exponent must be positive and prime to p");
    for (int k = ring.lo(); k < std::min(0, f.x_prec()); ++k)
        if (!f.coeff_is_zero(k)) fail(ErrorKind::NoRoot, "series has negative-degree terms");
    if (f.x_prec() <= 0 || !f.coeff(0).is_one()) fail(ErrorKind::NoRoot, "constant term is not 1");

    const WittElem inv_e = ring.coeff().from_int(e).inverse();
    std::map<int, WittElem> g{{0, ring.coeff().one()}};
    for (int k = 1; k < f.x_prec(); ++k) {
        // coefficient of x^k in g^e with the x^k term of g still zero
        LaurentSeries gs = ring.from_terms(g, std::min(k + 1, ring.hi()));
        LaurentSeries pw = ring.one().with_x_prec(k + 1);
        LaurentSeries base = gs;
        for (int ee = e; ee > 0; ee >>= 1) {
            if (ee & 1) pw = pw * base;
            if (ee > 1) base = base * base;
        }
        WittElem ck = (f.coeff(k) - pw.coeff(k)) * inv_e;
        if (!ck.is_zero()) g.emplace(k, ck);
    }
    return ring.from_terms(g, f.x_prec());
}

bool s_membership(const LaurentSeries& f, int m_max) {
    require(m_max >= 0, ErrorKind::InvalidArgument, "m_max must be >= 0");
    if (f.valuation() != 0) return false;
    if (!f.coeff(0).is_one()) return false;
    // Certify: (q-1)^m-th roots exist for m <= m_max.
    const int e = static_cast<int>(f.ring().coeff().q() - 1);
    if (e % f.ring().p() != 0) {
        LaurentSeries g = f;
        for (int m = 1; m <= m_max; ++m) g = hensel_root(g, e);
    }
    return true;
}

namespace {

// acc += c * a, with acc already covering a's degrees below cap.
void raw_add_scaled(const WittRing& ring, RawPoly& acc, const RawPoly& a, std::span<const i64> c) {
    const int d = ring.d();
    for (int i = 0; i < a.len; ++i) {
        const int deg = a.lo + i;
        if (deg >= acc.hi()) break;
        if (slot_zero(a.c, i, d)) continue;
        ring.mul_acc(std::span<i64>(acc.c.data() + static_cast<std::size_t>(deg - acc.lo) * d, d),
                     std::span<const i64>(a.c.data() + static_cast<std::size_t>(i) * d, d), c);
    }
}

// sum_j coeffs[j] b^j for j >= 1 added into acc; returns the precision of the sum.
// Each power gets the binomial bound min_k (k P_b + v(b^{j-k})) instead of a
// bound compounded through the chain of products.
long long add_power_sum(const SeriesRing& ring, RawPoly& acc, const LaurentSeries& b,
                        const std::map<int, WittElem>& coeffs, int cap) {
    const WittRing& cr = ring.coeff();
    const int d = ring.d();
    const int m = coeffs.rbegin()->first;
    const RawPoly base = raw_from_series(b);
    const int bmin = raw_min_degree(base, d);
    const int neg = bmin == kInfinity ? 0 : std::max(0, -bmin);
    std::vector<int> vals{0};
    RawPoly pw;
    pw.lo = 0;
    pw.len = 1;
    pw.c.assign(d, 0);
    pw.c[0] = 1;
    long long prec = ring.hi();
    for (int j = 1; j <= m; ++j) {
        pw = raw_mul(cr, pw, base, cap);
        const int v = raw_min_degree(pw, d);
        vals.push_back(v == kInfinity ? cap - (j - 1) * neg : std::min(v, cap - (j - 1) * neg));
        auto it = coeffs.find(j);
        if (it == coeffs.end() || it->second.is_zero()) continue;
        raw_add_scaled(cr, acc, pw, it->second.rep());
        for (int k = 1; k <= j; ++k) prec = std::min<long long>(prec, 1LL * k * b.x_prec() + vals[j - k]);
    }
    return prec;
}

}  // namespace

LaurentSeries substitute(const LaurentSeries& f, const LaurentSeries& y, int sigma_power) {
    require(f.ring() == y.ring(), ErrorKind::RingMismatch, "substitute: ring mismatch");
    const SeriesRing& ring = f.ring();
    const int d_plus = y.unit_degree();
    if (d_plus == kInfinity || d_plus <= 0)
        fail(ErrorKind::NotTopologicallyNilpotent, "substitution needs a topologically nilpotent unit");
    const int vy = y.valuation();
    const int n = ring.n();
    const int d = ring.d();
    // Tail bound for the unknown part of f (degrees >= x_prec(f)).
    long long prec = 1LL * f.x_prec() * d_plus - 1LL * (n - 1) * std::max(0, d_plus - vy);
    prec = std::min<long long>(prec, ring.hi());

    const auto terms = f.frobenius_coeffs(sigma_power).terms();
    if (terms.empty()) return ring.zero().with_x_prec(static_cast<int>(std::max<long long>(prec, ring.lo())));
    std::map<int, WittElem> pos, negs;
    for (const auto& [k, c] : terms) {
        if (k > 0) pos.insert_or_assign(k, c);
        if (k < 0) negs.insert_or_assign(-k, c);
    }
    std::optional<LaurentSeries> yinv;
    if (!negs.empty()) yinv = ls_invert(y);

    // Degrees reachable from below: every power is accumulated exactly down to here.
    auto span_of = [](const LaurentSeries& b, int m) {
        const int v = b.valuation();
        return v == kInfinity ? 0 : std::min(0, v) * m;
    };
    int low = 0;
    if (!pos.empty()) low = std::min(low, span_of(y, pos.rbegin()->first));
    if (yinv) low = std::min(low, span_of(*yinv, negs.rbegin()->first));
    const int cap = ring.hi() + 1;
    RawPoly acc;
    acc.lo = std::min(low, ring.lo());
    acc.len = cap - acc.lo;
    acc.c.assign(static_cast<std::size_t>(acc.len) * d, 0);
    if (auto it = terms.find(0); it != terms.end()) {
        std::copy(it->second.rep().begin(), it->second.rep().end(),
                  acc.c.begin() + static_cast<std::ptrdiff_t>(-acc.lo) * d);
    }
    auto power_cap = [&](const LaurentSeries& b, int m) {
        const int bmin = b.valuation();
        const int neg = bmin == kInfinity ? 0 : std::max(0, -bmin);
        return ring.hi() + (m + 1) * neg + 1;
    };
    if (!pos.empty())
        prec = std::min(prec, add_power_sum(ring, acc, y, pos, power_cap(y, pos.rbegin()->first)));
    if (yinv) prec = std::min(prec, add_power_sum(ring, acc, *yinv, negs, power_cap(*yinv, negs.rbegin()->first)));
    return raw_to_series(ring, acc, static_cast<int>(std::max<long long>(prec, ring.lo())));
}

}  // namespace ltk
