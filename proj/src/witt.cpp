#include "ltk/witt.hpp"

#include <algorithm>
#include <sstream>

namespace ltk {

i64 ipow(i64 base, int exp) {
    i64 r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

int int_valuation(i64 value, int p) {
    require(value != 0, ErrorKind::InvalidArgument, "valuation of zero");
    int v = 0;
    while (value % p == 0) {
        value /= p;
        ++v;
    }
    return v;
}

bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 f = 2; f * f <= n; ++f)
        if (n % f == 0) return false;
    return true;
}

namespace {

// Remainder of a by monic b over F_p; both low-to-high.
std::vector<i64> poly_rem_mod_p(std::vector<i64> a, const std::vector<i64>& b, int p) {
    const int db = static_cast<int>(b.size()) - 1;
    for (int k = static_cast<int>(a.size()) - 1; k >= db; --k) {
        i64 c = mod_reduce(a[k], p);
        if (c == 0) continue;
        for (int j = 0; j <= db; ++j) a[k - db + j] = mod_reduce(a[k - db + j] - c * b[j], p);
    }
    a.resize(std::max(db, 0));
    return a;
}

}  // namespace

bool is_irreducible_mod_p(const std::vector<i64>& poly, int p) {
    const int d = static_cast<int>(poly.size()) - 1;
    if (d < 1 || mod_reduce(poly.back(), p) != 1) return false;
    // Trial division by every monic polynomial of degree 1..d/2.
    for (int k = 1; 2 * k <= d; ++k) {
        const i64 count = ipow(p, k);
        for (i64 code = 0; code < count; ++code) {
            std::vector<i64> f(k + 1);
            i64 c = code;
            for (int j = 0; j < k; ++j) {
                f[j] = c % p;
                c /= p;
            }
            f[k] = 1;
            auto r = poly_rem_mod_p(poly, f, p);
            if (std::all_of(r.begin(), r.end(), [](i64 x) { return x == 0; })) return false;
        }
    }
    return true;
}

FiniteField::FiniteField(int p, std::vector<i64> modulus) : p_(p), modulus_(std::move(modulus)) {
    require(is_prime(p), ErrorKind::InvalidArgument, "p must be prime");
    require(modulus_.size() >= 2, ErrorKind::InvalidArgument, "modulus must have degree >= 1");
    for (auto& c : modulus_) c = mod_reduce(c, p);
    require(modulus_.back() == 1, ErrorKind::InvalidArgument, "modulus must be monic");
    require(is_irreducible_mod_p(modulus_, p), ErrorKind::InvalidArgument,
            "modulus is not irreducible over F_p");
}

FiniteField FiniteField::prime(int p) { return FiniteField(p, {0, 1}); }

FiniteField FiniteField::standard(int p, int d) {
    require(d >= 1, ErrorKind::InvalidArgument, "extension degree must be >= 1");
    if (d == 1) return prime(p);
    const i64 count = ipow(p, d);
    for (i64 code = 0; code < count; ++code) {
        std::vector<i64> f(d + 1);
        i64 c = code;
        for (int j = 0; j < d; ++j) {
            f[j] = c % p;
            c /= p;
        }
        f[d] = 1;
        if (is_irreducible_mod_p(f, p)) return FiniteField(p, f);
    }
    fail(ErrorKind::InvalidArgument, "no irreducible polynomial found");
}

WittRing::WittRing(FiniteField field, int n) {
    require(n >= 1, ErrorKind::InvalidArgument, "Witt precision must be >= 1");
    const i64 pn = ipow(field.p(), n);
    require(n < 62 && pn > 0 && pn < (i64{1} << 62), ErrorKind::InvalidArgument,
            "p^n exceeds 62 bits");
    std::vector<i64> lifted = field.modulus();
    data_ = std::make_shared<const Data>(Data{std::move(field), n, pn, std::move(lifted)});
}

WittElem WittRing::zero() const { return WittElem(*this, std::vector<i64>(d(), 0)); }

WittElem WittRing::one() const { return from_int(1); }

WittElem WittRing::from_int(i64 v) const {
    std::vector<i64> rep(d(), 0);
    rep[0] = mod_reduce(v, pn());
    return WittElem(*this, std::move(rep));
}

WittElem WittRing::from_rep(std::vector<i64> rep) const { return WittElem(*this, std::move(rep)); }

WittElem WittRing::gen() const {
    std::vector<i64> rep(d(), 0);
    if (d() == 1) {
        // F_p = F_p[T]/(T): T is zero.
        return WittElem(*this, rep);
    }
    rep[1] = 1;
    return WittElem(*this, std::move(rep));
}

void WittRing::add_into(std::span<i64> acc, std::span<const i64> b) const {
    const i64 m = pn();
    for (std::size_t i = 0; i < acc.size(); ++i) {
        i64 s = acc[i] + b[i];
        acc[i] = s >= m ? s - m : s;
    }
}

void WittRing::sub_into(std::span<i64> acc, std::span<const i64> b) const {
    const i64 m = pn();
    for (std::size_t i = 0; i < acc.size(); ++i) {
        i64 s = acc[i] - b[i];
        acc[i] = s < 0 ? s + m : s;
    }
}

void WittRing::mul(std::span<i64> out, std::span<const i64> a, std::span<const i64> b) const {
    const i64 m = pn();
    const int dd = d();
    if (dd == 1) {
        out[0] = mul_mod(a[0], b[0], m);
        return;
    }
    std::vector<__int128> prod(2 * dd - 1, 0);
    for (int i = 0; i < dd; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < dd; ++j) prod[i + j] = (prod[i + j] + static_cast<__int128>(a[i]) * b[j]) % m;
    }
    const auto& mod = data_->lifted_modulus;
    for (int k = 2 * dd - 2; k >= dd; --k) {
        const __int128 c = prod[k] % m;
        if (c == 0) continue;
        for (int j = 0; j < dd; ++j) prod[k - dd + j] = (prod[k - dd + j] - c * mod[j]) % m;
    }
    for (int i = 0; i < dd; ++i) {
        i64 r = static_cast<i64>(prod[i] % m);
        out[i] = r < 0 ? r + m : r;
    }
}

void WittRing::mul_acc(std::span<i64> acc, std::span<const i64> a, std::span<const i64> b) const {
    if (d() == 1) {
        const i64 m = pn();
        i64 s = acc[0] + mul_mod(a[0], b[0], m);
        acc[0] = s >= m ? s - m : s;
        return;
    }
    std::vector<i64> tmp(d());
    mul(tmp, a, b);
    add_into(acc, tmp);
}

WittElem::WittElem(WittRing ring, std::vector<i64> rep) : ring_(std::move(ring)), rep_(std::move(rep)) {
    if (static_cast<int>(rep_.size()) > ring_.d()) {
        // Reduce an over-long polynomial by the modulus.
        std::vector<__int128> poly(rep_.begin(), rep_.end());
        const i64 m = ring_.pn();
        const auto& mod = ring_.field().modulus();
        const int dd = ring_.d();
        for (int k = static_cast<int>(poly.size()) - 1; k >= dd; --k) {
            const __int128 c = poly[k] % m;
            for (int j = 0; j < dd; ++j) poly[k - dd + j] = (poly[k - dd + j] - c * mod[j]) % m;
        }
        rep_.assign(dd, 0);
        for (int i = 0; i < dd; ++i) rep_[i] = static_cast<i64>(poly[i] % m);
    }
    rep_.resize(ring_.d(), 0);
    for (auto& c : rep_) c = mod_reduce(c, ring_.pn());
}

void WittElem::check_same(const WittElem& o) const {
    if (!(ring_ == o.ring_)) fail(ErrorKind::RingMismatch, "Witt elements from different rings");
}

bool WittElem::is_zero() const {
    return std::all_of(rep_.begin(), rep_.end(), [](i64 c) { return c == 0; });
}

bool WittElem::is_one() const {
    if (rep_[0] != 1) return false;
    return std::all_of(rep_.begin() + 1, rep_.end(), [](i64 c) { return c == 0; });
}

bool WittElem::is_unit() const {
    const int p = ring_.p();
    return std::any_of(rep_.begin(), rep_.end(), [p](i64 c) { return c % p != 0; });
}

int WittElem::valuation() const {
    int v = ring_.n();
    for (i64 c : rep_)
        if (c != 0) v = std::min(v, int_valuation(c, ring_.p()));
    return v;
}

WittElem WittElem::pow(std::uint64_t e) const {
    WittElem result = ring_.one();
    WittElem base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e > 0) base *= base;
    }
    return result;
}

WittElem WittElem::inverse() const {
    require(is_unit(), ErrorKind::NotUnit, "inverse of non-unit " + to_string());
    // Inverse mod p via a^(q-2), then Newton lifting.
    const WittElem residue = reduce(1);
    const WittElem inv_residue = residue.pow(static_cast<std::uint64_t>(ring_.q() - 2));
    WittElem b = inv_residue.lift(ring_.n());
    const WittElem two = ring_.from_int(2);
    for (int prec = 1; prec < ring_.n(); prec *= 2) b = b * (two - *this * b);
    return b;
}

WittElem WittElem::reduce(int m) const {
    require(m >= 1 && m <= ring_.n(), ErrorKind::InvalidArgument, "reduce: bad precision");
    if (m == ring_.n()) return *this;
    WittRing r = ring_.with_precision(m);
    return WittElem(r, rep_);
}

WittElem WittElem::lift(int m) const {
    require(m >= ring_.n(), ErrorKind::InvalidArgument, "lift: bad precision");
    if (m == ring_.n()) return *this;
    return WittElem(ring_.with_precision(m), rep_);
}

WittElem WittElem::div_p() const {
    require(ring_.n() >= 2, ErrorKind::GuardDigitMissing, "div_p needs precision >= 2");
    const int p = ring_.p();
    std::vector<i64> out(rep_.size());
    for (std::size_t i = 0; i < rep_.size(); ++i) {
        if (rep_[i] % p != 0) fail(ErrorKind::InvalidArgument, "div_p: not divisible by p");
        out[i] = rep_[i] / p;
    }
    return WittElem(ring_.with_precision(ring_.n() - 1), std::move(out));
}

WittElem WittElem::operator-() const {
    std::vector<i64> out(rep_.size());
    for (std::size_t i = 0; i < rep_.size(); ++i) out[i] = rep_[i] == 0 ? 0 : ring_.pn() - rep_[i];
    return WittElem(ring_, std::move(out));
}

WittElem& WittElem::operator+=(const WittElem& o) {
    check_same(o);
    ring_.add_into(rep_, o.rep_);
    return *this;
}

WittElem& WittElem::operator-=(const WittElem& o) {
    check_same(o);
    ring_.sub_into(rep_, o.rep_);
    return *this;
}

WittElem& WittElem::operator*=(const WittElem& o) {
    check_same(o);
    std::vector<i64> out(rep_.size());
    ring_.mul(out, rep_, o.rep_);
    rep_ = std::move(out);
    return *this;
}

bool operator==(const WittElem& a, const WittElem& b) {
    a.check_same(b);
    return a.rep_ == b.rep_;
}

std::string WittElem::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int k = static_cast<int>(rep_.size()) - 1; k >= 0; --k) {
        const i64 c = rep_[k];
        if (c == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (k == 0) {
            os << c;
        } else {
            if (c != 1) os << c << "*";
            os << "T";
            if (k > 1) os << "^" << k;
        }
    }
    if (first) os << "0";
    return os.str();
}

WittElem teichmuller(const WittRing& ring, const WittElem& a) {
    require(a.ring().field() == ring.field(), ErrorKind::RingMismatch, "teichmuller: field mismatch");
    std::vector<i64> rep = a.rep();
    for (auto& c : rep) c = mod_reduce(c, ring.p());
    WittElem y(ring, std::move(rep));
    const auto q = static_cast<std::uint64_t>(ring.q());
    // y -> y^q is a contraction; n iterations reach the fixed point.
    for (int i = 0; i <= ring.n(); ++i) {
        WittElem next = y.pow(q);
        if (next == y) break;
        y = std::move(next);
    }
    return y;
}

std::vector<WittElem> teich_digits(const WittElem& w) {
    const WittRing& ring = w.ring();
    const int p = ring.p();
    std::vector<WittElem> digits;
    digits.reserve(ring.n());
    // Invariant: cur is meaningful modulo p^(n-i).
    std::vector<i64> cur = w.rep();
    for (int i = 0; i < ring.n(); ++i) {
        WittElem b = WittElem(ring, cur).reduce(1);
        digits.push_back(b);
        if (i + 1 == ring.n()) break;
        WittElem t = teichmuller(ring, b);
        WittElem diff = WittElem(ring, cur) - t;
        for (std::size_t j = 0; j < cur.size(); ++j) cur[j] = diff.rep()[j] / p;
    }
    return digits;
}

WittElem from_teich_digits(const WittRing& ring, const std::vector<WittElem>& digits) {
    WittElem acc = ring.zero();
    WittElem scale = ring.one();
    const WittElem p = ring.from_int(ring.p());
    for (std::size_t i = 0; i < digits.size() && static_cast<int>(i) < ring.n(); ++i) {
        acc += scale * teichmuller(ring, digits[i]);
        scale *= p;
    }
    return acc;
}

WittElem frobenius_pow(const WittElem& w, int e) {
    const int d = w.ring().d();
    const int k = static_cast<int>(mod_reduce(e, d));
    if (k == 0) return w;
    const auto power = static_cast<std::uint64_t>(ipow(w.ring().p(), k));
    auto digits = teich_digits(w);
    for (auto& b : digits) b = b.pow(power);
    return from_teich_digits(w.ring(), digits);
}

WittElem frobenius(const WittElem& w) { return frobenius_pow(w, 1); }

WittElem frobenius_inverse(const WittElem& w) { return frobenius_pow(w, -1); }

WittElem verschiebung(const WittElem& w) {
    return w.ring().from_int(w.ring().p()) * frobenius_inverse(w);
}

WittEmbedding::WittEmbedding(FiniteField source, WittRing target, const WittElem& gen_residue_image)
    : source_(std::move(source)),
      target_(std::move(target)),
      gen_residue_(gen_residue_image),
      gen_image_(target_.zero()) {
    require(source_.p() == target_.p(), ErrorKind::NotEmbedding, "characteristics differ");
    require(gen_residue_.ring() == target_.residue_field(), ErrorKind::NotEmbedding,
            "generator image must lie in the target residue field");
    // i is a ring map iff the image of T is a root of the source modulus.
    WittElem value = target_.residue_field().zero();
    WittElem power = target_.residue_field().one();
    for (i64 c : source_.modulus()) {
        value += target_.residue_field().from_int(c) * power;
        power *= gen_residue_;
    }
    require(value.is_zero(), ErrorKind::NotEmbedding, "generator image is not a root of the modulus");
    gen_image_ = teichmuller(target_, gen_residue_);
}

WittElem WittEmbedding::apply_residue(const WittElem& b) const {
    require(b.ring().field() == source_ && b.ring().n() == 1, ErrorKind::RingMismatch,
            "apply_residue expects a source field element");
    const WittRing k = target_.residue_field();
    WittElem acc = k.zero();
    WittElem power = k.one();
    for (i64 c : b.rep()) {
        acc += k.from_int(c) * power;
        power *= gen_residue_;
    }
    return acc;
}

WittElem WittEmbedding::apply(const WittElem& w) const {
    require(w.ring().field() == source_, ErrorKind::RingMismatch, "apply: source field mismatch");
    require(w.ring().n() >= target_.n(), ErrorKind::InvalidArgument,
            "apply: source precision below target precision");
    auto digits = teich_digits(w.reduce(target_.n()));
    std::vector<WittElem> mapped;
    mapped.reserve(digits.size());
    for (const auto& b : digits) mapped.push_back(apply_residue(b));
    return from_teich_digits(target_, mapped);
}

WittEmbedding lift_witt_map(const FiniteField& source, const WittRing& target,
                            const WittElem& gen_residue_image) {
    return WittEmbedding(source, target, gen_residue_image);
}

}  // namespace ltk
