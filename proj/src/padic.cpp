#include "ltk/padic.hpp"

#include <algorithm>
#include <tuple>

namespace ltk {

namespace {

// Inverse of a unit modulo m (extended Euclid).
i64 inv_mod(i64 a, i64 m) {
    i64 g = m, x = 0, x1 = 1, a1 = mod_reduce(a, m);
    while (a1 != 0) {
        const i64 q = g / a1;
        std::tie(g, a1) = std::pair{a1, g - q * a1};
        std::tie(x, x1) = std::pair{x1, x - q * x1};
    }
    return mod_reduce(x, m);
}

}  // namespace

PadicRing::PadicRing(int p, int N) : p_(p), N_(N) {
    require(is_prime(p), ErrorKind::InvalidArgument, "p must be prime");
    require(N >= 1 && N <= max_digits(p), ErrorKind::PrecisionGuardExceeded,
            "p-adic precision exceeds the 62-bit kernel");
}

int PadicRing::max_digits(int p) {
    int k = 0;
    for (i64 v = 1; v <= (i64{1} << 62) / p; v *= p) ++k;
    return k;
}

Padic PadicRing::zero() const { return Padic(*this, Padic::kExact, 0, 0); }

Padic PadicRing::one() const { return Padic(*this, 0, 1, N_); }

Padic PadicRing::from_int(i64 v) const {
    if (v == 0) return zero();
    const int k = int_valuation(v, p_);
    return Padic(*this, k, v / ipow(p_, k), N_);
}

Padic PadicRing::make(int v, i64 u, int r) const { return Padic(*this, v, u, r); }

Padic PadicRing::from_witt(const WittElem& w) const {
    require(w.ring().d() == 1 && w.ring().p() == p_, ErrorKind::RingMismatch, "from_witt needs W_m(F_p)");
    const int m = w.ring().n();
    const i64 a = w.rep()[0];
    if (a == 0) return Padic(*this, m, 0, 0);
    const int k = int_valuation(a, p_);
    return Padic(*this, k, a / ipow(p_, k), std::min(m - k, N_));
}

Padic::Padic(PadicRing ring, int v, i64 u, int r) : ring_(ring), v_(v), u_(0), r_(std::max(0, r)) {
    const int p = ring_.p();
    r_ = std::min(r_, ring_.N());
    if (v_ >= kExact) {
        v_ = kExact;
        r_ = 0;
        return;
    }
    if (r_ == 0) return;
    i64 m = ipow(p, r_);
    u = mod_reduce(u, m);
    // Normalize: strip p-factors from u, shifting v and losing relative digits.
    while (r_ > 0 && u % p == 0) {
        u /= p;
        ++v_;
        --r_;
        m /= p;
    }
    u_ = r_ == 0 ? 0 : u % m;
}

Padic Padic::operator-() const {
    if (r_ == 0) return *this;
    return Padic(ring_, v_, ipow(ring_.p(), r_) - u_, r_);
}

Padic& Padic::operator+=(const Padic& o) {
    require(ring_ == o.ring_, ErrorKind::RingMismatch, "p-adic ring mismatch");
    if (o.exact_zero()) return *this;
    if (exact_zero()) return *this = o;
    const int p = ring_.p();
    const int abs = std::min(abs_precision(), o.abs_precision());
    const int vmin = std::min(v_, o.v_);
    const int width = abs - vmin;  // digits kept above vmin
    if (width <= 0) return *this = Padic(ring_, abs, 0, 0);
    const i64 m = ipow(p, width);
    auto scaled = [&](const Padic& a) -> i64 {
        if (a.r_ == 0 || a.v_ - vmin >= width) return 0;
        return mul_mod(a.u_, ipow(p, a.v_ - vmin), m);
    };
    const i64 s = (scaled(*this) + scaled(o)) % m;
    if (s == 0) return *this = Padic(ring_, abs, 0, 0);
    return *this = Padic(ring_, vmin, s, width);
}

Padic& Padic::operator*=(const Padic& o) {
    require(ring_ == o.ring_, ErrorKind::RingMismatch, "p-adic ring mismatch");
    if (exact_zero() || o.exact_zero()) return *this = ring_.zero();
    const int r = std::min(r_, o.r_);
    const int v = v_ + o.v_;
    if (r == 0) return *this = Padic(ring_, v, 0, 0);
    const i64 m = ipow(ring_.p(), r);
    return *this = Padic(ring_, v, mul_mod(u_ % m, o.u_ % m, m), r);
}

Padic Padic::inverse() const {
    require(r_ > 0, ErrorKind::NotUnit, "inverse of a p-adic zero");
    const i64 m = ipow(ring_.p(), r_);
    return Padic(ring_, -v_, inv_mod(u_, m), r_);
}

WittElem Padic::to_witt(const WittRing& target) const {
    require(target.d() == 1 && target.p() == ring_.p(), ErrorKind::RingMismatch, "to_witt needs W_m(F_p)");
    const int m = target.n();
    if (exact_zero()) return target.zero();
    if (abs_precision() < m)
        fail(ErrorKind::PrecisionGuardExceeded,
             "coefficient known only mod p^" + std::to_string(abs_precision()) + ", need p^" + std::to_string(m));
    if (r_ == 0) return target.zero();
    if (v_ < 0) fail(ErrorKind::PrecisionGuardExceeded, "coefficient is not integral: " + to_string());
    if (v_ >= m) return target.zero();
    return target.from_int(mul_mod(u_, ipow(ring_.p(), v_), target.pn()));
}

std::string Padic::to_string() const {
    if (exact_zero()) return "0";
    if (r_ == 0) return "O(" + std::to_string(ring_.p()) + "^" + std::to_string(v_) + ")";
    std::string s = std::to_string(u_);
    if (v_ != 0) s += "*" + std::to_string(ring_.p()) + "^" + std::to_string(v_);
    return s + " + O(" + std::to_string(ring_.p()) + "^" + std::to_string(v_ + r_) + ")";
}

}  // namespace ltk
