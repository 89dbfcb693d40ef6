#pragma once

// Floating-point style p-adic numbers in Q_p with tracked precision:
// value = p^v * u with u a unit known modulo p^r. A zero known to O(p^v)
// has r = 0. Used wherever logarithms force division by p.

#include <string>

#include "ltk/witt.hpp"

namespace ltk {

class Padic;

class PadicRing {
public:
    /// N is the relative precision carried by fresh elements.
    PadicRing(int p, int N);

    int p() const noexcept { return p_; }
    int N() const noexcept { return N_; }
    /// Largest N for which p^N fits the 62-bit kernel.
    static int max_digits(int p);

    Padic zero() const;
    Padic one() const;
    Padic from_int(i64 v) const;
    /// p^v * u with u known mod p^r.
    Padic make(int v, i64 u, int r) const;
    /// Exact lift of a W_m(F_p) element (known mod p^m).
    Padic from_witt(const WittElem& w) const;

    friend bool operator==(const PadicRing& a, const PadicRing& b) { return a.p_ == b.p_ && a.N_ == b.N_; }

private:
    int p_;
    int N_;
};

class Padic {
public:
    static constexpr int kExact = 1 << 28;

    Padic(PadicRing ring, int v, i64 u, int r);

    const PadicRing& ring() const noexcept { return ring_; }
    /// Valuation; for zeros the known absolute precision.
    int valuation() const noexcept { return v_; }
    int rel_precision() const noexcept { return r_; }
    /// v + r; kExact for an exact zero.
    int abs_precision() const noexcept { return exact_zero() ? kExact : v_ + r_; }
    i64 unit() const noexcept { return u_; }

    bool exact_zero() const noexcept { return v_ >= kExact; }
    /// Zero to the known precision.
    bool is_zero() const noexcept { return r_ == 0; }

    Padic operator-() const;
    Padic& operator+=(const Padic& o);
    Padic& operator-=(const Padic& o) { return *this += -o; }
    Padic& operator*=(const Padic& o);
    friend Padic operator+(Padic a, const Padic& b) { return a += b; }
    friend Padic operator-(Padic a, const Padic& b) { return a -= b; }
    friend Padic operator*(Padic a, const Padic& b) { return a *= b; }
    /// Equal to the common known precision.
    friend bool operator==(const Padic& a, const Padic& b) { return (a - b).is_zero(); }

    Padic inverse() const;

    /// Reduction into W_m(F_p); PrecisionGuardExceeded unless integral and known mod p^m.
    WittElem to_witt(const WittRing& target) const;

    std::string to_string() const;

private:
    PadicRing ring_;
    int v_;
    i64 u_;
    int r_;
};

}  // namespace ltk
