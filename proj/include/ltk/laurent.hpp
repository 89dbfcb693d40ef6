#pragma once

// Truncated Laurent series over W_n(F_q): the finite-precision stand-ins for
// W_n k((x)) and Wk((x))^_p. Each value carries an absolute x-precision; the
// p-precision is fixed by the coefficient ring.

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ltk/witt.hpp"

namespace ltk {

inline constexpr int kInfinity = std::numeric_limits<int>::max();

class LaurentSeries;

/// Coefficient ring plus the supported x-degree window [lo, hi).
class SeriesRing {
public:
    SeriesRing(WittRing coeff, int lo, int hi);

    const WittRing& coeff() const noexcept { return coeff_; }
    int lo() const noexcept { return lo_; }
    int hi() const noexcept { return hi_; }
    int p() const noexcept { return coeff_.p(); }
    int d() const noexcept { return coeff_.d(); }
    /// p-precision of the coefficients.
    int n() const noexcept { return coeff_.n(); }

    SeriesRing with_precision(int m) const { return SeriesRing(coeff_.with_precision(m), lo_, hi_); }
    SeriesRing residue() const { return with_precision(1); }

    LaurentSeries zero() const;
    LaurentSeries one() const;
    LaurentSeries from_int(i64 v) const;
    LaurentSeries constant(const WittElem& c) const;
    /// c * x^k (c defaults to 1), exact to the window.
    LaurentSeries monomial(int k) const;
    LaurentSeries monomial(int k, const WittElem& c) const;
    LaurentSeries from_terms(const std::map<int, WittElem>& terms, int x_prec) const;
    LaurentSeries from_terms(const std::map<int, WittElem>& terms) const;

    friend bool operator==(const SeriesRing& a, const SeriesRing& b) {
        return a.lo_ == b.lo_ && a.hi_ == b.hi_ && a.coeff_ == b.coeff_;
    }

private:
    WittRing coeff_;
    int lo_;
    int hi_;
};

class LaurentSeries {
public:
    LaurentSeries(SeriesRing ring, int x_prec, std::vector<i64> data);

    const SeriesRing& ring() const noexcept { return ring_; }
    int x_prec() const noexcept { return x_prec_; }
    int lo() const noexcept { return ring_.lo(); }

    /// Coefficient at degree k; zero below the window, PrecisionInsufficient at or above x_prec.
    WittElem coeff(int k) const;
    bool coeff_is_zero(int k) const;
    /// All known coefficients vanish.
    bool is_zero() const;
    /// Least degree with a nonzero coefficient, or kInfinity.
    int valuation() const;
    /// Least degree whose coefficient is a p-unit, or kInfinity.
    int unit_degree() const;
    /// Nonzero terms, ascending.
    std::map<int, WittElem> terms() const;

    LaurentSeries with_x_prec(int prec) const;
    LaurentSeries reduce(int m) const;
    LaurentSeries lift(int m) const;
    /// Exact division by p, landing one p-digit lower.
    LaurentSeries div_p() const;
    /// Multiply by x^k.
    LaurentSeries shift(int k) const;
    LaurentSeries scale(const WittElem& c) const;
    /// Apply sigma^e to every coefficient.
    LaurentSeries frobenius_coeffs(int e = 1) const;
    /// Degrees < 0 only (degree >= 0 part dropped); keeps precision.
    LaurentSeries negative_part() const;

    LaurentSeries operator-() const;
    LaurentSeries& operator+=(const LaurentSeries& o);
    LaurentSeries& operator-=(const LaurentSeries& o);
    friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) { return a += b; }
    friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b) { return a -= b; }
    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
    LaurentSeries& operator*=(const LaurentSeries& o) { return *this = *this * o; }

    /// Agreement of every coefficient below the smaller precision.
    friend bool operator==(const LaurentSeries& a, const LaurentSeries& b);

    /// e.g. "3*x^-1 + 1 + 5*x^2 + O(x^20)"; extension coefficients are parenthesized.
    std::string to_string() const;

    // Raw access for the arithmetic kernels.
    const std::vector<i64>& data() const noexcept { return data_; }

private:
    void check_same(const LaurentSeries& o) const;
    std::span<const i64> slot(int k) const;

    SeriesRing ring_;
    int x_prec_;
    std::vector<i64> data_;  // degrees [lo, x_prec), d entries each
};

inline LaurentSeries SeriesRing::from_terms(const std::map<int, WittElem>& terms) const {
    return from_terms(terms, hi_);
}

/// v_x; kInfinity for a series whose known coefficients vanish.
int v_x(const LaurentSeries& f);

/// Reduction mod p is nonzero.
bool is_unit(const LaurentSeries& f);

/// Units whose mod-p reduction lies in x k[[x]].
bool is_topologically_nilpotent(const LaurentSeries& f);

LaurentSeries ls_invert(const LaurentSeries& f);

/// f^m with precision from the binomial perturbation bound.
LaurentSeries ls_pow(const LaurentSeries& f, int m);

/// Brute force: does f^(p^r_max) have positive valuation (or vanish) in the window?
bool nilpotence_oracle(const LaurentSeries& f, int r_max);

/// v_p(p^i * C(p^r, i)) = i + r - v_p(i) for 1 <= i <= p^r.
int kummer_valuation(int p, int r, i64 i);

/// e-th root g = 1 + O(x) of f = 1 + O(x), with p not dividing e.
LaurentSeries hensel_root(const LaurentSeries& f, int e);

/// Constant term 1 and v_x = 0 (membership in 1 + x k[[x]]).
bool s_membership(const LaurentSeries& f, int m_max);

/// Substitution x -> y with sigma^sigma_power on coefficients; negative powers use ls_invert(y).
LaurentSeries substitute(const LaurentSeries& f, const LaurentSeries& y, int sigma_power);

}  // namespace ltk
