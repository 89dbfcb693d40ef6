#pragma once

// Truncated Witt vectors W_n(F_q) of a finite field, realized as the unramified
// extension (Z/p^n)[T]/(lifted modulus).

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ltk/error.hpp"

namespace ltk {

using i64 = std::int64_t;

/// Residue modulo m in [0, m).
inline i64 mod_reduce(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

inline i64 mul_mod(i64 a, i64 b, i64 m) {
    return static_cast<i64>((static_cast<__int128>(a) * b) % m);
}

i64 ipow(i64 base, int exp);

/// p-adic valuation of a nonzero integer.
int int_valuation(i64 value, int p);

bool is_prime(i64 n);

/// F_q = F_p[T]/(modulus). The modulus is monic of degree d, coefficients low to high.
class FiniteField {
public:
    FiniteField(int p, std::vector<i64> modulus);

    /// F_p itself (modulus T).
    static FiniteField prime(int p);
    /// Lexicographically first monic irreducible of degree d over F_p.
    static FiniteField standard(int p, int d);

    int p() const noexcept { return p_; }
    int degree() const noexcept { return static_cast<int>(modulus_.size()) - 1; }
    i64 order() const noexcept { return ipow(p_, degree()); }
    const std::vector<i64>& modulus() const noexcept { return modulus_; }

    friend bool operator==(const FiniteField&, const FiniteField&) = default;

private:
    int p_;
    std::vector<i64> modulus_;
};

bool is_irreducible_mod_p(const std::vector<i64>& poly, int p);

class WittElem;

/// W_n(F_q). A cheap shared handle; copies alias the same immutable data.
class WittRing {
public:
    WittRing(FiniteField field, int n);

    const FiniteField& field() const noexcept { return data_->field; }
    int p() const noexcept { return data_->field.p(); }
    int d() const noexcept { return data_->field.degree(); }
    int n() const noexcept { return data_->n; }
    /// p^n, the coefficient modulus.
    i64 pn() const noexcept { return data_->pn; }
    i64 q() const noexcept { return data_->field.order(); }

    WittRing with_precision(int m) const { return WittRing(field(), m); }
    WittRing residue_field() const { return with_precision(1); }

    WittElem zero() const;
    WittElem one() const;
    WittElem from_int(i64 v) const;
    WittElem from_rep(std::vector<i64> rep) const;
    /// The class of T.
    WittElem gen() const;

    // Raw kernels on length-d coefficient arrays, used by the series layer.
    void add_into(std::span<i64> acc, std::span<const i64> b) const;
    void sub_into(std::span<i64> acc, std::span<const i64> b) const;
    void mul_acc(std::span<i64> acc, std::span<const i64> a, std::span<const i64> b) const;
    void mul(std::span<i64> out, std::span<const i64> a, std::span<const i64> b) const;

    friend bool operator==(const WittRing& a, const WittRing& b) {
        return a.data_ == b.data_ || (a.n() == b.n() && a.field() == b.field());
    }

private:
    struct Data {
        FiniteField field;
        int n;
        i64 pn;
        std::vector<i64> lifted_modulus;
    };
    std::shared_ptr<const Data> data_;
};

class WittElem {
public:
    WittElem(WittRing ring, std::vector<i64> rep);

    const WittRing& ring() const noexcept { return ring_; }
    const std::vector<i64>& rep() const noexcept { return rep_; }

    bool is_zero() const;
    bool is_one() const;
    /// Reduction mod p is nonzero.
    bool is_unit() const;
    /// Largest v with p^v | this (n for zero).
    int valuation() const;

    WittElem inverse() const;
    WittElem pow(std::uint64_t e) const;

    /// Image in W_m for m <= n.
    WittElem reduce(int m) const;
    /// Same integer representative viewed in W_m for m >= n.
    WittElem lift(int m) const;
    /// Exact division by p into W_{n-1}; requires every coefficient divisible by p.
    WittElem div_p() const;

    WittElem operator-() const;
    WittElem& operator+=(const WittElem& o);
    WittElem& operator-=(const WittElem& o);
    WittElem& operator*=(const WittElem& o);
    friend WittElem operator+(WittElem a, const WittElem& b) { return a += b; }
    friend WittElem operator-(WittElem a, const WittElem& b) { return a -= b; }
    friend WittElem operator*(WittElem a, const WittElem& b) { return a *= b; }
    friend bool operator==(const WittElem& a, const WittElem& b);

    /// Canonical text form, e.g. "7" or "3*T + 2".
    std::string to_string() const;

private:
    void check_same(const WittElem& o) const;

    WittRing ring_;
    std::vector<i64> rep_;
};

WittElem teichmuller(const WittRing& ring, const WittElem& a);
WittElem frobenius(const WittElem& w);
/// sigma^e for any integer e (sigma has order d).
WittElem frobenius_pow(const WittElem& w, int e);
WittElem frobenius_inverse(const WittElem& w);
WittElem verschiebung(const WittElem& w);

/// Digits b_i in F_q with w = sum p^i [b_i].
std::vector<WittElem> teich_digits(const WittElem& w);
WittElem from_teich_digits(const WittRing& ring, const std::vector<WittElem>& digits);

/// The unique lift W(k) -> S of a field embedding k -> S/p, determined by the
/// image of the Teichmueller lift of the generator T.
class WittEmbedding {
public:
    /// gen_residue_image: image of T in the residue field of target.
    WittEmbedding(FiniteField source, WittRing target, const WittElem& gen_residue_image);

    const FiniteField& source() const noexcept { return source_; }
    const WittRing& target() const noexcept { return target_; }
    /// [i(T)] in the target.
    const WittElem& generator_image() const noexcept { return gen_image_; }
    const WittElem& residue_generator_image() const noexcept { return gen_residue_; }

    /// Image of a field element under i.
    WittElem apply_residue(const WittElem& b) const;
    /// Image of a Witt vector over the source field (any precision >= target's).
    WittElem apply(const WittElem& w) const;

private:
    FiniteField source_;
    WittRing target_;
    WittElem gen_residue_;
    WittElem gen_image_;
};

WittEmbedding lift_witt_map(const FiniteField& source, const WittRing& target,
                            const WittElem& gen_residue_image);

}  // namespace ltk
