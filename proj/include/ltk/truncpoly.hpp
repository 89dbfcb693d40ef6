#pragma once

// Polynomials over a coefficient ring in a few commuting variables, truncated
// by a total-degree cap and optional per-variable exponent caps. Used for the
// deformation parameters u_1..u_{n-1} and for dual numbers k((u))[e]/e^m.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ltk/ring_traits.hpp"

namespace ltk {

template <class Base>
class TruncPoly;

template <class Base>
class TruncPolyRing {
public:
    using base_elem = elem_t<Base>;
    using Key = std::uint64_t;  // 8 bits of exponent per variable

    /// var_caps[i] > 0 forces x_i^{var_caps[i]} = 0; 0 means only the total cap applies.
    TruncPolyRing(Base base, std::vector<std::string> names, int total_cap, std::vector<int> var_caps = {})
        : data_(std::make_shared<Data>(Data{std::move(base), std::move(names), total_cap, std::move(var_caps)})) {
        require(nvars() >= 0 && nvars() <= 8, ErrorKind::InvalidArgument, "at most 8 variables");
        require(total_cap >= 0 && total_cap < 255, ErrorKind::InvalidArgument, "bad degree cap");
        data_->var_caps.resize(nvars(), 0);
    }

    const Base& base() const noexcept { return data_->base; }
    int nvars() const noexcept { return static_cast<int>(data_->names.size()); }
    int total_cap() const noexcept { return data_->total_cap; }
    const std::vector<int>& var_caps() const noexcept { return data_->var_caps; }
    const std::string& name(int i) const { return data_->names.at(i); }

    static int exponent(Key k, int i) { return static_cast<int>((k >> (8 * i)) & 0xff); }
    static Key unit_key(int i) { return Key{1} << (8 * i); }
    int degree(Key k) const {
        int d = 0;
        for (int i = 0; i < nvars(); ++i) d += exponent(k, i);
        return d;
    }
    /// Survives truncation.
    bool allowed(Key k) const {
        if (degree(k) > total_cap()) return false;
        for (int i = 0; i < nvars(); ++i)
            if (data_->var_caps[i] > 0 && exponent(k, i) >= data_->var_caps[i]) return false;
        return true;
    }

    TruncPoly<Base> zero() const { return TruncPoly<Base>(*this, {}); }
    TruncPoly<Base> one() const { return constant(base().one()); }
    TruncPoly<Base> from_int(i64 v) const { return constant(base().from_int(v)); }
    TruncPoly<Base> constant(const base_elem& c) const { return term(0, c); }
    TruncPoly<Base> var(int i) const { return term(unit_key(i), base().one()); }
    TruncPoly<Base> term(Key k, const base_elem& c) const {
        std::map<Key, base_elem> t;
        if (allowed(k) && !drop_zero(c)) t.emplace(k, c);
        return TruncPoly<Base>(*this, std::move(t));
    }

    friend bool operator==(const TruncPolyRing& a, const TruncPolyRing& b) {
        return a.data_ == b.data_ ||
               (a.data_->base == b.data_->base && a.data_->names == b.data_->names &&
                a.data_->total_cap == b.data_->total_cap && a.data_->var_caps == b.data_->var_caps);
    }

private:
    struct Data {
        Base base;
        std::vector<std::string> names;
        int total_cap;
        std::vector<int> var_caps;
    };
    std::shared_ptr<Data> data_;
};

template <class Base>
class TruncPoly {
public:
    using Ring = TruncPolyRing<Base>;
    using Key = typename Ring::Key;
    using base_elem = typename Ring::base_elem;

    TruncPoly(Ring ring, std::map<Key, base_elem> terms) : ring_(std::move(ring)), terms_(std::move(terms)) {}

    const Ring& ring() const noexcept { return ring_; }
    const std::map<Key, base_elem>& terms() const noexcept { return terms_; }

    base_elem coeff(Key k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? ring_.base().zero() : it->second;
    }
    base_elem constant_term() const { return coeff(0); }

    bool is_zero() const {
        for (const auto& [k, c] : terms_)
            if (!c.is_zero()) return false;
        return true;
    }

    TruncPoly operator-() const {
        TruncPoly r = *this;
        for (auto& [k, c] : r.terms_) c = -c;
        return r;
    }
    TruncPoly& operator+=(const TruncPoly& o) { return accumulate(o, false); }
    TruncPoly& operator-=(const TruncPoly& o) { return accumulate(o, true); }
    friend TruncPoly operator+(TruncPoly a, const TruncPoly& b) { return a += b; }
    friend TruncPoly operator-(TruncPoly a, const TruncPoly& b) { return a -= b; }
    friend TruncPoly operator*(const TruncPoly& a, const TruncPoly& b) {
        check(a, b);
        std::map<Key, base_elem> out;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) {
                const Key k = ka + kb;
                if (!a.ring_.allowed(k)) continue;
                auto prod = ca * cb;
                auto it = out.find(k);
                if (it == out.end())
                    out.emplace(k, std::move(prod));
                else
                    it->second += prod;
            }
        prune(out);
        return TruncPoly(a.ring_, std::move(out));
    }
    TruncPoly& operator*=(const TruncPoly& o) { return *this = *this * o; }

    friend bool operator==(const TruncPoly& a, const TruncPoly& b) { return (a - b).is_zero(); }

    /// Coefficient-wise image in another truncated ring with the same variables.
    template <class Base2, class Fn>
    TruncPoly<Base2> map_coeffs(const TruncPolyRing<Base2>& target, Fn&& fn) const {
        std::map<typename TruncPolyRing<Base2>::Key, elem_t<Base2>> out;
        for (const auto& [k, c] : terms_) {
            if (!target.allowed(k)) continue;
            auto img = fn(c);
            if (!drop_zero(img)) out.emplace(k, std::move(img));
        }
        return TruncPoly<Base2>(target, std::move(out));
    }

    /// Evaluate at base-ring values for every variable.
    base_elem evaluate(const std::vector<base_elem>& values) const {
        require(static_cast<int>(values.size()) == ring_.nvars(), ErrorKind::InvalidArgument,
                "evaluate: wrong number of values");
        base_elem acc = ring_.base().zero();
        for (const auto& [k, c] : terms_) {
            base_elem t = c;
            for (int i = 0; i < ring_.nvars(); ++i)
                for (int e = 0; e < Ring::exponent(k, i); ++e) t = t * values[i];
            acc += t;
        }
        return acc;
    }

    std::string to_string() const {
        std::string s;
        for (const auto& [k, c] : terms_) {
            if (c.is_zero()) continue;
            if (!s.empty()) s += " + ";
            std::string mono;
            for (int i = 0; i < ring_.nvars(); ++i) {
                const int e = Ring::exponent(k, i);
                if (e == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += ring_.name(i);
                if (e > 1) mono += "^" + std::to_string(e);
            }
            const std::string cs = elem_string(c);
            if (mono.empty())
                s += cs;
            else if (cs == "1")
                s += mono;
            else
                s += "(" + cs + ")*" + mono;
        }
        return s.empty() ? "0" : s;
    }

private:
    static void check(const TruncPoly& a, const TruncPoly& b) {
        if (!(a.ring_ == b.ring_)) fail(ErrorKind::RingMismatch, "truncated polynomial rings differ");
    }
    static void prune(std::map<Key, base_elem>& m) {
        for (auto it = m.begin(); it != m.end();) it = drop_zero(it->second) ? m.erase(it) : std::next(it);
    }
    TruncPoly& accumulate(const TruncPoly& o, bool negate) {
        check(*this, o);
        for (const auto& [k, c] : o.terms_) {
            auto it = terms_.find(k);
            if (it == terms_.end())
                terms_.emplace(k, negate ? -c : c);
            else if (negate)
                it->second -= c;
            else
                it->second += c;
        }
        prune(terms_);
        return *this;
    }

    Ring ring_;
    std::map<Key, base_elem> terms_;
};

template <class Base>
bool drop_zero(const TruncPoly<Base>& a) {
    for (const auto& [k, c] : a.terms())
        if (!drop_zero(c)) return false;
    return true;
}

template <class Base>
bool unit_elem(const TruncPoly<Base>& a) {
    return unit_elem(a.constant_term());
}

/// a = c (1 + n) with n nilpotent: a^-1 = c^-1 sum (-n)^k.
template <class Base>
TruncPoly<Base> inverse_elem(const TruncPoly<Base>& a) {
    const auto& R = a.ring();
    const auto cinv = inverse_elem(a.constant_term());
    TruncPoly<Base> n = a * R.constant(cinv) - R.one();
    TruncPoly<Base> acc = R.one();
    TruncPoly<Base> pw = R.one();
    for (int k = 1; k <= R.total_cap(); ++k) {
        pw = pw * (-n);
        acc += pw;
    }
    return acc * R.constant(cinv);
}

template <class Base>
std::string elem_string(const TruncPoly<Base>& a) {
    return a.to_string();
}

}  // namespace ltk
