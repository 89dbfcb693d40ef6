#pragma once

// Power series truncated at total degree D over a generic coefficient ring R.
// R must provide zero(), one(), from_int(); elements need + - * and is_zero().

#include <string>
#include <vector>

#include "ltk/ring_traits.hpp"

namespace ltk {

template <class R>
class PowerSeries {
public:
    using E = elem_t<R>;

    PowerSeries(R ring, int D) : ring_(std::move(ring)), D_(D), c_(D + 1, ring_.zero()) {
        require(D >= 1, ErrorKind::InvalidArgument, "degree bound must be >= 1");
    }
    PowerSeries(R ring, int D, std::vector<E> c) : PowerSeries(std::move(ring), D) {
        for (int k = 0; k <= D_ && k < static_cast<int>(c.size()); ++k) c_[k] = c[k];
    }
    static PowerSeries x(R ring, int D) {
        PowerSeries s(ring, D);
        s.c_[1] = s.ring_.one();
        return s;
    }
    static PowerSeries monomial(R ring, int D, int k, E c) {
        PowerSeries s(ring, D);
        if (k <= D) s.c_[k] = std::move(c);
        return s;
    }

    const R& ring() const noexcept { return ring_; }
    int D() const noexcept { return D_; }
    const E& operator[](int k) const { return c_.at(k); }
    E& operator[](int k) { return c_.at(k); }
    const std::vector<E>& coeffs() const noexcept { return c_; }

    /// Least degree with a nonzero coefficient, D + 1 if none.
    int valuation() const {
        for (int k = 0; k <= D_; ++k)
            if (!c_[k].is_zero()) return k;
        return D_ + 1;
    }
    bool is_zero() const { return valuation() > D_; }

    PowerSeries operator-() const {
        PowerSeries r = *this;
        for (auto& a : r.c_) a = -a;
        return r;
    }
    PowerSeries& operator+=(const PowerSeries& o) {
        for (int k = 0; k <= D_; ++k) c_[k] += o.c_[k];
        return *this;
    }
    PowerSeries& operator-=(const PowerSeries& o) {
        for (int k = 0; k <= D_; ++k) c_[k] -= o.c_[k];
        return *this;
    }
    friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
    friend PowerSeries operator-(PowerSeries a, const PowerSeries& b) { return a -= b; }
    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
        PowerSeries r(a.ring_, a.D_);
        for (int i = 0; i <= a.D_; ++i) {
            if (drop_zero(a.c_[i])) continue;
            for (int j = 0; i + j <= a.D_; ++j) {
                if (drop_zero(b.c_[j])) continue;
                r.c_[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return r;
    }
    PowerSeries scale(const E& s) const {
        PowerSeries r = *this;
        for (auto& a : r.c_) a = a * s;
        return r;
    }
    friend bool operator==(const PowerSeries& a, const PowerSeries& b) { return (a - b).is_zero(); }

    /// this(g) for g(0) = 0.
    PowerSeries compose(const PowerSeries& g) const {
        require(g.c_[0].is_zero(), ErrorKind::ValuationTooLow, "composition needs g(0) = 0");
        PowerSeries acc(ring_, D_);
        acc.c_[0] = c_[0];
        PowerSeries pw = g;
        for (int k = 1; k <= D_; ++k) {
            if (k > 1) pw = pw * g;
            if (drop_zero(c_[k])) continue;
            acc += pw.scale(c_[k]);
        }
        return acc;
    }

    /// Compositional inverse of x + O(x^2), degree by degree without division.
    PowerSeries reversion() const {
        require(c_[0].is_zero() && (c_[1] - ring_.one()).is_zero(), ErrorKind::InvalidArgument,
                "reversion needs a series x + O(x^2)");
        PowerSeries g = x(ring_, D_);
        for (int k = 2; k <= D_; ++k) {
            PowerSeries e = compose(g);
            g.c_[k] -= e.c_[k];
        }
        return g;
    }

    /// Apply fn to every coefficient, landing in another ring.
    template <class R2, class Fn>
    PowerSeries<R2> map_coeffs(const R2& target, Fn&& fn) const {
        std::vector<elem_t<R2>> out;
        for (const auto& a : c_) out.push_back(fn(a));
        return PowerSeries<R2>(target, D_, std::move(out));
    }

    std::string to_string() const {
        std::string s;
        for (int k = 0; k <= D_; ++k) {
            if (c_[k].is_zero()) continue;
            if (!s.empty()) s += " + ";
            const std::string cs = elem_string(c_[k]);
            const bool compound = cs.find(' ') != std::string::npos;
            if (k == 0) {
                s += cs;
                continue;
            }
            if (cs != "1") s += (compound ? "(" + cs + ")" : cs) + "*";
            s += k == 1 ? "x" : "x^" + std::to_string(k);
        }
        return (s.empty() ? "0" : s) + " + O(x^" + std::to_string(D_ + 1) + ")";
    }

private:
    R ring_;
    int D_;
    std::vector<E> c_;
};

/// Bivariate series with terms x^i y^j, i + j <= D.
template <class R>
class BiSeries {
public:
    using E = elem_t<R>;

    BiSeries(R ring, int D) : ring_(std::move(ring)), D_(D), c_((D + 1) * (D + 1), ring_.zero()) {}

    static BiSeries x(R ring, int D) {
        BiSeries s(ring, D);
        s.at(1, 0) = s.ring_.one();
        return s;
    }
    static BiSeries y(R ring, int D) {
        BiSeries s(ring, D);
        s.at(0, 1) = s.ring_.one();
        return s;
    }
    /// f(x) viewed as a bivariate series.
    static BiSeries in_x(const PowerSeries<R>& f) {
        BiSeries s(f.ring(), f.D());
        for (int i = 0; i <= f.D(); ++i) s.at(i, 0) = f[i];
        return s;
    }
    static BiSeries in_y(const PowerSeries<R>& f) {
        BiSeries s(f.ring(), f.D());
        for (int j = 0; j <= f.D(); ++j) s.at(0, j) = f[j];
        return s;
    }

    const R& ring() const noexcept { return ring_; }
    int D() const noexcept { return D_; }
    E& at(int i, int j) { return c_.at(i * (D_ + 1) + j); }
    const E& at(int i, int j) const { return c_.at(i * (D_ + 1) + j); }

    bool is_zero() const {
        for (int i = 0; i <= D_; ++i)
            for (int j = 0; i + j <= D_; ++j)
                if (!at(i, j).is_zero()) return false;
        return true;
    }
    /// First (i, j) in total-degree order with a nonzero coefficient; {-1, -1} if none.
    std::pair<int, int> first_nonzero() const {
        for (int t = 0; t <= D_; ++t)
            for (int i = 0; i <= t; ++i)
                if (!at(i, t - i).is_zero()) return {i, t - i};
        return {-1, -1};
    }

    BiSeries operator-() const {
        BiSeries r = *this;
        for (auto& a : r.c_) a = -a;
        return r;
    }
    BiSeries& operator+=(const BiSeries& o) {
        for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
        return *this;
    }
    BiSeries& operator-=(const BiSeries& o) {
        for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
        return *this;
    }
    friend BiSeries operator+(BiSeries a, const BiSeries& b) { return a += b; }
    friend BiSeries operator-(BiSeries a, const BiSeries& b) { return a -= b; }
    friend BiSeries operator*(const BiSeries& a, const BiSeries& b) {
        BiSeries r(a.ring_, a.D_);
        const int D = a.D_;
        for (int i1 = 0; i1 <= D; ++i1)
            for (int j1 = 0; i1 + j1 <= D; ++j1) {
                const E& x1 = a.at(i1, j1);
                if (drop_zero(x1)) continue;
                for (int i2 = 0; i1 + j1 + i2 <= D; ++i2)
                    for (int j2 = 0; i1 + j1 + i2 + j2 <= D; ++j2) {
                        const E& x2 = b.at(i2, j2);
                        if (drop_zero(x2)) continue;
                        r.at(i1 + i2, j1 + j2) += x1 * x2;
                    }
            }
        return r;
    }
    BiSeries scale(const E& s) const {
        BiSeries r = *this;
        for (auto& a : r.c_) a = a * s;
        return r;
    }
    friend bool operator==(const BiSeries& a, const BiSeries& b) { return (a - b).is_zero(); }

    /// this(f(t), g(t)) for f(0) = g(0) = 0.
    PowerSeries<R> evaluate(const PowerSeries<R>& f, const PowerSeries<R>& g) const {
        require(f[0].is_zero() && g[0].is_zero(), ErrorKind::ValuationTooLow, "substitution needs zero constant terms");
        const int D = D_;
        std::vector<PowerSeries<R>> fp{PowerSeries<R>(ring_, D)}, gp{PowerSeries<R>(ring_, D)};
        fp[0][0] = ring_.one();
        gp[0][0] = ring_.one();
        for (int k = 1; k <= D; ++k) {
            fp.push_back(fp.back() * f);
            gp.push_back(gp.back() * g);
        }
        PowerSeries<R> acc(ring_, D);
        for (int j = 0; j <= D; ++j) {
            // inner = sum_i c_ij f^i
            PowerSeries<R> inner(ring_, D);
            bool any = false;
            for (int i = 0; i + j <= D; ++i) {
                if (drop_zero(at(i, j))) continue;
                inner += fp[i].scale(at(i, j));
                any = true;
            }
            if (any) acc += inner * gp[j];
        }
        return acc;
    }

    /// Univariate e applied to this, requiring this(0,0) = 0.
    BiSeries compose_into(const PowerSeries<R>& e) const {
        require(at(0, 0).is_zero(), ErrorKind::ValuationTooLow, "composition needs zero constant term");
        // Powers rather than Horner: this^k vanishes below total degree k, so products stay sparse.
        BiSeries acc(ring_, D_);
        acc.at(0, 0) = e[0];
        BiSeries pw = *this;
        for (int k = 1; k <= D_; ++k) {
            if (k > 1) pw = pw * *this;
            if (drop_zero(e[k])) continue;
            acc += pw.scale(e[k]);
        }
        return acc;
    }

    /// this(f(x), g(y)) for univariate f, g without constant terms.
    BiSeries evaluate_separate(const PowerSeries<R>& f, const PowerSeries<R>& g) const {
        require(f[0].is_zero() && g[0].is_zero(), ErrorKind::ValuationTooLow, "substitution needs zero constant terms");
        const int D = D_;
        std::vector<PowerSeries<R>> fp{PowerSeries<R>(ring_, D)}, gp{PowerSeries<R>(ring_, D)};
        fp[0][0] = ring_.one();
        gp[0][0] = ring_.one();
        for (int k = 1; k <= D; ++k) {
            fp.push_back(fp.back() * f);
            gp.push_back(gp.back() * g);
        }
        BiSeries acc(ring_, D);
        for (int i = 0; i <= D; ++i)
            for (int j = 0; i + j <= D; ++j) {
                const E& cij = at(i, j);
                if (drop_zero(cij)) continue;
                for (int a = i; a <= D; ++a) {
                    if (drop_zero(fp[i][a])) continue;
                    const E left = cij * fp[i][a];
                    for (int b = j; a + b <= D; ++b) {
                        if (drop_zero(gp[j][b])) continue;
                        acc.at(a, b) += left * gp[j][b];
                    }
                }
            }
        return acc;
    }

    /// d/dx and d/dy, losing the top degree.
    BiSeries dx() const {
        BiSeries r(ring_, D_);
        for (int i = 1; i <= D_; ++i)
            for (int j = 0; i + j <= D_; ++j) r.at(i - 1, j) = at(i, j) * ring_.from_int(i);
        return r;
    }
    BiSeries dy() const {
        BiSeries r(ring_, D_);
        for (int i = 0; i <= D_; ++i)
            for (int j = 1; i + j <= D_; ++j) r.at(i, j - 1) = at(i, j) * ring_.from_int(j);
        return r;
    }

    template <class R2, class Fn>
    BiSeries<R2> map_coeffs(const R2& target, Fn&& fn) const {
        BiSeries<R2> r(target, D_);
        for (int i = 0; i <= D_; ++i)
            for (int j = 0; i + j <= D_; ++j) r.at(i, j) = fn(at(i, j));
        return r;
    }

private:
    R ring_;
    int D_;
    std::vector<E> c_;
};

}  // namespace ltk
