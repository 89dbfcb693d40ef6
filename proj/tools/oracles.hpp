#pragma once

// Independent oracles used by the acceptance suites and the unit tests.

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "ltk/witt.hpp"

namespace ltk::oracle {

using Q = boost::multiprecision::cpp_rational;

/// [p](x) = l^-1(p l(x)) over exact rationals, l the Honda logarithm sum x^{p^{nk}} / p^k.
inline std::vector<Q> rational_honda_pseries(int p, int n, int D) {
    std::vector<Q> l(D + 1, 0);
    Q denom = 1;
    for (long deg = 1; deg <= D; deg *= static_cast<long>(ipow(p, n))) {
        l[deg] = 1 / denom;
        denom *= p;
    }
    auto mul = [D](const std::vector<Q>& a, const std::vector<Q>& b) {
        std::vector<Q> r(D + 1, 0);
        for (int i = 0; i <= D; ++i)
            for (int j = 0; i + j <= D; ++j) r[i + j] += a[i] * b[j];
        return r;
    };
    auto compose = [&](const std::vector<Q>& f, const std::vector<Q>& g) {
        std::vector<Q> acc(D + 1, 0);
        for (int k = D; k >= 0; --k) {
            acc = mul(acc, g);
            acc[0] += f[k];
        }
        return acc;
    };
    std::vector<Q> e(D + 1, 0);
    e[1] = 1;
    for (int k = 2; k <= D; ++k) e[k] -= compose(l, e)[k];
    std::vector<Q> pl = l;
    for (auto& c : pl) c *= p;
    return compose(e, pl);
}

/// q mod m for a rational with denominator prime to m; -1 otherwise.
inline i64 rational_mod(const Q& q, i64 m) {
    using boost::multiprecision::cpp_int;
    const cpp_int num = boost::multiprecision::numerator(q);
    const cpp_int den = boost::multiprecision::denominator(q);
    const i64 nm = static_cast<i64>(((num % m) + m) % m);
    const i64 dm = static_cast<i64>(((den % m) + m) % m);
    for (i64 inv = 1; inv < m; ++inv)
        if (mul_mod(dm, inv, m) == 1) return mul_mod(nm, inv, m);
    return -1;
}

/// The unique y in [0, p^n) with y = a mod p and y^p = y, by search.
inline i64 brute_teichmuller(int p, int n, i64 a) {
    const i64 pn = ipow(p, n);
    for (i64 y = 0; y < pn; ++y) {
        if (y % p != a) continue;
        i64 acc = 1;
        for (int i = 0; i < p; ++i) acc = acc * y % pn;
        if (acc == y) return y;
    }
    return -1;
}

/// v_p(n!) by Legendre's formula.
inline i64 legendre(i64 n, int p) {
    i64 v = 0;
    for (i64 pk = p; pk <= n; pk *= p) v += n / pk;
    return v;
}

}  // namespace ltk::oracle
