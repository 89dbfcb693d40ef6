#pragma once

// Lifting isomorphisms of formal group laws across a nilpotent ideal generated
// by the variables of a truncated polynomial ring K[e_1..e_r] over a field K.
// Each step solves the linearized cocycle equation
//   psi(F1(x,y)) - d1F2(phi x, phi y) psi(x) - d2F2(phi x, phi y) psi(y) = E
// for the correction psi by Gaussian elimination over K.

#include <algorithm>
#include <vector>

#include "ltk/fgl.hpp"

namespace ltk {

template <class K>
struct IsoLift {
    PowerSeries<TruncPolyRing<K>> phi;
    /// Coefficients up to this degree are uniquely determined by the equations available below D.
    int determined_degree;
};

namespace detail {

template <class K>
struct LinearSolution {
    std::vector<std::vector<elem_t<K>>> values;  // [rhs][unknown]
    std::vector<bool> determined;                // per unknown
};

/// Gauss-Jordan on rows = [coefficients | rhs...]; NoLift when inconsistent.
template <class K>
LinearSolution<K> solve_linear(const K& field, std::vector<std::vector<elem_t<K>>> M, int nunk, int nrhs) {
    using E = elem_t<K>;
    const int nrows = static_cast<int>(M.size());
    std::vector<int> pivot_row_of(nunk, -1);
    int row = 0;
    for (int c = 0; c < nunk && row < nrows; ++c) {
        int best = -1;
        int best_score = kInfinity;
        for (int r = row; r < nrows; ++r) {
            if (M[r][c].is_zero()) continue;
            const int s = pivot_score(M[r][c]);
            if (best < 0 || s < best_score) {
                best = r;
                best_score = s;
            }
        }
        if (best < 0) continue;
        std::swap(M[row], M[best]);
        const E inv = inverse_elem(M[row][c]);
        for (auto& e : M[row]) e = e * inv;
        for (int r = 0; r < nrows; ++r) {
            if (r == row || M[r][c].is_zero()) continue;
            const E f = M[r][c];
            for (int cc = 0; cc < nunk + nrhs; ++cc)
                if (!M[row][cc].is_zero()) M[r][cc] -= f * M[row][cc];
        }
        pivot_row_of[c] = row;
        ++row;
    }
    for (int r = row; r < nrows; ++r)
        for (int k = 0; k < nrhs; ++k)
            if (!M[r][nunk + k].is_zero()) fail(ErrorKind::NoLift, "linearized cocycle equation is inconsistent");
    LinearSolution<K> sol;
    sol.values.assign(nrhs, std::vector<E>(nunk, field.zero()));
    sol.determined.assign(nunk, false);
    for (int c = 0; c < nunk; ++c) {
        const int r = pivot_row_of[c];
        if (r < 0) continue;
        bool det = true;
        for (int f = 0; f < nunk && det; ++f)
            if (pivot_row_of[f] < 0 && !M[r][f].is_zero()) det = false;
        sol.determined[c] = det;
        for (int k = 0; k < nrhs; ++k) sol.values[k][c] = M[r][nunk + k];
    }
    return sol;
}

template <class K>
std::vector<typename TruncPolyRing<K>::Key> ideal_monomials(const TruncPolyRing<K>& A, int degree) {
    using Key = typename TruncPolyRing<K>::Key;
    std::vector<Key> out;
    std::vector<int> e(A.nvars(), 0);
    auto rec = [&](auto&& self, int i, int left) -> void {
        if (i == A.nvars()) {
            if (left != 0) return;
            Key k = 0;
            for (int v = 0; v < A.nvars(); ++v) k += static_cast<Key>(e[v]) << (8 * v);
            if (A.allowed(k)) out.push_back(k);
            return;
        }
        for (int x = 0; x <= left; ++x) {
            e[i] = x;
            self(self, i + 1, left - x);
        }
        e[i] = 0;
    };
    rec(rec, 0, degree);
    return out;
}

}  // namespace detail

template <class K>
FormalGroupLaw<K> reduce_mod_ideal(const FormalGroupLaw<TruncPolyRing<K>>& G) {
    const K& k = G.ring.base();
    return {k, G.p, G.D, G.F.map_coeffs(k, [](const TruncPoly<K>& c) { return c.constant_term(); })};
}

template <class K>
PowerSeries<K> reduce_mod_ideal(const PowerSeries<TruncPolyRing<K>>& f) {
    return f.map_coeffs(f.ring().base(), [](const TruncPoly<K>& c) { return c.constant_term(); });
}

/// The unique isomorphism F1 -> F2 over K[e]/I reducing to phibar, to the determined degree.
template <class K>
IsoLift<K> lift_iso(const FormalGroupLaw<TruncPolyRing<K>>& F1, const FormalGroupLaw<TruncPolyRing<K>>& F2,
                    const PowerSeries<K>& phibar) {
    using P = TruncPolyRing<K>;
    using E = elem_t<K>;
    const P& A = F1.ring;
    const K& k = A.base();
    const int D = F1.D;
    const auto G1 = reduce_mod_ideal(F1);
    const auto G2 = reduce_mod_ideal(F2);
    if (!iso_check(G1, G2, phibar)) fail(ErrorKind::NoLift, "the given map is not an isomorphism modulo the ideal");

    PowerSeries<P> phi = phibar.map_coeffs(A, [&](const E& c) { return A.constant(c); });
    int Dw = D;
    // Columns L(x^j) of the linear operator, shared by every level.
    std::vector<BiSeries<K>> pw{BiSeries<K>(k, D)};
    pw[0].at(0, 0) = k.one();
    for (int j = 1; j <= D; ++j) pw.push_back(pw.back() * G1.F);
    const auto Ax = G2.F.dx().evaluate_separate(phibar, phibar);
    const auto Ay = G2.F.dy().evaluate_separate(phibar, phibar);

    for (int level = 1; level <= A.total_cap(); ++level) {
        const auto keys = detail::ideal_monomials(A, level);
        if (keys.empty()) break;
        const auto delta = F2.F.evaluate_separate(phi, phi) - F1.F.compose_into(phi);
        // Equations: coefficient (a, b) with 1 <= a + b <= Dw.
        std::vector<std::vector<E>> M;
        for (int a = 0; a <= Dw; ++a)
            for (int b = 0; a + b <= Dw; ++b) {
                if (a + b == 0) continue;
                std::vector<E> rowv;
                for (int j = 1; j <= Dw; ++j) {
                    E v = pw[j].at(a, b);
                    if (a >= j) v -= Ax.at(a - j, b);
                    if (b >= j) v -= Ay.at(a, b - j);
                    rowv.push_back(v);
                }
                for (auto key : keys) rowv.push_back(delta.at(a, b).coeff(key));
                M.push_back(std::move(rowv));
            }
        const auto sol = detail::solve_linear(k, std::move(M), Dw, static_cast<int>(keys.size()));
        int det = Dw;
        for (int j = 1; j <= Dw; ++j)
            if (!sol.determined[j - 1]) {
                det = j - 1;
                break;
            }
        for (std::size_t t = 0; t < keys.size(); ++t)
            for (int j = 1; j <= det; ++j) phi[j] += A.term(keys[t], sol.values[t][j - 1]);
        Dw = det;
        if (Dw < 1) fail(ErrorKind::NoLift, "no coefficient of the lift is determined at this degree bound");
    }
    std::vector<TruncPoly<K>> cs(phi.coeffs().begin(), phi.coeffs().begin() + Dw + 1);
    return {PowerSeries<P>(A, Dw, cs), Dw};
}

}  // namespace ltk
