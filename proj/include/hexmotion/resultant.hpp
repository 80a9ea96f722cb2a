#pragma once

#include "hexmotion/mpoly.hpp"
#include "hexmotion/upoly.hpp"

#include <stdexcept>
#include <vector>

namespace hexmotion {

/// Fraction-free determinant (Bareiss) over the polynomial ring.
inline MPoly det_bareiss(std::vector<std::vector<MPoly>> m) {
    size_t n = m.size();
    if (n == 0) throw std::invalid_argument("det_bareiss: empty matrix");
    int nv = m[0][0].nv;
    if (n == 1) return m[0][0];
    MPoly prev = MPoly::constant(nv, Rat(1));
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
            if (swap_row == n) return MPoly::zero(nv);
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) {
                MPoly num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                auto q = num.exact_div(prev);
                if (!q) throw std::runtime_error("det_bareiss: inexact division");
                m[i][j] = *q;
            }
        prev = m[k][k];
    }
    return sign < 0 ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

namespace detail {

/// Classic Sylvester matrix of (A, B) in var with formal degrees
/// (deg_var A, deg_var B): deg(B) rows of A-coefficients on top.
inline std::vector<std::vector<MPoly>> sylvester_matrix_classic(const MPoly& A, const MPoly& B, int var) {
    int m = A.degree_in(var), n = B.degree_in(var);
    if (m < 1 || n < 1) throw std::invalid_argument("sylvester_matrix: both degrees must be >= 1");
    int nv = A.nv;
    auto ca = A.coeffs_in(var);
    auto cb = B.coeffs_in(var);
    auto coef = [&](std::map<int, MPoly>& cs, int k) {
        auto it = cs.find(k);
        return it == cs.end() ? MPoly::zero(nv) : it->second;
    };
    size_t sz = static_cast<size_t>(m + n);
    std::vector<std::vector<MPoly>> M(sz, std::vector<MPoly>(sz, MPoly::zero(nv)));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k <= m; ++k) M[i][i + k] = coef(ca, m - k);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k <= n; ++k) M[n + i][i + k] = coef(cb, n - k);
    return M;
}

inline UPoly<Rat> specialize_to_upoly(const MPoly& p, int var, const std::vector<std::pair<int, Rat>>& subst) {
    MPoly q = p;
    for (const auto& [w, val] : subst) q = q.eval_partial(w, val);
    return mpoly_to_upoly(q, var);
}

/// Classic resultant with elimination variable var.  Uses grid interpolation
/// when at most two other variables occur, otherwise Bareiss on the Sylvester
/// matrix.  Interpolation nodes are chosen so both leading coefficients
/// survive specialization (specialization then commutes with the resultant).
inline MPoly resultant_classic_mpoly(const MPoly& A, const MPoly& B, int var, int bound_override = -1) {
    int nv = A.nv;
    if (A.is_zero() || B.is_zero()) return MPoly::zero(nv);
    int m = A.degree_in(var), n = B.degree_in(var);
    if (m <= 0 && n <= 0) return MPoly::constant(nv, Rat(1));
    if (m <= 0) return A.pow(static_cast<uint32_t>(n));
    if (n <= 0) return B.pow(static_cast<uint32_t>(m));

    std::vector<int> rest;
    for (int i = 0; i < nv; ++i)
        if (i != var && (A.degree_in(i) > 0 || B.degree_in(i) > 0)) rest.push_back(i);

    if (rest.empty()) {
        Rat r = resultant_classic(mpoly_to_upoly(A, var), mpoly_to_upoly(B, var));
        return MPoly::constant(nv, r);
    }

    bool homog = A.is_homogeneous() && B.is_homogeneous();
    if (homog && rest.size() > 1) {
        // Chart reduction: the resultant of homogeneous inputs is homogeneous
        // of degree exactly D (or zero), so it can be recovered from the
        // chart c = 1 by homogenizing back to degree D.
        int c = rest[0];
        int D = n * (A.total_degree() - m) + m * B.total_degree();
        MPoly f = resultant_classic_mpoly(A.eval_partial(c, Rat(1)), B.eval_partial(c, Rat(1)), var, D);
        if (f.is_zero()) return f;
        return f.homogenize(c, D);
    }
    if (rest.size() > 2) return det_bareiss(sylvester_matrix_classic(A, B, var));

    int bound;
    if (bound_override >= 0) {
        bound = bound_override;
    } else if (homog) {
        bound = n * (A.total_degree() - m) + m * B.total_degree();
    } else {
        bound = n * A.total_degree() + m * B.total_degree();
    }
    int npts = bound + 1;

    MPoly lcA = A.coeffs_in(var).rbegin()->second;
    MPoly lcB = B.coeffs_in(var).rbegin()->second;

    auto node = [](int k) {
        if (k == 0) return Rat(0);
        int v = (k + 1) / 2;
        return (k % 2) ? Rat(v) : Rat(-v);
    };

    if (rest.size() == 1) {
        int w = rest[0];
        std::vector<Rat> nodes;
        std::vector<MPoly> vals;
        for (int k = 0; static_cast<int>(nodes.size()) < npts; ++k) {
            if (k > 100 * npts + 1000) throw std::runtime_error("resultant: node search exhausted");
            Rat tv = node(k);
            if (lcA.eval_partial(w, tv).is_zero() || lcB.eval_partial(w, tv).is_zero()) continue;
            Rat r = resultant_classic(specialize_to_upoly(A, var, {{w, tv}}),
                                      specialize_to_upoly(B, var, {{w, tv}}));
            nodes.push_back(tv);
            vals.push_back(MPoly::constant(nv, r));
        }
        return newton_interpolate(w, nodes, vals);
    }

    int w1 = rest[0], w2 = rest[1];
    std::vector<Rat> nodes1;
    std::vector<MPoly> vals1;
    for (int k1 = 0; static_cast<int>(nodes1.size()) < npts; ++k1) {
        if (k1 > 100 * npts + 1000) throw std::runtime_error("resultant: node search exhausted");
        Rat t1 = node(k1);
        MPoly lcA1 = lcA.eval_partial(w1, t1);
        MPoly lcB1 = lcB.eval_partial(w1, t1);
        if (lcA1.is_zero() || lcB1.is_zero()) continue;
        std::vector<Rat> nodes2;
        std::vector<MPoly> vals2;
        for (int k2 = 0; static_cast<int>(nodes2.size()) < npts; ++k2) {
            if (k2 > 100 * npts + 1000) throw std::runtime_error("resultant: node search exhausted");
            Rat t2 = node(k2);
            if (lcA1.eval_partial(w2, t2).is_zero() || lcB1.eval_partial(w2, t2).is_zero()) continue;
            Rat r = resultant_classic(specialize_to_upoly(A, var, {{w1, t1}, {w2, t2}}),
                                      specialize_to_upoly(B, var, {{w1, t1}, {w2, t2}}));
            nodes2.push_back(t2);
            vals2.push_back(MPoly::constant(nv, r));
        }
        nodes1.push_back(t1);
        vals1.push_back(newton_interpolate(w2, nodes2, vals2));
    }
    return newton_interpolate(w1, nodes1, vals1);
}

}  // namespace detail

/// Resultant eliminating var, oriented so that for univariate F, G:
/// sylvester_resultant(t - a, t - b) = b - a.
inline MPoly sylvester_resultant(const MPoly& F, const MPoly& G, int var) {
    return detail::resultant_classic_mpoly(G, F, var);
}

}  // namespace hexmotion
