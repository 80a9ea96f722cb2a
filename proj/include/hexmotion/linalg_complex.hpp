#pragma once

#include "hexmotion/bigfloat.hpp"

#include <utility>
#include <vector>

namespace hexmotion {

using CMat = std::vector<std::vector<BigComplex>>;
using CVec = std::vector<BigComplex>;

inline CMat cmat_transpose(const CMat& m) {
    if (m.empty()) return {};
    CMat r(m[0].size(), CVec(m.size(), BigComplex(m[0][0].prec())));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[i].size(); ++j) r[j][i] = m[i][j];
    return r;
}

inline CVec cmat_apply(const CMat& m, const CVec& x, mpfr_prec_t prec) {
    CVec r(m.size(), BigComplex(prec));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < x.size(); ++j) r[i] += m[i][j] * x[j];
    return r;
}

/// Row-pivoted Gauss-Jordan with a zero threshold; returns pivot columns.
/// Entries below tol (in absolute value, squared compare) are treated as 0.
inline std::vector<size_t> crref(CMat& m, const BigFloat& tol) {
    std::vector<size_t> pivots;
    if (m.empty()) return pivots;
    size_t rows = m.size(), cols = m[0].size(), r = 0;
    BigFloat tol2 = tol * tol;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t best = r;
        BigFloat best_a2 = m[r][c].abs2();
        for (size_t i = r + 1; i < rows; ++i) {
            BigFloat a2 = m[i][c].abs2();
            if (a2 > best_a2) {
                best = i;
                best_a2 = a2;
            }
        }
        if (!(best_a2 > tol2)) continue;
        std::swap(m[best], m[r]);
        BigComplex piv = m[r][c];
        for (size_t j = c; j < cols; ++j) m[r][j] = m[r][j] / piv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            BigComplex f = m[i][c];
            if (f.abs2().is_zero()) continue;
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline size_t crank(CMat m, const BigFloat& tol) { return crref(m, tol).size(); }

inline std::vector<CVec> cnullspace(CMat m, const BigFloat& tol) {
    std::vector<CVec> basis;
    if (m.empty()) return basis;
    mpfr_prec_t prec = m[0][0].prec();
    size_t cols = m[0].size();
    auto pivots = crref(m, tol);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    for (size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        CVec v(cols, BigComplex(prec));
        v[f] = BigComplex::from_rat(Rat(1), prec);
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

inline std::vector<CVec> cleft_nullspace(const CMat& m, const BigFloat& tol) {
    return cnullspace(cmat_transpose(m), tol);
}

/// Determinant of a square matrix by partial-pivot elimination.
inline BigComplex cdet(CMat m, mpfr_prec_t prec) {
    size_t n = m.size();
    BigComplex det = BigComplex::from_rat(Rat(1), prec);
    for (size_t c = 0; c < n; ++c) {
        size_t best = c;
        for (size_t i = c + 1; i < n; ++i)
            if (m[best][c].abs2() < m[i][c].abs2()) best = i;
        if (m[best][c].abs2().is_zero()) return BigComplex(prec);
        if (best != c) {
            std::swap(m[best], m[c]);
            det = -det;
        }
        det = det * m[c][c];
        for (size_t i = c + 1; i < n; ++i) {
            BigComplex f = m[i][c] / m[c][c];
            for (size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

/// Particular solution + kernel basis of M x = b under threshold tol;
/// first element of the pair is empty when the system is inconsistent.
inline std::pair<CVec, std::vector<CVec>> csolve_affine(CMat m, const CVec& b, const BigFloat& tol) {
    size_t rows = m.size();
    size_t cols = rows ? m[0].size() : 0;
    mpfr_prec_t prec = rows ? m[0][0].prec() : 64;
    for (size_t i = 0; i < rows; ++i) m[i].push_back(b[i]);
    auto pivots = crref(m, tol);
    if (!pivots.empty() && pivots.back() == cols) return {CVec{}, {}};
    CVec x(cols, BigComplex(prec));
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = m[r][cols];
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<CVec> basis;
    for (size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        CVec v(cols, BigComplex(prec));
        v[f] = BigComplex::from_rat(Rat(1), prec);
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][f];
        basis.push_back(std::move(v));
    }
    return {std::move(x), std::move(basis)};
}

}  // namespace hexmotion
