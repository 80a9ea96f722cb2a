#pragma once

#include "hexmotion/gauss.hpp"
#include "hexmotion/rational.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace hexmotion {

template <class K>
using Mat = std::vector<std::vector<K>>;

template <class K>
Mat<K> mat_transpose(const Mat<K>& m) {
    if (m.empty()) return {};
    Mat<K> r(m[0].size(), std::vector<K>(m.size(), K(0)));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[i].size(); ++j) r[j][i] = m[i][j];
    return r;
}

template <class K>
std::vector<K> mat_apply(const Mat<K>& m, const std::vector<K>& x) {
    std::vector<K> r(m.size(), K(0));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < x.size(); ++j) r[i] += m[i][j] * x[j];
    return r;
}

/// In-place reduced row echelon form; returns the pivot columns.
template <class K>
std::vector<size_t> rref(Mat<K>& m) {
    std::vector<size_t> pivots;
    if (m.empty()) return pivots;
    size_t rows = m.size(), cols = m[0].size(), r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && is_zero(m[p][c])) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        K inv = K(1) / m[r][c];
        for (size_t j = c; j < cols; ++j) m[r][j] = inv * m[r][j];
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || is_zero(m[i][c])) continue;
            K f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class K>
size_t mat_rank(Mat<K> m) {
    return rref(m).size();
}

/// Basis of the right kernel.
template <class K>
std::vector<std::vector<K>> nullspace(Mat<K> m) {
    std::vector<std::vector<K>> basis;
    if (m.empty()) return basis;
    size_t cols = m[0].size();
    auto pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    for (size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<K> v(cols, K(0));
        v[f] = K(1);
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class K>
std::vector<std::vector<K>> left_nullspace(const Mat<K>& m) {
    return nullspace(mat_transpose(m));
}

/// Particular solution of A x = b (free variables set to zero); nullopt when
/// the system is inconsistent.
template <class K>
std::optional<std::vector<K>> solve_linear(Mat<K> a, const std::vector<K>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("solve_linear: size mismatch");
    size_t cols = a.empty() ? 0 : a[0].size();
    for (size_t i = 0; i < a.size(); ++i) a[i].push_back(b[i]);
    auto pivots = rref(a);
    if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
    std::vector<K> x(cols, K(0));
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = a[r][cols];
    return x;
}

template <class K>
K det_field(Mat<K> m) {
    size_t n = m.size();
    K det(1);
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && is_zero(m[p][c])) ++p;
        if (p == n) return K(0);
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        K inv = K(1) / m[c][c];
        for (size_t i = c + 1; i < n; ++i) {
            K f = inv * m[i][c];
            if (is_zero(f)) continue;
            for (size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

}  // namespace hexmotion
