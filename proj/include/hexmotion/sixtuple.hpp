#pragma once

#include "hexmotion/linalg_exact.hpp"
#include "hexmotion/rational.hpp"

#include <array>
#include <stdexcept>
#include <vector>

namespace hexmotion {

using Vec3 = std::array<Rat, 3>;

inline Vec3 vec3(const Rat& x, const Rat& y, const Rat& z) { return {x, y, z}; }

inline Vec3 operator+(const Vec3& a, const Vec3& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline Vec3 operator*(const Rat& s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline Rat dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

/// Six labelled anchor points in affine 3-space.
struct SixTuple {
    std::array<Vec3, 6> pt;

    const Vec3& operator[](int i) const { return pt[static_cast<size_t>(i)]; }
    Vec3& operator[](int i) { return pt[static_cast<size_t>(i)]; }

    bool all_distinct() const {
        for (int i = 0; i < 6; ++i)
            for (int j = i + 1; j < 6; ++j)
                if (pt[i] == pt[j]) return false;
        return true;
    }

    /// Dimension of the affine span (0..3).
    int affine_rank() const {
        Mat<Rat> d(5, std::vector<Rat>(3, Rat(0)));
        for (size_t i = 1; i < 6; ++i) {
            Vec3 v = pt[i] - pt[0];
            for (size_t c = 0; c < 3; ++c) d[i - 1][c] = v[c];
        }
        return static_cast<int>(mat_rank(d));
    }

    bool planar() const { return affine_rank() <= 2; }

    bool triple_collinear(int i, int j, int k) const {
        Vec3 u = pt[j] - pt[i], v = pt[k] - pt[i];
        Vec3 c = cross(u, v);
        return is_zero(c[0]) && is_zero(c[1]) && is_zero(c[2]);
    }

    std::vector<std::array<int, 3>> collinear_triples() const {
        std::vector<std::array<int, 3>> out;
        for (int i = 0; i < 6; ++i)
            for (int j = i + 1; j < 6; ++j)
                for (int k = j + 1; k < 6; ++k)
                    if (triple_collinear(i, j, k)) out.push_back({i, j, k});
        return out;
    }

    /// True when some line carries four or more of the six points.
    bool has_four_collinear() const {
        for (int i = 0; i < 6; ++i)
            for (int j = i + 1; j < 6; ++j) {
                int on_line = 0;
                for (int k = 0; k < 6; ++k) {
                    if (k == i || k == j) {
                        ++on_line;
                        continue;
                    }
                    if (triple_collinear(i, j, k)) ++on_line;
                }
                if (on_line >= 4) return true;
            }
        return false;
    }
};

inline SixTuple six_tuple(std::array<Vec3, 6> pts) {
    SixTuple t{std::move(pts)};
    if (!t.all_distinct()) throw std::invalid_argument("six_tuple: points must be pairwise distinct");
    return t;
}

/// Coefficients of the plane-difference linear form
/// H_ij = (s_i - s_j) x + (t_i - t_j) y + (u_i - u_j) z.
inline Vec3 h_form(const SixTuple& tup, int i, int j) {
    if (i == j) throw std::invalid_argument("h_form: indices must differ");
    if (i < 0 || i >= 6 || j < 0 || j >= 6) throw std::out_of_range("h_form: index out of range");
    return tup[i] - tup[j];
}

}  // namespace hexmotion
