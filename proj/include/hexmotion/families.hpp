#pragma once

#include "hexmotion/liaison.hpp"

#include <array>
#include <stdexcept>

namespace hexmotion {

/// A hexapod together with the platform scale that puts it on the
/// second-order tangency locus.
struct FamilyInstance {
    Hexapod hex;
    Rat gamma;
};

// --------------------------------------------------------------------------
// Concurrent-lines family
// --------------------------------------------------------------------------

struct LinesParams {
    Rat A1, mu1;
    Rat A3, B3, mu3;
    Rat A5, B5, C5, mu5;
    Rat d1_sq, d3_sq, d5_sq;
};

/// Base whose anchor lines P1P2, P3P4, P5P6 all pass through the origin
/// (P_2i = mu * P_2i-1), candidate platform the pairwise point swap.  The
/// matching scale is -1, and equal leg lengths within each pair place the
/// hexapod on the three-dimensional mobility subspace.
inline FamilyInstance lines_family(const LinesParams& q) {
    if (is_zero(q.A1)) throw std::invalid_argument("lines_family: P1 must be nonzero");
    if (is_zero(q.A3) && is_zero(q.B3)) throw std::invalid_argument("lines_family: P3 must be nonzero");
    if (is_zero(q.A5) && is_zero(q.B5) && is_zero(q.C5))
        throw std::invalid_argument("lines_family: P5 must be nonzero");
    if (q.mu1 == Rat(1) || q.mu3 == Rat(1) || q.mu5 == Rat(1))
        throw std::invalid_argument("lines_family: scaling along a line must not fix the point");

    Vec3 P1{q.A1, Rat(0), Rat(0)};
    Vec3 P3{q.A3, q.B3, Rat(0)};
    Vec3 P5{q.A5, q.B5, q.C5};
    Vec3 P2 = q.mu1 * P1, P4 = q.mu3 * P3, P6 = q.mu5 * P5;
    SixTuple base = six_tuple({P1, P2, P3, P4, P5, P6});
    SixTuple platform = six_tuple({P2, P1, P4, P3, P6, P5});
    std::array<Rat, 6> legs{q.d1_sq, q.d1_sq, q.d3_sq, q.d3_sq, q.d5_sq, q.d5_sq};
    return {{base, platform, legs}, Rat(-1)};
}

/// Whether the three anchor lines 12, 34, 56 of a tuple meet in one point.
inline bool lines_concurrent(const SixTuple& t) {
    // unknowns: common point X (3), line parameters t1, t2, t3
    Mat<Rat> sys(9, std::vector<Rat>(6, Rat(0)));
    std::vector<Rat> rhs(9, Rat(0));
    for (int line = 0; line < 3; ++line) {
        Vec3 origin = t[2 * line];
        Vec3 dir = t[2 * line + 1] - t[2 * line];
        for (int c = 0; c < 3; ++c) {
            size_t row = static_cast<size_t>(3 * line + c);
            sys[row][static_cast<size_t>(c)] = Rat(1);
            sys[row][static_cast<size_t>(3 + line)] = -dir[static_cast<size_t>(c)];
            rhs[row] = origin[static_cast<size_t>(c)];
        }
    }
    return solve_linear(sys, rhs).has_value();
}

// --------------------------------------------------------------------------
// Order-three symmetric family
// --------------------------------------------------------------------------

struct Order3Params {
    Rat a, b, c;
    Rat A, B, C;
    Rat d1_sq, d2_sq, d3_sq;
};

/// Base and platform built from two orbits of the coordinate 3-cycle
/// (x, y, z) -> (y, z, x); the platform reads the orbits in the order
/// (p4, p6, p5, p1, p3, p2) relative to the base, the scale is +1, and the
/// last three squared legs are determined by the first three.
inline FamilyInstance order3_family(const Order3Params& q) {
    Rat k = q.a * q.a + q.b * q.b + q.c * q.c - q.a * q.b - q.a * q.c - q.b * q.c;
    Rat K = q.A * q.A + q.B * q.B + q.C * q.C - q.A * q.B - q.A * q.C - q.B * q.C;
    if (is_zero(k) || is_zero(K))
        throw std::invalid_argument("order3_family: an anchor orbit collapses to a point");
    if (k == K) throw std::domain_error("order3_family: platform and base are congruent");

    Rat U = q.A * q.a - q.A * q.b + q.B * q.b - q.B * q.c - q.C * q.a + q.C * q.c;
    Rat V = q.A * q.a - q.A * q.c - q.B * q.a + q.B * q.b - q.C * q.b + q.C * q.c;
    Rat W = q.A * q.b - q.A * q.c - q.B * q.a + q.B * q.c + q.C * q.a - q.C * q.b;

    Rat e2 = q.d2_sq - q.d1_sq, e3 = q.d3_sq - q.d1_sq, kK = k * K;
    std::array<Rat, 6> legs;
    legs[0] = q.d1_sq;
    legs[1] = q.d2_sq;
    legs[2] = q.d3_sq;
    legs[3] = q.d1_sq - (U * W * e2 - V * W * e3) / kK;
    legs[4] = q.d1_sq + (U * V * e2 - U * W * e3) / kK;
    legs[5] = q.d1_sq + (V * W * e2 + U * V * e3) / kK;

    Vec3 p1{q.a, q.b, q.c}, p2{q.b, q.c, q.a}, p3{q.c, q.a, q.b};
    Vec3 p4{q.A, q.B, q.C}, p5{q.B, q.C, q.A}, p6{q.C, q.A, q.B};
    SixTuple base = six_tuple({p4, p6, p5, p1, p3, p2});
    SixTuple platform = six_tuple({p1, p2, p3, p4, p5, p6});
    return {{base, platform, legs}, Rat(1)};
}

// --------------------------------------------------------------------------
// Exact rigid-motion randomization
// --------------------------------------------------------------------------

/// Exact rotation matrix of the quaternion (e0, e1, e2, e3), entries divided
/// by the squared norm so the matrix is orthogonal over the rationals.
inline std::array<std::array<Rat, 3>, 3> rational_rotation(const std::array<Rat, 4>& e) {
    Rat N = e[0] * e[0] + e[1] * e[1] + e[2] * e[2] + e[3] * e[3];
    if (is_zero(N)) throw std::invalid_argument("rational_rotation: zero quaternion");
    std::array<std::array<Rat, 3>, 3> R;
    R[0][0] = (e[0] * e[0] + e[1] * e[1] - e[2] * e[2] - e[3] * e[3]) / N;
    R[0][1] = Rat(2) * (e[1] * e[2] - e[0] * e[3]) / N;
    R[0][2] = Rat(2) * (e[1] * e[3] + e[0] * e[2]) / N;
    R[1][0] = Rat(2) * (e[1] * e[2] + e[0] * e[3]) / N;
    R[1][1] = (e[0] * e[0] - e[1] * e[1] + e[2] * e[2] - e[3] * e[3]) / N;
    R[1][2] = Rat(2) * (e[2] * e[3] - e[0] * e[1]) / N;
    R[2][0] = Rat(2) * (e[1] * e[3] - e[0] * e[2]) / N;
    R[2][1] = Rat(2) * (e[2] * e[3] + e[0] * e[1]) / N;
    R[2][2] = (e[0] * e[0] - e[1] * e[1] - e[2] * e[2] + e[3] * e[3]) / N;
    return R;
}

inline SixTuple transform_tuple(const std::array<std::array<Rat, 3>, 3>& R, const Vec3& t,
                                const SixTuple& s) {
    SixTuple out = s;
    for (int i = 0; i < 6; ++i) {
        Vec3 v{Rat(0), Rat(0), Rat(0)};
        for (size_t r = 0; r < 3; ++r)
            for (size_t c = 0; c < 3; ++c) v[r] += R[r][c] * s[i][c];
        out[i] = v + t;
    }
    return out;
}

}  // namespace hexmotion
