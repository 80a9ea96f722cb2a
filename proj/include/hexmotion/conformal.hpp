#pragma once

#include "hexmotion/conic.hpp"
#include "hexmotion/linalg_complex.hpp"
#include "hexmotion/moebius.hpp"
#include "hexmotion/mpoly.hpp"
#include "hexmotion/sixtuple.hpp"

#include <array>
#include <stdexcept>
#include <vector>

namespace hexmotion {

/// Coordinates on the ambient P^16 of the conformal model:
/// (h : M : x : y : r) with M a 3x3 block, x and y vectors, 17 in total.
inline constexpr int kC17 = 17;
inline constexpr int c17_h() { return 0; }
inline constexpr int c17_m(int i, int j) { return 1 + 3 * i + j; }
inline constexpr int c17_x(int i) { return 10 + i; }
inline constexpr int c17_y(int i) { return 13 + i; }
inline constexpr int c17_r() { return 16; }

template <class T>
using Point17 = std::array<T, kC17>;

using Mat3 = std::array<std::array<Rat, 3>, 3>;

// --------------------------------------------------------------------------
// Defining quadrics
// --------------------------------------------------------------------------

inline constexpr int kCoreQuadricCount = 29;

/// Quadrics cutting out the model variety X in P^16.  The first 29 are the
/// kinematic block (M M^T - h^2 I, M^T M - h^2 I, adj(M) - h M^T, h x + M^T y,
/// M x + h y, h r - <x,x>, h r - <y,y>); the final 9 express
/// M skew(x) + skew(y) M = 0, which the first block only implies up to one
/// linear relation.  The full list spans a 37-dimensional space of quadrics.
inline const std::vector<MPoly>& x_defining_quadrics() {
    static const std::vector<MPoly> quadrics = [] {
        auto V = [](int i) { return MPoly::var(kC17, i); };
        MPoly h = V(c17_h()), r = V(c17_r());
        std::array<std::array<MPoly, 3>, 3> M;
        std::array<MPoly, 3> x, y;
        for (int i = 0; i < 3; ++i) {
            x[static_cast<size_t>(i)] = V(c17_x(i));
            y[static_cast<size_t>(i)] = V(c17_y(i));
            for (int j = 0; j < 3; ++j) M[static_cast<size_t>(i)][static_cast<size_t>(j)] = V(c17_m(i, j));
        }
        MPoly h2 = h * h;
        std::vector<MPoly> out;

        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) {
                MPoly q = MPoly::zero(kC17);
                for (int k = 0; k < 3; ++k) q = q + M[static_cast<size_t>(i)][static_cast<size_t>(k)] * M[static_cast<size_t>(j)][static_cast<size_t>(k)];
                if (i == j) q = q - h2;
                out.push_back(q);
            }
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) {
                MPoly q = MPoly::zero(kC17);
                for (int k = 0; k < 3; ++k) q = q + M[static_cast<size_t>(k)][static_cast<size_t>(i)] * M[static_cast<size_t>(k)][static_cast<size_t>(j)];
                if (i == j) q = q - h2;
                out.push_back(q);
            }
        // adj(M)(i,j) = cofactor(j,i)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
                int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
                MPoly adj = M[static_cast<size_t>(r0)][static_cast<size_t>(c0)] * M[static_cast<size_t>(r1)][static_cast<size_t>(c1)] -
                            M[static_cast<size_t>(r0)][static_cast<size_t>(c1)] * M[static_cast<size_t>(r1)][static_cast<size_t>(c0)];
                out.push_back(adj - h * M[static_cast<size_t>(j)][static_cast<size_t>(i)]);
            }
        for (int i = 0; i < 3; ++i) {
            MPoly q = h * x[static_cast<size_t>(i)];
            for (int k = 0; k < 3; ++k) q = q + M[static_cast<size_t>(k)][static_cast<size_t>(i)] * y[static_cast<size_t>(k)];
            out.push_back(q);
        }
        for (int i = 0; i < 3; ++i) {
            MPoly q = h * y[static_cast<size_t>(i)];
            for (int k = 0; k < 3; ++k) q = q + M[static_cast<size_t>(i)][static_cast<size_t>(k)] * x[static_cast<size_t>(k)];
            out.push_back(q);
        }
        MPoly xx = MPoly::zero(kC17), yy = MPoly::zero(kC17);
        for (int i = 0; i < 3; ++i) {
            xx = xx + x[static_cast<size_t>(i)] * x[static_cast<size_t>(i)];
            yy = yy + y[static_cast<size_t>(i)] * y[static_cast<size_t>(i)];
        }
        out.push_back(h * r - xx);
        out.push_back(h * r - yy);

        // M skew(x) + skew(y) M, entrywise; skew(a)(i,j) = -eps_{ijk} a_k
        auto skew = [&](const std::array<MPoly, 3>& a, int i, int j) {
            if (i == j) return MPoly::zero(kC17);
            if (i == 0 && j == 1) return MPoly::zero(kC17) - a[2];
            if (i == 0 && j == 2) return a[1];
            if (i == 1 && j == 0) return a[2];
            if (i == 1 && j == 2) return MPoly::zero(kC17) - a[0];
            if (i == 2 && j == 0) return MPoly::zero(kC17) - a[1];
            return a[0];  // (2,1)
        };
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                MPoly q = MPoly::zero(kC17);
                for (int k = 0; k < 3; ++k)
                    q = q + M[static_cast<size_t>(i)][static_cast<size_t>(k)] * skew(x, k, j) +
                        skew(y, i, k) * M[static_cast<size_t>(k)][static_cast<size_t>(j)];
                out.push_back(q);
            }
        return out;
    }();
    return quadrics;
}

// --------------------------------------------------------------------------
// Embedding of isometries
// --------------------------------------------------------------------------

/// (1 : R : -R^T tau : tau : <tau, tau>); requires R in SO(3), exactly.
inline Point17<Rat> embed_isometry(const Mat3& R, const Vec3& tau) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Rat dot_ij(0);
            for (int k = 0; k < 3; ++k) dot_ij += R[static_cast<size_t>(k)][static_cast<size_t>(i)] * R[static_cast<size_t>(k)][static_cast<size_t>(j)];
            if (dot_ij != Rat(i == j ? 1 : 0))
                throw std::invalid_argument("embed_isometry: matrix is not orthogonal");
        }
    Rat det = R[0][0] * (R[1][1] * R[2][2] - R[1][2] * R[2][1]) -
              R[0][1] * (R[1][0] * R[2][2] - R[1][2] * R[2][0]) +
              R[0][2] * (R[1][0] * R[2][1] - R[1][1] * R[2][0]);
    if (det != 1) throw std::invalid_argument("embed_isometry: matrix is not a rotation");
    Point17<Rat> p;
    p.fill(Rat(0));
    p[static_cast<size_t>(c17_h())] = Rat(1);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) p[static_cast<size_t>(c17_m(i, j))] = R[static_cast<size_t>(i)][static_cast<size_t>(j)];
    for (int i = 0; i < 3; ++i) {
        Rat xi(0);
        for (int k = 0; k < 3; ++k) xi -= R[static_cast<size_t>(k)][static_cast<size_t>(i)] * tau[static_cast<size_t>(k)];
        p[static_cast<size_t>(c17_x(i))] = xi;
        p[static_cast<size_t>(c17_y(i))] = tau[static_cast<size_t>(i)];
    }
    p[static_cast<size_t>(c17_r())] = dot(tau, tau);
    return p;
}

/// Inverse of embed_isometry on the chart h != 0: (R, tau) = (M / h, y / h).
inline std::pair<Mat3, Vec3> euler_project(const Point17<Rat>& p) {
    if (is_zero(p[static_cast<size_t>(c17_h())]))
        throw std::domain_error("euler_project: point lies on the boundary h = 0");
    Rat hinv = Rat(1) / p[static_cast<size_t>(c17_h())];
    Mat3 R;
    Vec3 tau;
    for (int i = 0; i < 3; ++i) {
        tau[static_cast<size_t>(i)] = p[static_cast<size_t>(c17_y(i))] * hinv;
        for (int j = 0; j < 3; ++j) R[static_cast<size_t>(i)][static_cast<size_t>(j)] = p[static_cast<size_t>(c17_m(i, j))] * hinv;
    }
    return {R, tau};
}

// --------------------------------------------------------------------------
// Spherical forms (leg conditions as linear forms on P^16)
// --------------------------------------------------------------------------

/// r - 2 <M p, P> - 2 <P, y> - 2 <p, x> + h (<p,p> + <P,P> - dsq); on embedded
/// isometries this is |R p + tau - P|^2 - dsq.
inline MPoly spherical_form(const Vec3& p, const Vec3& P, const Rat& dsq) {
    auto V = [](int i) { return MPoly::var(kC17, i); };
    MPoly f = V(c17_r());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            f = f - (Rat(2) * P[static_cast<size_t>(i)] * p[static_cast<size_t>(j)]) * V(c17_m(i, j));
    for (int i = 0; i < 3; ++i) {
        f = f - (Rat(2) * P[static_cast<size_t>(i)]) * V(c17_y(i));
        f = f - (Rat(2) * p[static_cast<size_t>(i)]) * V(c17_x(i));
    }
    f = f + (dot(p, p) + dot(P, P) - dsq) * V(c17_h());
    return f;
}

// --------------------------------------------------------------------------
// Bonds
// --------------------------------------------------------------------------

/// A bond: boundary point beta = (0 : alpha w v^T : lambda v : mu w : rho)
/// determined by a matched direction pair, together with the chart data
/// needed for its tangent space.
struct Bond {
    BigComplex u, s;  // matching parameters (ignored in the infinite charts)
    bool u_inf = false, s_inf = false;
    std::array<BigComplex, 3> w, v;    // conic points (base, platform)
    std::array<BigComplex, 3> wp, vp;  // chart tangent vectors
    BigComplex alpha, lambda, mu, rho; // cofactor vector, max-norm normalized
    std::array<BigComplex, 6> W, V;    // anchor pairings <P_i, w>, <p_i, v>
};

/// Solve the pseudo-spherical system at a matched pair.  The 6x4 coefficient
/// matrix (-2 W_i V_i, -2 V_i, -2 W_i, 1) must have a one-dimensional kernel
/// (rank 3); rank 4 is a node coincidence and rank <= 2 contradicts the
/// distinctness/planarity preconditions.
inline Bond bond_solve(const SixTuple& base, const SixTuple& platform, const MatchedPair& pair,
                       mpfr_prec_t prec) {
    Bond b;
    b.u = pair.u;
    b.s = pair.s;
    b.u_inf = pair.u_inf;
    b.s_inf = pair.s_inf;
    b.w = b.u_inf ? conic_point_c_inf(prec) : conic_point_c(pair.u, prec);
    b.v = b.s_inf ? conic_point_c_inf(prec) : conic_point_c(pair.s, prec);
    b.wp = b.u_inf ? conic_tangent_rev_c(BigComplex(prec), prec) : conic_tangent_c(pair.u, prec);
    b.vp = b.s_inf ? conic_tangent_rev_c(BigComplex(prec), prec) : conic_tangent_c(pair.s, prec);

    for (int i = 0; i < 6; ++i) {
        BigComplex Wi(prec), Vi(prec);
        for (int c = 0; c < 3; ++c) {
            Wi += to_complex(base[i][static_cast<size_t>(c)], prec) * b.w[static_cast<size_t>(c)];
            Vi += to_complex(platform[i][static_cast<size_t>(c)], prec) * b.v[static_cast<size_t>(c)];
        }
        b.W[static_cast<size_t>(i)] = Wi;
        b.V[static_cast<size_t>(i)] = Vi;
    }

    CMat sys(6, CVec(4, BigComplex(prec)));
    BigComplex neg2 = BigComplex::from_rat(Rat(-2), prec);
    for (size_t i = 0; i < 6; ++i) {
        sys[i][0] = neg2 * b.W[i] * b.V[i];
        sys[i][1] = neg2 * b.V[i];
        sys[i][2] = neg2 * b.W[i];
        sys[i][3] = BigComplex::from_rat(Rat(1), prec);
    }
    BigFloat tol = pow2(-(static_cast<long>(prec) / 2), prec);
    auto kernel = cnullspace(sys, tol);
    if (kernel.empty())
        throw std::domain_error("bond_solve: node coincidence (pseudo-spherical system has full rank)");
    if (kernel.size() > 1)
        throw std::domain_error("bond_solve: degenerate pair (kernel dimension exceeds 1)");
    CVec k = kernel[0];
    size_t best = 0;
    for (size_t i = 1; i < 4; ++i)
        if (k[best].abs2() < k[i].abs2()) best = i;
    BigComplex scale = BigComplex::from_rat(Rat(1), prec) / k[best];
    b.alpha = k[0] * scale;
    b.lambda = k[1] * scale;
    b.mu = k[2] * scale;
    b.rho = k[3] * scale;
    return b;
}

/// The bond as a point of P^16 (on the boundary h = 0).
inline Point17<BigComplex> bond_point(const Bond& b, mpfr_prec_t prec) {
    Point17<BigComplex> p;
    p.fill(BigComplex(prec));
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j)
            p[static_cast<size_t>(c17_m(i, j))] = b.alpha * b.w[static_cast<size_t>(i)] * b.v[static_cast<size_t>(j)];
        p[static_cast<size_t>(c17_x(i))] = b.lambda * b.v[static_cast<size_t>(i)];
        p[static_cast<size_t>(c17_y(i))] = b.mu * b.w[static_cast<size_t>(i)];
    }
    p[static_cast<size_t>(c17_r())] = b.rho;
    return p;
}

/// The bond cofactor line omega(gamma) = omega0 + gamma omega1: rescaling the
/// platform by gamma moves the cofactor vector (alpha, lambda, mu, rho) to
/// (alpha, lambda, gamma mu, gamma rho) projectively.
struct BondLine {
    std::array<BigComplex, 4> omega0, omega1;

    std::array<BigComplex, 4> at(const BigComplex& gamma, mpfr_prec_t prec) const {
        std::array<BigComplex, 4> w{BigComplex(prec), BigComplex(prec), BigComplex(prec), BigComplex(prec)};
        for (size_t i = 0; i < 4; ++i) w[i] = omega0[i] + gamma * omega1[i];
        return w;
    }
};

inline BondLine bond_line(const Bond& b, mpfr_prec_t prec) {
    BondLine L{{BigComplex(prec), BigComplex(prec), BigComplex(prec), BigComplex(prec)},
               {BigComplex(prec), BigComplex(prec), BigComplex(prec), BigComplex(prec)}};
    L.omega0[0] = b.alpha;
    L.omega0[1] = b.lambda;
    L.omega1[2] = b.mu;
    L.omega1[3] = b.rho;
    return L;
}

/// Rows spanning the tangent space T_beta X, in P^16 coordinates.  All rows
/// lie in {h = 0}; the bond itself is alpha r1 + lambda r4 + mu r5 + rho r6.
inline CMat tangent_space_at_bond(const Bond& b, mpfr_prec_t prec) {
    CMat rows(7, CVec(kC17, BigComplex(prec)));
    auto setM = [&](size_t row, const std::array<BigComplex, 3>& a, const std::array<BigComplex, 3>& c,
                    const BigComplex& f) {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                rows[row][static_cast<size_t>(c17_m(i, j))] = f * a[static_cast<size_t>(i)] * c[static_cast<size_t>(j)];
    };
    auto setX = [&](size_t row, const std::array<BigComplex, 3>& a, const BigComplex& f) {
        for (int i = 0; i < 3; ++i) rows[row][static_cast<size_t>(c17_x(i))] = f * a[static_cast<size_t>(i)];
    };
    auto setY = [&](size_t row, const std::array<BigComplex, 3>& a, const BigComplex& f) {
        for (int i = 0; i < 3; ++i) rows[row][static_cast<size_t>(c17_y(i))] = f * a[static_cast<size_t>(i)];
    };
    BigComplex one = BigComplex::from_rat(Rat(1), prec);
    setM(0, b.w, b.v, one);
    setM(1, b.wp, b.v, b.alpha);
    setY(1, b.wp, b.mu);
    setM(2, b.w, b.vp, b.alpha);
    setX(2, b.vp, b.lambda);
    setX(3, b.v, one);
    setY(4, b.w, one);
    rows[5][static_cast<size_t>(c17_r())] = one;
    setX(6, b.vp, one);
    setY(6, b.wp, one);
    return rows;
}

/// Numeric evaluation helpers on P^16 points.
inline BigComplex eval_mpoly_c(const MPoly& f, const Point17<BigComplex>& p, mpfr_prec_t prec) {
    BigComplex acc(prec);
    for (const auto& [e, c] : f.t) {
        BigComplex term = BigComplex::from_rat(c, prec);
        for (int v = 0; v < kC17; ++v)
            for (uint32_t k = 0; k < e[static_cast<size_t>(v)]; ++k) term *= p[static_cast<size_t>(v)];
        acc += term;
    }
    return acc;
}

inline Point17<BigComplex> gradient_at(const MPoly& f, const Point17<BigComplex>& p, mpfr_prec_t prec) {
    Point17<BigComplex> g;
    g.fill(BigComplex(prec));
    for (int v = 0; v < kC17; ++v) g[static_cast<size_t>(v)] = eval_mpoly_c(f.derivative(v), p, prec);
    return g;
}

}  // namespace hexmotion
