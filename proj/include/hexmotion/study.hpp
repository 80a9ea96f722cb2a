#pragma once

#include "hexmotion/liaison.hpp"
#include "hexmotion/mpoly_gcd.hpp"
#include "hexmotion/resultant.hpp"

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace hexmotion {

// --------------------------------------------------------------------------
// Kinematic parameterization: 8 variables e0..e3 (vars 0..3), f0..f3 (4..7)
// --------------------------------------------------------------------------

inline MPoly study_e(int i) { return MPoly::var(8, i); }
inline MPoly study_f(int i) { return MPoly::var(8, 4 + i); }

/// Condition coupling the two quaternions: e0 f0 + e1 f1 + e2 f2 + e3 f3.
inline const MPoly& study_psi() {
    static const MPoly psi = [] {
        MPoly p = MPoly::zero(8);
        for (int i = 0; i < 4; ++i) p = p + study_e(i) * study_f(i);
        return p;
    }();
    return psi;
}

/// Squared quaternion norm e0^2 + e1^2 + e2^2 + e3^2 (in the 8-variable ring).
inline const MPoly& study_norm() {
    static const MPoly n = [] {
        MPoly p = MPoly::zero(8);
        for (int i = 0; i < 4; ++i) p = p + study_e(i) * study_e(i);
        return p;
    }();
    return n;
}

/// Unnormalized rotation: x -> R x / N is the rotation of the quaternion
/// e0 + e1 i + e2 j + e3 k acting by conjugation.
inline const std::array<std::array<MPoly, 3>, 3>& study_rotation() {
    static const std::array<std::array<MPoly, 3>, 3> R = [] {
        auto e = [](int i) { return study_e(i); };
        std::array<std::array<MPoly, 3>, 3> r;
        MPoly two = MPoly::constant(8, Rat(2));
        r[0][0] = e(0) * e(0) + e(1) * e(1) - e(2) * e(2) - e(3) * e(3);
        r[0][1] = two * (e(1) * e(2) - e(0) * e(3));
        r[0][2] = two * (e(1) * e(3) + e(0) * e(2));
        r[1][0] = two * (e(1) * e(2) + e(0) * e(3));
        r[1][1] = e(0) * e(0) - e(1) * e(1) + e(2) * e(2) - e(3) * e(3);
        r[1][2] = two * (e(2) * e(3) - e(0) * e(1));
        r[2][0] = two * (e(1) * e(3) - e(0) * e(2));
        r[2][1] = two * (e(2) * e(3) + e(0) * e(1));
        r[2][2] = e(0) * e(0) - e(1) * e(1) - e(2) * e(2) + e(3) * e(3);
        return r;
    }();
    return R;
}

/// Unnormalized translation: tau = t / N, the vector part of 2 f conj(e).
inline const std::array<MPoly, 3>& study_translation() {
    static const std::array<MPoly, 3> T = [] {
        auto e = [](int i) { return study_e(i); };
        auto f = [](int i) { return study_f(i); };
        MPoly two = MPoly::constant(8, Rat(2));
        std::array<MPoly, 3> t;
        t[0] = two * (e(0) * f(1) - e(1) * f(0) + e(2) * f(3) - e(3) * f(2));
        t[1] = two * (e(0) * f(2) - e(2) * f(0) + e(3) * f(1) - e(1) * f(3));
        t[2] = two * (e(0) * f(3) - e(3) * f(0) + e(1) * f(2) - e(2) * f(1));
        return t;
    }();
    return T;
}

/// Squared-leg condition as a homogeneous quartic in the 8 parameters:
/// |R p + t - N P|^2 - dsq N^2, which is N^2 (|rot(p) + tau - P|^2 - dsq)
/// wherever the parameterization is normalized.
inline MPoly leg_quartic(const Vec3& p, const Vec3& P, const Rat& dsq) {
    const auto& R = study_rotation();
    const auto& T = study_translation();
    const MPoly& N = study_norm();
    MPoly q = MPoly::zero(8);
    for (int j = 0; j < 3; ++j) {
        MPoly comp = T[static_cast<size_t>(j)] - MPoly::constant(8, P[static_cast<size_t>(j)]) * N;
        for (int k = 0; k < 3; ++k)
            comp = comp + MPoly::constant(8, p[static_cast<size_t>(k)]) * R[static_cast<size_t>(j)][static_cast<size_t>(k)];
        q = q + comp * comp;
    }
    return q - MPoly::constant(8, dsq) * N * N;
}

// --------------------------------------------------------------------------
// Leg quadrics on the coupling quadric
// --------------------------------------------------------------------------

namespace detail {

/// Restrict an 8-variable polynomial with no f exponents to the e-ring.
inline MPoly to_evars(const MPoly& p) {
    MPoly r = MPoly::zero(4);
    for (const auto& [e, c] : p.t) {
        for (int i = 4; i < 8; ++i)
            if (e[static_cast<size_t>(i)] != 0) throw std::domain_error("to_evars: f variable present");
        r.add_term(Expo(e.begin(), e.begin() + 4), c);
    }
    return r;
}

inline int f_degree_of(const Expo& e) {
    return static_cast<int>(e[4] + e[5] + e[6] + e[7]);
}

}  // namespace detail

/// The quadratic in the decomposition Q = N L + A Psi, pinned down by making
/// L's coefficient vector orthogonal to Psi's (the pair (L, A) is otherwise
/// unique up to (L + c Psi, A - c N)).
struct LambdaSplit {
    MPoly lambda, aux;  // both quadratic in the 8 parameters
};

inline LambdaSplit lambda_decompose(const MPoly& Q) {
    std::vector<Expo> quad;
    for (int i = 0; i < 8; ++i)
        for (int j = i; j < 8; ++j) {
            Expo e(8, 0);
            e[static_cast<size_t>(i)] += 1;
            e[static_cast<size_t>(j)] += 1;
            quad.push_back(std::move(e));
        }
    const MPoly& N = study_norm();
    const MPoly& psi = study_psi();

    std::vector<MPoly> cols;
    for (const auto& m : quad) {
        MPoly mono(8);
        mono.add_term(m, Rat(1));
        cols.push_back(N * mono);
    }
    for (const auto& m : quad) {
        MPoly mono(8);
        mono.add_term(m, Rat(1));
        cols.push_back(psi * mono);
    }

    std::map<Expo, size_t, GrlexLess> row_of;
    auto note_rows = [&](const MPoly& p) {
        for (const auto& [e, c] : p.t)
            if (!row_of.count(e)) row_of.emplace(e, row_of.size());
    };
    for (const auto& c : cols) note_rows(c);
    note_rows(Q);

    Mat<Rat> sys(row_of.size(), std::vector<Rat>(cols.size(), Rat(0)));
    std::vector<Rat> rhs(row_of.size(), Rat(0));
    for (size_t j = 0; j < cols.size(); ++j)
        for (const auto& [e, c] : cols[j].t) sys[row_of[e]][j] = c;
    for (const auto& [e, c] : Q.t) rhs[row_of[e]] = c;

    auto sol = solve_linear(sys, rhs);
    if (!sol) throw std::domain_error("lambda_decompose: quartic is not in the ideal (N, Psi)");

    MPoly lambda = MPoly::zero(8), aux = MPoly::zero(8);
    for (size_t j = 0; j < quad.size(); ++j) {
        lambda.add_term(quad[j], (*sol)[j]);
        aux.add_term(quad[j], (*sol)[quad.size() + j]);
    }
    // <lambda, psi> / <psi, psi> over the coefficient basis.
    Rat dot(0), psi2(0);
    for (const auto& [e, c] : study_psi().t) {
        psi2 += c * c;
        auto it = lambda.t.find(e);
        if (it != lambda.t.end()) dot += it->second * c;
    }
    Rat alpha = dot / psi2;
    lambda = lambda - MPoly::constant(8, alpha) * study_psi();
    aux = aux + MPoly::constant(8, alpha) * study_norm();
    return {std::move(lambda), std::move(aux)};
}

/// Difference of two leg quadratics, linear in f:
/// s[0] f0 + s[1] f1 + s[2] f2 + s[3] f3 + w with s linear and w quadratic
/// in e (the f-quadratic parts of all leg quadrics agree and cancel).
struct DeltaForm {
    std::array<MPoly, 4> s;  // e-ring (4 variables)
    MPoly w;
};

struct StudyFrame {
    std::array<MPoly, 6> lambda;  // 8-variable quadratics, one per leg

    DeltaForm delta(int i, int j) const {
        MPoly d = lambda[static_cast<size_t>(i)] - lambda[static_cast<size_t>(j)];
        DeltaForm out;
        MPoly rest = d;
        for (int m = 0; m < 4; ++m) {
            out.s[static_cast<size_t>(m)] = detail::to_evars(d.derivative(4 + m));
            rest = rest.eval_partial(4 + m, Rat(0));
        }
        out.w = detail::to_evars(rest);
        return out;
    }
};

inline StudyFrame study_frame(const Hexapod& hex, const Rat& gamma) {
    SixTuple platform = scale_tuple(hex.platform, gamma);
    StudyFrame frame;
    for (int i = 0; i < 6; ++i) {
        MPoly Q = leg_quartic(platform[i], hex.base[i], hex.leg_sq[static_cast<size_t>(i)]);
        frame.lambda[static_cast<size_t>(i)] = lambda_decompose(Q).lambda;
    }
    return frame;
}

// --------------------------------------------------------------------------
// Elimination of f: determinantal quartics, common cubic, vertex
// --------------------------------------------------------------------------

/// e-ring squared norm.
inline const MPoly& norm_e() {
    static const MPoly n = [] {
        MPoly p = MPoly::zero(4);
        for (int i = 0; i < 4; ++i) p = p + MPoly::var(4, i) * MPoly::var(4, i);
        return p;
    }();
    return n;
}

struct EliminationData {
    std::array<MPoly, 6> G;  // quartics in e
    MPoly S;                 // gcd of G_2..G_6
    std::array<MPoly, 6> L;  // G_k / S
    bool linear_pencil = false;
    bool has_vertex = false;
    std::vector<Rat> vertex;  // kernel of the L coefficient matrix, first nonzero = 1
};

/// Alternating combination G1 - G2 + G3 - G4 + G5 - G6; identically zero for
/// every hexapod (the six determinantal quartics satisfy one universal linear
/// relation with these signs under the ascending row convention below).
inline MPoly alternating_g_sum(const EliminationData& elim) {
    MPoly acc = MPoly::zero(4);
    for (int k = 0; k < 6; ++k) {
        MPoly sgn = MPoly::constant(4, Rat(k % 2 == 0 ? 1 : -1));
        acc = acc + sgn * elim.G[static_cast<size_t>(k)];
    }
    return acc;
}

/// For each leg k, drop it, anchor the smallest remaining index a, and take
/// the 5x5 determinant of the four rows Delta_{a,j} (columns s0..s3, w) and
/// the row (e0, e1, e2, e3, 0).  The determinant is divisible by the norm;
/// the quotients G_k are quartics sharing a cubic factor S for leg lengths
/// on the third-order tangency subspace.
inline EliminationData eliminate_legs(const StudyFrame& frame) {
    EliminationData out;
    for (int k = 0; k < 6; ++k) {
        std::vector<int> rest;
        for (int j = 0; j < 6; ++j)
            if (j != k) rest.push_back(j);
        int anchor = rest[0];
        std::vector<std::vector<MPoly>> M;
        for (size_t r = 1; r < rest.size(); ++r) {
            DeltaForm d = frame.delta(anchor, rest[r]);
            std::vector<MPoly> row(d.s.begin(), d.s.end());
            row.push_back(d.w);
            M.push_back(std::move(row));
        }
        std::vector<MPoly> last;
        for (int m = 0; m < 4; ++m) last.push_back(MPoly::var(4, m));
        last.push_back(MPoly::zero(4));
        M.push_back(std::move(last));
        MPoly omega = det_bareiss(M);
        auto g = omega.exact_div(norm_e());
        if (!g) throw std::domain_error("eliminate_legs: determinant not divisible by the norm");
        out.G[static_cast<size_t>(k)] = *g;
    }
    std::vector<MPoly> tail(out.G.begin() + 1, out.G.end());
    out.S = mpoly_gcd_list(tail);
    if (out.S.is_zero()) return out;  // congruent-degenerate: every quartic vanished
    out.linear_pencil = out.S.total_degree() == 3;
    for (int k = 0; k < 6; ++k) {
        auto l = out.G[static_cast<size_t>(k)].exact_div(out.S);
        if (!l) {
            out.linear_pencil = false;
            return out;
        }
        out.L[static_cast<size_t>(k)] = *l;
        if (out.L[static_cast<size_t>(k)].total_degree() > 1) out.linear_pencil = false;
    }
    if (!out.linear_pencil) return out;

    Mat<Rat> lmat(6, std::vector<Rat>(4, Rat(0)));
    for (int k = 0; k < 6; ++k)
        for (int m = 0; m < 4; ++m)
            lmat[static_cast<size_t>(k)][static_cast<size_t>(m)] =
                out.L[static_cast<size_t>(k)].derivative(m).constant_value();
    auto kernel = nullspace(lmat);
    if (kernel.size() == 1) {
        out.vertex = kernel[0];
        for (auto& v : out.vertex)
            if (!is_zero(v)) {
                Rat lead = v;
                for (auto& w : out.vertex) w /= lead;
                break;
            }
        out.has_vertex = true;
    }
    return out;
}

// --------------------------------------------------------------------------
// Rational solution for f and the eliminated octic
// --------------------------------------------------------------------------

/// f = num / den from the linear system Delta_{a,j} = Delta_{a,k} =
/// Delta_{a,l} = Psi = 0 by Cramer's rule; den is a quartic and the
/// numerators are quintics in e.
struct CramerSolve {
    std::array<MPoly, 4> num;
    MPoly den;
    std::array<int, 4> legs;  // (anchor; j, k, l)
};

inline CramerSolve f_cramer(const StudyFrame& frame, int a, int j, int k, int l) {
    std::array<DeltaForm, 3> rows{frame.delta(a, j), frame.delta(a, k), frame.delta(a, l)};
    std::vector<std::vector<MPoly>> M(4, std::vector<MPoly>(4, MPoly::zero(4)));
    std::vector<MPoly> rhs(4, MPoly::zero(4));
    for (size_t r = 0; r < 3; ++r) {
        for (size_t c = 0; c < 4; ++c) M[r][c] = rows[r].s[c];
        rhs[r] = -rows[r].w;
    }
    for (size_t c = 0; c < 4; ++c) M[3][c] = MPoly::var(4, static_cast<int>(c));

    CramerSolve out;
    out.legs = {a, j, k, l};
    out.den = det_bareiss(M);
    for (size_t c = 0; c < 4; ++c) {
        auto Mc = M;
        for (size_t r = 0; r < 4; ++r) Mc[r][c] = rhs[r];
        out.num[c] = det_bareiss(Mc);
    }
    return out;
}

/// Numerator of the anchor quadratic after substituting f = num/den:
/// lam2(num, num) + lam1(num) den + lam0 den^2, a degree-10 polynomial in e;
/// dividing out the rational content and every norm factor leaves an octic.
struct OcticData {
    MPoly E;
    int norm_power = 0;
};

inline OcticData e_octic(const StudyFrame& frame, const CramerSolve& cr) {
    const MPoly& lam = frame.lambda[static_cast<size_t>(cr.legs[0])];
    MPoly acc = MPoly::zero(4);
    for (const auto& [e, c] : lam.t) {
        int fdeg = detail::f_degree_of(e);
        MPoly term(4);
        term.add_term(Expo(e.begin(), e.begin() + 4), c);
        for (int m = 0; m < 4; ++m)
            for (uint32_t rep = 0; rep < e[static_cast<size_t>(4 + m)]; ++rep)
                term = term * cr.num[static_cast<size_t>(m)];
        for (int rep = fdeg; rep < 2; ++rep) term = term * cr.den;
        acc = acc + term;
    }
    OcticData out;
    out.E = acc.primitive();
    while (true) {
        auto q = out.E.exact_div(norm_e());
        if (!q) break;
        out.E = *q;
        ++out.norm_power;
    }
    out.E = out.E.primitive();
    return out;
}

// --------------------------------------------------------------------------
// Motion polynomial
// --------------------------------------------------------------------------

struct MotionPolynomial {
    MPoly J;  // e-ring, free of e0
    int degree = 0;
    bool rigid = true;
    int s_e0_degree = 0;
    std::array<int, 3> e_e0_degree{};
    std::array<int, 3> f_degree{};
    std::array<int, 3> norm_power{};
    EliminationData elim;
};

/// Eliminate e0 between the common cubic S and each of the three default
/// octics, then take the gcd of the resultants.  A nonconstant J certifies a
/// one-parameter motion; its vanishing locus in (e1 : e2 : e3) is the
/// rotation-parameter image of the self-motion.
inline MotionPolynomial motion_gcd(const Hexapod& hex, const Rat& gamma) {
    StudyFrame frame = study_frame(hex, gamma);
    MotionPolynomial out;
    out.elim = eliminate_legs(frame);
    out.s_e0_degree = out.elim.S.degree_in(0);

    static constexpr std::array<std::array<int, 4>, 3> kChoices{{{0, 1, 2, 3}, {0, 1, 2, 4}, {0, 1, 3, 4}}};
    std::vector<MPoly> fs;
    for (size_t c = 0; c < kChoices.size(); ++c) {
        auto cr = f_cramer(frame, kChoices[c][0], kChoices[c][1], kChoices[c][2], kChoices[c][3]);
        OcticData oc = e_octic(frame, cr);
        out.e_e0_degree[c] = oc.E.degree_in(0);
        out.norm_power[c] = oc.norm_power;
        MPoly F = sylvester_resultant(out.elim.S, oc.E, 0).primitive();
        out.f_degree[c] = F.total_degree();
        fs.push_back(std::move(F));
    }
    out.J = mpoly_gcd_list(fs);
    out.degree = out.J.total_degree();
    out.rigid = out.J.is_constant();
    return out;
}

// --------------------------------------------------------------------------
// Motion sampling
// --------------------------------------------------------------------------

struct MotionSample {
    std::array<BigFloat, 4> e, f;
    BigFloat residual;  // largest squared-leg error over the six legs
    Rat sweep;          // value of the swept rotation coordinate
};

namespace detail {

inline BigFloat pose_residual(const std::array<BigFloat, 4>& e, const std::array<BigFloat, 4>& f,
                              const SixTuple& platform, const SixTuple& base,
                              const std::array<Rat, 6>& leg_sq, mpfr_prec_t prec) {
    BigFloat N(prec);
    for (int i = 0; i < 4; ++i) N += e[static_cast<size_t>(i)] * e[static_cast<size_t>(i)];
    std::array<std::array<BigFloat, 3>, 3> R;
    auto two = BigFloat::from_int(2, prec);
    R[0][0] = e[0] * e[0] + e[1] * e[1] - e[2] * e[2] - e[3] * e[3];
    R[0][1] = two * (e[1] * e[2] - e[0] * e[3]);
    R[0][2] = two * (e[1] * e[3] + e[0] * e[2]);
    R[1][0] = two * (e[1] * e[2] + e[0] * e[3]);
    R[1][1] = e[0] * e[0] - e[1] * e[1] + e[2] * e[2] - e[3] * e[3];
    R[1][2] = two * (e[2] * e[3] - e[0] * e[1]);
    R[2][0] = two * (e[1] * e[3] - e[0] * e[2]);
    R[2][1] = two * (e[2] * e[3] + e[0] * e[1]);
    R[2][2] = e[0] * e[0] - e[1] * e[1] - e[2] * e[2] + e[3] * e[3];
    std::array<BigFloat, 3> t;
    t[0] = two * (e[0] * f[1] - e[1] * f[0] + e[2] * f[3] - e[3] * f[2]);
    t[1] = two * (e[0] * f[2] - e[2] * f[0] + e[3] * f[1] - e[1] * f[3]);
    t[2] = two * (e[0] * f[3] - e[3] * f[0] + e[1] * f[2] - e[2] * f[1]);

    BigFloat worst(prec);
    for (int i = 0; i < 6; ++i) {
        BigFloat err(prec);
        for (int j = 0; j < 3; ++j) {
            BigFloat comp = t[static_cast<size_t>(j)] - BigFloat::from_rat(base[i][static_cast<size_t>(j)], prec) * N;
            for (int k = 0; k < 3; ++k)
                comp += R[static_cast<size_t>(j)][static_cast<size_t>(k)] *
                        BigFloat::from_rat(platform[i][static_cast<size_t>(k)], prec);
            err += comp * comp;
        }
        err -= BigFloat::from_rat(leg_sq[static_cast<size_t>(i)], prec) * N * N;
        BigFloat a = err.abs();
        if (worst < a) worst = a;
    }
    return worst;
}

}  // namespace detail

/// Sample the self-motion in the chart e_chart = 1 by sweeping e_sweep: real
/// roots of J give the remaining rotation coordinate, real roots of the
/// common cubic give e0, and the f quaternion follows from the Cramer
/// solution.  Poses are unit-normalized and verified against the squared-leg
/// conditions; candidates failing the residual gate (spurious elimination
/// branches) are discarded.
inline std::vector<MotionSample> sample_motion(const Hexapod& hex, const Rat& gamma, size_t count = 200,
                                               mpfr_prec_t prec = 256, int chart_var = 3,
                                               int sweep_var = 2) {
    if (chart_var < 1 || chart_var > 3 || sweep_var < 1 || sweep_var > 3 || chart_var == sweep_var)
        throw std::invalid_argument("sample_motion: chart and sweep must be distinct rotation coordinates");
    int root_var = 6 - chart_var - sweep_var;
    MotionPolynomial mp = motion_gcd(hex, gamma);
    if (mp.rigid) throw std::domain_error("sample_motion: motion polynomial is constant (rigid)");
    StudyFrame frame = study_frame(hex, gamma);
    SixTuple platform = scale_tuple(hex.platform, gamma);
    std::array<CramerSolve, 3> solves{f_cramer(frame, 0, 1, 2, 3), f_cramer(frame, 0, 1, 2, 4),
                                      f_cramer(frame, 0, 1, 3, 4)};
    auto s_coeffs = mp.elim.S.coeffs_in(0);

    BigFloat real_tol = pow2(-(static_cast<long>(prec) / 3), prec);
    BigFloat res_tol = pow2(-(static_cast<long>(prec) / 3), prec);
    BigFloat den_tol = pow2(-(static_cast<long>(prec) / 2), prec);
    std::vector<MotionSample> out;

    for (int k = 0; static_cast<int>(out.size()) < static_cast<int>(count) && k <= 3200; ++k) {
        Rat v = (k % 2 == 0) ? rat(k / 2, 8) : rat(-(k + 1) / 2, 8);
        MPoly j_sub = mp.J.eval_partial(sweep_var, v).eval_partial(chart_var, Rat(1));
        if (j_sub.is_constant()) continue;
        UPoly<Rat> j_uni = mpoly_to_upoly(j_sub, root_var);
        std::vector<BigFloat> e1s;
        for (const auto& root : roots_with_multiplicity(j_uni, prec)) {
            if (root.z.im.abs() > real_tol) continue;
            bool dup = false;
            for (const auto& prev : e1s)
                if ((prev - root.z.re).abs() < real_tol) dup = true;
            if (!dup) e1s.push_back(root.z.re);
        }
        for (const auto& e1 : e1s) {
            std::vector<BigComplex> sc;
            int top = s_coeffs.rbegin()->first;
            for (int d = 0; d <= top; ++d) {
                auto it = s_coeffs.find(d);
                if (it == s_coeffs.end()) {
                    sc.push_back(BigComplex(prec));
                    continue;
                }
                std::vector<BigComplex> x(4, BigComplex(prec));
                x[static_cast<size_t>(root_var)] = BigComplex(e1, BigFloat(prec));
                x[static_cast<size_t>(sweep_var)] = BigComplex::from_rat(v, prec);
                x[static_cast<size_t>(chart_var)] = BigComplex::from_rat(Rat(1), prec);
                sc.push_back(it->second.eval_complex(x, prec));
            }
            sc = cpoly_trim(sc, pow2(-(static_cast<long>(prec) / 2), prec));
            if (sc.size() <= 1) continue;
            for (const auto& e0c : aberth_roots(sc, prec)) {
                if (e0c.im.abs() > real_tol) continue;
                std::array<BigFloat, 4> e{BigFloat(prec), BigFloat(prec), BigFloat(prec), BigFloat(prec)};
                e[0] = e0c.re;
                e[static_cast<size_t>(root_var)] = e1;
                e[static_cast<size_t>(sweep_var)] = BigFloat::from_rat(v, prec);
                e[static_cast<size_t>(chart_var)] = BigFloat::from_rat(Rat(1), prec);
                std::vector<BigComplex> x;
                for (const auto& ei : e) x.push_back(BigComplex(ei, BigFloat(prec)));
                std::array<BigFloat, 4> f;
                bool got_f = false;
                for (const auto& cr : solves) {
                    BigComplex den = cr.den.eval_complex(x, prec);
                    if (!(den.abs() > den_tol)) continue;
                    for (int m = 0; m < 4; ++m)
                        f[static_cast<size_t>(m)] = (cr.num[static_cast<size_t>(m)].eval_complex(x, prec) / den).re;
                    got_f = true;
                    break;
                }
                if (!got_f) continue;
                BigFloat N(prec);
                for (const auto& ei : e) N += ei * ei;
                BigFloat lam = (BigFloat::from_int(1, prec) / N).sqrt();
                if (e[0].sign() < 0 || (e[0].is_zero() && e[1].sign() < 0)) lam = -lam;
                for (auto& ei : e) ei = ei * lam;
                for (auto& fi : f) fi = fi * lam;
                BigFloat res = detail::pose_residual(e, f, platform, hex.base, hex.leg_sq, prec);
                if (!(res < res_tol)) continue;
                bool dup = false;
                for (const auto& prev : out) {
                    if (prev.sweep != v) continue;
                    BigFloat d(prec);
                    for (size_t m = 0; m < 4; ++m) d += (prev.e[m] - e[m]).abs();
                    if (d < real_tol) dup = true;
                }
                if (dup) continue;
                out.push_back({e, f, res, v});
            }
        }
    }
    if (out.size() < count)
        throw std::runtime_error("sample_motion: sweep exhausted before reaching the requested pose count");
    return out;
}

// --------------------------------------------------------------------------
// Structural observations on the elimination data
// --------------------------------------------------------------------------

struct ObservationReport {
    bool l_rank_three = false;         // L coefficient matrix has exact rank 3
    bool vertex_unique = false;        // kernel dimension 1
    bool vertex_on_cubic = false;      // S vanishes at the vertex
    bool vertex_leg_independent = false;  // same vertex for every leg sample
    bool anchor_rank_two = false;      // base/platform anchor difference rank
    bool projectivity_regular = false; // anchors related by a regular projectivity
};

/// Exact structural checks across a family of leg choices (all expected on
/// the third-order tangency subspace).
inline ObservationReport observation_checks(const SixTuple& base, const SixTuple& platform0,
                                            const Rat& gamma,
                                            const std::vector<std::array<Rat, 6>>& leg_samples) {
    if (leg_samples.empty()) throw std::invalid_argument("observation_checks: need leg samples");
    ObservationReport rep;
    SixTuple platform = scale_tuple(platform0, gamma);

    std::vector<std::vector<Rat>> vertices;
    bool structural = true;
    for (const auto& legs : leg_samples) {
        Hexapod hex{base, platform0, legs};
        auto elim = eliminate_legs(study_frame(hex, gamma));
        if (!elim.linear_pencil || !elim.has_vertex) {
            structural = false;
            break;
        }
        Mat<Rat> lmat(6, std::vector<Rat>(4, Rat(0)));
        for (int k = 0; k < 6; ++k)
            for (int m = 0; m < 4; ++m)
                lmat[static_cast<size_t>(k)][static_cast<size_t>(m)] =
                    elim.L[static_cast<size_t>(k)].derivative(m).constant_value();
        if (mat_rank(lmat) != 3) structural = false;
        std::vector<Rat> vx(elim.vertex);
        std::vector<Rat> at(vx.begin(), vx.end());
        if (!is_zero(elim.S.eval(at))) structural = false;
        vertices.push_back(std::move(vx));
    }
    if (!structural || vertices.empty()) return rep;
    rep.l_rank_three = true;
    rep.vertex_unique = true;
    rep.vertex_on_cubic = true;
    rep.vertex_leg_independent = true;
    for (const auto& v : vertices)
        if (v != vertices[0]) rep.vertex_leg_independent = false;

    // Anchor geometry at the vertex rotation: the base differences minus the
    // rotated platform differences span only a plane.
    const auto& V = vertices[0];
    MPoly Ne = norm_e();
    std::vector<Rat> at(V.begin(), V.end());
    Rat NV = Ne.eval(at);
    const auto& R8 = study_rotation();
    Mat<Rat> RV(3, std::vector<Rat>(3, Rat(0)));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            std::vector<Rat> full(V.begin(), V.end());
            full.resize(8, Rat(0));
            RV[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                R8[static_cast<size_t>(i)][static_cast<size_t>(j)].eval(full);
        }
    Mat<Rat> diff(5, std::vector<Rat>(3, Rat(0)));
    for (int i = 1; i < 6; ++i)
        for (int j = 0; j < 3; ++j) {
            Rat acc = (base[i][static_cast<size_t>(j)] - base[0][static_cast<size_t>(j)]) * NV;
            for (int k = 0; k < 3; ++k)
                acc -= RV[static_cast<size_t>(j)][static_cast<size_t>(k)] *
                       (platform[i][static_cast<size_t>(k)] - platform[0][static_cast<size_t>(k)]);
            diff[static_cast<size_t>(i - 1)][static_cast<size_t>(j)] = acc;
        }
    rep.anchor_rank_two = mat_rank(diff) == 2;

    // Regular projectivity base -> platform: H (P_i : 1) = mu_i (p_i : 1).
    Mat<Rat> proj(24, std::vector<Rat>(22, Rat(0)));
    for (int i = 0; i < 6; ++i) {
        std::array<Rat, 4> Ph{base[i][0], base[i][1], base[i][2], Rat(1)};
        std::array<Rat, 4> ph{platform0[i][0], platform0[i][1], platform0[i][2], Rat(1)};
        for (int r = 0; r < 4; ++r) {
            size_t row = static_cast<size_t>(4 * i + r);
            for (int c = 0; c < 4; ++c) proj[row][static_cast<size_t>(4 * r + c)] = Ph[static_cast<size_t>(c)];
            proj[row][static_cast<size_t>(16 + i)] = -ph[static_cast<size_t>(r)];
        }
    }
    auto hk = nullspace(proj);
    if (hk.size() == 1) {
        Mat<Rat> H(4, std::vector<Rat>(4, Rat(0)));
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) H[static_cast<size_t>(r)][static_cast<size_t>(c)] = hk[0][static_cast<size_t>(4 * r + c)];
        rep.projectivity_regular = !is_zero(det_field(H));
    }
    return rep;
}

}  // namespace hexmotion
