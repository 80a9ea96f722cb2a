#pragma once

#include "hexmotion/conformal.hpp"
#include "hexmotion/moebius.hpp"
#include "hexmotion/reconstruct.hpp"
#include "hexmotion/roots.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

namespace hexmotion {

struct Hexapod {
    SixTuple base, platform;
    std::array<Rat, 6> leg_sq;
};

inline SixTuple scale_tuple(const SixTuple& t, const Rat& gamma) {
    std::array<Vec3, 6> pts;
    for (int i = 0; i < 6; ++i)
        pts[static_cast<size_t>(i)] = {gamma * t[i][0], gamma * t[i][1], gamma * t[i][2]};
    return six_tuple(pts);
}

// --------------------------------------------------------------------------
// Liaison verification (anchor geometry only)
// --------------------------------------------------------------------------

/// The two photographic maps must parameterize the same spherical image
/// curve: both birational of degree 6, the platform map annihilated by the
/// base quadric pencil, and the matched-direction count equal to the residual
/// intersection count of the liaison (14 for a mobility candidate).
struct VerifyReport {
    std::string base_class, platform_class;
    int matched_multiplicity = 0;
    int residual_count = 0;
    int pencil_dim = 0;
    bool platform_on_pencil = false;
    bool node_free = true;
    bool pass = false;
};

inline VerifyReport verify_residual_platform(const SixTuple& base, const SixTuple& platform,
                                             mpfr_prec_t prec) {
    VerifyReport rep;
    auto A = photographic_map(base);
    auto B = photographic_map(platform);
    rep.base_class = A.classification;
    rep.platform_class = B.classification;
    if (A.classification != "birational-6" || B.classification != "birational-6") return rep;

    auto pencil = quadric_pencil(A);
    rep.pencil_dim = pencil.dim();
    rep.platform_on_pencil = true;
    for (const auto& q : pencil.basis)
        if (!pencil_pullback(q, B.phi).is_zero_poly()) rep.platform_on_pencil = false;

    auto matched = matched_directions(A, B, prec);
    rep.matched_multiplicity = matched.total_multiplicity;
    for (const auto& p : matched.pairs)
        if (p.node_coincidence) rep.node_free = false;

    auto resid = residual_intersection_count(A, pencil);
    rep.residual_count = resid.count;

    rep.pass = rep.pencil_dim == 2 && rep.platform_on_pencil && rep.node_free &&
               rep.matched_multiplicity == rep.residual_count && rep.matched_multiplicity == 14;
    return rep;
}

// --------------------------------------------------------------------------
// Tangency system at a bond
// --------------------------------------------------------------------------

namespace detail {

/// Pseudo-spherical coefficient vectors split by the platform scale gamma:
/// the r and y coefficients are scale-free, the M and x coefficients carry
/// one factor of gamma (h components are irrelevant on tangent rows).
struct SphSplit {
    Point17<BigComplex> f0, f1;
};

inline std::array<SphSplit, 6> spherical_split(const SixTuple& base, const SixTuple& platform,
                                               mpfr_prec_t prec) {
    std::array<SphSplit, 6> out;
    BigComplex neg2 = BigComplex::from_rat(Rat(-2), prec);
    for (int i = 0; i < 6; ++i) {
        auto& sv = out[static_cast<size_t>(i)];
        sv.f0.fill(BigComplex(prec));
        sv.f1.fill(BigComplex(prec));
        sv.f0[static_cast<size_t>(c17_r())] = BigComplex::from_rat(Rat(1), prec);
        for (int j = 0; j < 3; ++j) {
            BigComplex Pj = to_complex(base[i][static_cast<size_t>(j)], prec);
            BigComplex pj = to_complex(platform[i][static_cast<size_t>(j)], prec);
            sv.f0[static_cast<size_t>(c17_y(j))] = neg2 * Pj;
            sv.f1[static_cast<size_t>(c17_x(j))] = neg2 * pj;
            for (int k = 0; k < 3; ++k)
                sv.f1[static_cast<size_t>(c17_m(j, k))] =
                    neg2 * Pj * to_complex(platform[i][static_cast<size_t>(k)], prec);
        }
    }
    return out;
}

inline BigComplex dot17(const Point17<BigComplex>& a, const CVec& b, mpfr_prec_t prec) {
    BigComplex acc(prec);
    for (int k = 0; k < kC17; ++k) acc += a[static_cast<size_t>(k)] * b[static_cast<size_t>(k)];
    return acc;
}

/// Tangent rows of the bond with the platform-scale dependence split off:
/// rescaling the platform by gamma moves the cofactors to
/// (alpha, lambda, gamma mu, gamma rho), so only the y part of the second
/// row acquires a factor gamma.
inline std::pair<CMat, CVec> gamma_split_rows(const Bond& b, mpfr_prec_t prec) {
    CMat rows = tangent_space_at_bond(b, prec);
    CVec r2gamma(kC17, BigComplex(prec));
    for (int i = 0; i < 3; ++i) {
        size_t yi = static_cast<size_t>(c17_y(i));
        r2gamma[yi] = rows[1][yi];
        rows[1][yi] = BigComplex(prec);
    }
    return {std::move(rows), std::move(r2gamma)};
}

/// Entries of the 6x7 tangency matrix eta(gamma) as quadratics in gamma.
struct EtaEntry {
    BigComplex c0, c1, c2;

    BigComplex at(const BigComplex& g) const { return c0 + g * (c1 + g * c2); }
};

using EtaMatrix = std::array<std::array<EtaEntry, 7>, 6>;

inline EtaMatrix eta_matrix(const Bond& b, const SixTuple& base, const SixTuple& platform,
                            mpfr_prec_t prec) {
    auto sph = spherical_split(base, platform, prec);
    auto [rowsA, r2g] = gamma_split_rows(b, prec);
    EtaMatrix eta;
    for (size_t i = 0; i < 6; ++i)
        for (size_t col = 0; col < 7; ++col) {
            EtaEntry& e = eta[i][col];
            e.c0 = dot17(sph[i].f0, rowsA[col], prec);
            e.c1 = dot17(sph[i].f1, rowsA[col], prec);
            e.c2 = BigComplex(prec);
            if (col == 1) {
                e.c1 += dot17(sph[i].f0, r2g, prec);
                e.c2 = dot17(sph[i].f1, r2g, prec);
            }
        }
    return eta;
}

/// eta at a fixed platform scale, as a plain matrix.
inline CMat eta_at(const EtaMatrix& eta, const BigComplex& g, mpfr_prec_t prec) {
    CMat m(6, CVec(7, BigComplex(prec)));
    for (size_t i = 0; i < 6; ++i)
        for (size_t col = 0; col < 7; ++col) m[i][col] = eta[i][col].at(g);
    return m;
}

/// The seven maximal minors of eta(gamma), interpolated from enough integer
/// nodes to pin the worst-case degree; each returned polynomial is trimmed
/// and normalized so its largest coefficient has magnitude one.  Minors that
/// vanish identically (relative to the largest of the seven) come back empty.
inline std::array<std::vector<BigComplex>, 7> eta_minor_polys(const EtaMatrix& eta, mpfr_prec_t prec) {
    constexpr size_t kNodes = 13;  // entries are quadratic in gamma, minors degree <= 12
    std::vector<BigComplex> xs;
    for (size_t t = 0; t < kNodes; ++t) {
        long v = (t % 2 == 0) ? static_cast<long>(t / 2) : -static_cast<long>((t + 1) / 2);
        xs.push_back(BigComplex::from_rat(Rat(v), prec));
    }
    std::array<std::vector<BigComplex>, 7> samples;  // [drop][node] -> det
    std::array<BigFloat, 7> ratio;                   // best |det| / Hadamard bound seen per drop
    for (auto& r : ratio) r = BigFloat(prec);
    for (size_t t = 0; t < kNodes; ++t) {
        CMat full = eta_at(eta, xs[t], prec);
        for (size_t drop = 0; drop < 7; ++drop) {
            CMat sq(6, CVec(6, BigComplex(prec)));
            BigFloat hadamard = BigFloat::from_rat(Rat(1), prec);
            for (size_t i = 0; i < 6; ++i) {
                size_t jj = 0;
                BigFloat row2(prec);
                for (size_t col = 0; col < 7; ++col) {
                    if (col == drop) continue;
                    sq[i][jj++] = full[i][col];
                    row2 += full[i][col].abs2();
                }
                hadamard = hadamard * row2.sqrt();
            }
            BigComplex det = cdet(sq, prec);
            if (!hadamard.is_zero()) {
                BigFloat r = det.abs() / hadamard;
                if (ratio[drop] < r) ratio[drop] = r;
            }
            samples[drop].push_back(std::move(det));
        }
    }
    // a wildly rank-deficient matrix leaves every sampled determinant at
    // rounding-noise level; the Hadamard bound gives an absolute scale to
    // recognize that even when all seven minors degenerate together
    BigFloat rank_cut = pow2(-(static_cast<long>(prec) / 3), prec);
    BigFloat trim_tol = pow2(-(static_cast<long>(prec) / 2), prec);
    std::array<std::vector<BigComplex>, 7> minors;
    BigFloat gmax(prec);
    for (size_t drop = 0; drop < 7; ++drop) {
        if (!(ratio[drop] > rank_cut)) continue;
        minors[drop] = cpoly_trim(cpoly_interpolate(xs, samples[drop], prec), trim_tol);
        for (const auto& c : minors[drop]) {
            BigFloat m = c.abs();
            if (gmax < m) gmax = m;
        }
    }
    BigFloat zero_cut = gmax * pow2(-(static_cast<long>(prec) / 3), prec);
    for (size_t drop = 0; drop < 7; ++drop) {
        BigFloat top(prec);
        for (const auto& c : minors[drop]) {
            BigFloat m = c.abs();
            if (top < m) top = m;
        }
        if (!(top > zero_cut)) {
            minors[drop].clear();
            continue;
        }
        BigComplex scale = BigComplex(BigFloat::from_rat(Rat(1), prec) / top, BigFloat(prec));
        for (auto& c : minors[drop]) c = c * scale;
    }
    return minors;
}

}  // namespace detail

// --------------------------------------------------------------------------
// Second-order tangency: platform scale recovery
// --------------------------------------------------------------------------

struct Tang2Result {
    std::vector<Rat> gammas;  // ascending
    BigFloat residual;        // largest normalized minor value over all bonds
    int bonds = 0;
    mpfr_prec_t precision_used = 0;
};

namespace detail {

inline std::optional<Tang2Result> tang2_attempt(const SixTuple& base, const SixTuple& platform,
                                                mpfr_prec_t prec, const Int& den_bound) {
    auto A = photographic_map(base);
    auto B = photographic_map(platform);
    auto matched = matched_directions(A, B, prec);

    BigFloat root_tol = pow2(-(static_cast<long>(prec) / 3), prec);
    BigFloat cluster_tol = pow2(-(static_cast<long>(prec) / 4), prec);

    std::vector<std::array<std::vector<BigComplex>, 7>> bond_minors;
    for (const auto& pair : matched.pairs) {
        if (pair.node_coincidence) continue;
        Bond b = bond_solve(base, platform, pair, prec);
        bond_minors.push_back(eta_minor_polys(eta_matrix(b, base, platform, prec), prec));
    }
    if (bond_minors.empty()) throw std::domain_error("tang2_solve: no genuine matched directions");

    auto common_roots = [&](const std::array<std::vector<BigComplex>, 7>& minors)
        -> std::optional<std::vector<BigComplex>> {
        const std::vector<BigComplex>* anchor = nullptr;
        for (const auto& m : minors)
            if (m.size() > 1 && (!anchor || m.size() > anchor->size())) anchor = &m;
        if (!anchor) {
            for (const auto& m : minors)
                if (!m.empty()) return std::vector<BigComplex>{};  // nonzero constant: no scale works
            return std::nullopt;                                   // rank < 6 identically: unrestrictive
        }
        std::vector<BigComplex> keep;
        for (auto& z : aberth_roots(*anchor, prec)) {
            bool ok = true;
            for (const auto& m : minors)
                if (!m.empty() && horner(m, z, prec).abs() > root_tol) ok = false;
            if (!ok) continue;
            bool dup = false;
            for (const auto& k : keep)
                if ((z - k).abs() < cluster_tol) dup = true;
            if (!dup) keep.push_back(z);
        }
        return keep;
    };

    std::vector<BigComplex> candidates;
    bool seeded = false;
    for (const auto& minors : bond_minors) {
        auto roots = common_roots(minors);
        if (!roots) continue;
        if (!seeded) {
            candidates = *roots;
            seeded = true;
            continue;
        }
        std::vector<BigComplex> next;
        for (const auto& c : candidates)
            for (const auto& z : *roots)
                if ((c - z).abs() < cluster_tol) {
                    next.push_back(c);
                    break;
                }
        candidates = std::move(next);
        if (candidates.empty()) break;
    }
    if (!seeded) throw std::domain_error("tang2_solve: every bond is scale-unrestrictive");

    Tang2Result out;
    out.bonds = static_cast<int>(bond_minors.size());
    out.precision_used = prec;
    out.residual = BigFloat(prec);
    for (const auto& z : candidates) {
        if (z.im.abs() > root_tol) continue;  // platform scales are real
        auto q = rationalize(z.re, den_bound);
        if (!q) return std::nullopt;  // retry at higher precision
        if (is_zero(*q)) continue;    // a collapsed platform is never a hexapod
        out.gammas.push_back(*q);
    }
    std::sort(out.gammas.begin(), out.gammas.end());
    out.gammas.erase(std::unique(out.gammas.begin(), out.gammas.end()), out.gammas.end());
    for (const auto& g : out.gammas) {
        BigComplex gz = BigComplex::from_rat(g, prec);
        for (const auto& minors : bond_minors)
            for (const auto& m : minors)
                if (!m.empty()) {
                    BigFloat v = horner(m, gz, prec).abs();
                    if (out.residual < v) out.residual = v;
                }
    }
    return out;
}

}  // namespace detail

/// Platform scales gamma for which every bond admits a second-order contact:
/// the 6x7 tangency matrix eta(gamma) must drop rank at each bond
/// simultaneously.  Root intersection is numeric; the returned scales are
/// rationalized, escalating the working precision once if that fails.
inline Tang2Result tang2_solve(const SixTuple& base, const SixTuple& platform, mpfr_prec_t prec = 256,
                               const Int& den_bound = Int(1000000000000L)) {
    if (auto r = detail::tang2_attempt(base, platform, prec, den_bound)) return *r;
    if (auto r = detail::tang2_attempt(base, platform, 2 * prec, den_bound)) return *r;
    throw std::runtime_error("tang2_solve: rationalization failed at escalated precision");
}

// --------------------------------------------------------------------------
// Third-order tangency: leg subspace recovery
// --------------------------------------------------------------------------

/// One reduced relation: leg_sq[pivot] = sum coef[j] * leg_sq[free_vars[j]] + cst.
struct LegRelationRow {
    int pivot = -1;
    std::vector<int> free_vars;
    std::vector<Rat> coef;
    Rat cst;
};

struct Tang3Result {
    bool solvable = false;
    int dim = -1;
    std::vector<LegRelationRow> relations;
    mpfr_prec_t precision_used = 0;
};

namespace detail {

/// Data of the order-3 contact condition at one bond: coefficients of the
/// squared legs and the leg-free part, one complex row per cokernel vector.
struct JetRow {
    std::array<BigComplex, 6> coef;
    BigComplex rhs;
};

inline std::vector<JetRow> bond_jet_rows(const Bond& b, const SixTuple& base, const SixTuple& platform,
                                         mpfr_prec_t prec) {
    BigFloat tol = pow2(-(static_cast<long>(prec) / 2), prec);
    auto sph = spherical_split(base, platform, prec);
    CMat T = tangent_space_at_bond(b, prec);
    CMat eta(6, CVec(7, BigComplex(prec)));
    for (size_t i = 0; i < 6; ++i)
        for (size_t col = 0; col < 7; ++col)
            eta[i][col] = dot17(sph[i].f0, T[col], prec) + dot17(sph[i].f1, T[col], prec);

    auto kernel = cnullspace(eta, tol);
    auto cokernel = cleft_nullspace(eta, tol);
    if (kernel.size() < 2 || cokernel.empty())
        throw std::domain_error("bond_jet_rows: bond is not second-order tangent (run the scale solve first)");

    // Contact direction: the kernel ray independent of the bond itself.
    CVec betac(7, BigComplex(prec));
    betac[0] = b.alpha;
    betac[3] = b.lambda;
    betac[4] = b.mu;
    betac[5] = b.rho;
    BigComplex bnorm(prec);
    for (size_t j = 0; j < 7; ++j) bnorm += betac[j] * betac[j].conj();
    CVec best;
    BigFloat best_n2(prec);
    for (const auto& k : kernel) {
        BigComplex proj(prec);
        for (size_t j = 0; j < 7; ++j) proj += k[j] * betac[j].conj();
        proj = proj / bnorm;
        CVec r(7, BigComplex(prec));
        BigFloat n2(prec);
        for (size_t j = 0; j < 7; ++j) {
            r[j] = k[j] - proj * betac[j];
            n2 += r[j].abs2();
        }
        if (best.empty() || best_n2 < n2) {
            best = std::move(r);
            best_n2 = n2;
        }
    }
    Point17<BigComplex> c1;
    c1.fill(BigComplex(prec));
    for (size_t col = 0; col < 7; ++col)
        for (int k = 0; k < kC17; ++k)
            c1[static_cast<size_t>(k)] += best[col] * T[col][static_cast<size_t>(k)];

    // Particular second-order correction from the ambient quadrics:
    // grad Q(c0) . c2 = -Q(c1) for every defining quadric.
    Point17<BigComplex> c0 = bond_point(b, prec);
    const auto& quadrics = x_defining_quadrics();
    CMat G(quadrics.size(), CVec(static_cast<size_t>(kC17), BigComplex(prec)));
    CVec rhs(quadrics.size(), BigComplex(prec));
    for (size_t q = 0; q < quadrics.size(); ++q) {
        auto grad = gradient_at(quadrics[q], c0, prec);
        for (int k = 0; k < kC17; ++k) G[q][static_cast<size_t>(k)] = grad[static_cast<size_t>(k)];
        rhs[q] = -eval_mpoly_c(quadrics[q], c1, prec);
    }
    auto [c2, c2kern] = csolve_affine(G, rhs, tol);
    if (c2.empty()) throw std::domain_error("bond_jet_rows: second-order jet system is inconsistent");
    BigComplex h2 = c2[static_cast<size_t>(c17_h())];

    // Spherical forms on c2 carry the legs through the h component; the
    // tangent ambiguity of c2 is absorbed by the cokernel of eta.
    std::array<BigComplex, 6> base_val;
    for (size_t i = 0; i < 6; ++i) {
        base_val[i] = dot17(sph[i].f0, c2, prec) + dot17(sph[i].f1, c2, prec);
        Rat pp(0), PP(0);
        for (size_t j = 0; j < 3; ++j) {
            pp += platform[static_cast<int>(i)][j] * platform[static_cast<int>(i)][j];
            PP += base[static_cast<int>(i)][j] * base[static_cast<int>(i)][j];
        }
        base_val[i] += h2 * to_complex(pp + PP, prec);
    }
    std::vector<JetRow> rows;
    for (const auto& l : cokernel) {
        JetRow row;
        row.rhs = BigComplex(prec);
        for (size_t i = 0; i < 6; ++i) {
            row.coef[i] = l[i] * h2;
            row.rhs += l[i] * base_val[i];
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::optional<Tang3Result> tang3_attempt(const SixTuple& base, const SixTuple& platform,
                                                mpfr_prec_t prec, const Int& den_bound) {
    auto A = photographic_map(base);
    auto B = photographic_map(platform);
    auto matched = matched_directions(A, B, prec);

    std::vector<std::array<BigFloat, 7>> real_rows;
    auto push_real = [&](const std::array<BigFloat, 7>& r) {
        BigFloat top(prec);
        for (const auto& v : r) {
            BigFloat a = v.abs();
            if (top < a) top = a;
        }
        if (!(top > pow2(-(static_cast<long>(prec) * 2 / 3), prec))) return;
        std::array<BigFloat, 7> n;
        for (size_t j = 0; j < 7; ++j) n[j] = r[j] / top;
        real_rows.push_back(std::move(n));
    };
    for (const auto& pair : matched.pairs) {
        if (pair.node_coincidence) continue;
        Bond b = bond_solve(base, platform, pair, prec);
        for (const auto& row : bond_jet_rows(b, base, platform, prec)) {
            std::array<BigFloat, 7> re, im;
            for (size_t i = 0; i < 6; ++i) {
                re[i] = row.coef[i].re;
                im[i] = row.coef[i].im;
            }
            re[6] = row.rhs.re;
            im[6] = row.rhs.im;
            push_real(re);
            push_real(im);
        }
    }
    if (real_rows.empty()) throw std::domain_error("tang3_solve: no leg conditions at any bond");

    // Reduce with the high legs leading so the relations come out solved for
    // leg_sq[3..5] in terms of leg_sq[0..2] whenever that block is regular.
    static constexpr std::array<size_t, 6> kColVar{3, 4, 5, 0, 1, 2};
    CMat sys(real_rows.size(), CVec(7, BigComplex(prec)));
    for (size_t r = 0; r < real_rows.size(); ++r) {
        for (size_t j = 0; j < 6; ++j) sys[r][j] = BigComplex(real_rows[r][kColVar[j]], BigFloat(prec));
        sys[r][6] = BigComplex(real_rows[r][6], BigFloat(prec));
    }
    BigFloat rank_tol = pow2(-(static_cast<long>(prec) / 3), prec);
    auto pivots = crref(sys, rank_tol);

    Tang3Result out;
    out.precision_used = prec;
    if (!pivots.empty() && pivots.back() == 6) {
        out.solvable = false;
        out.dim = -1;
        return out;
    }
    out.solvable = true;
    out.dim = 6 - static_cast<int>(pivots.size());
    std::vector<bool> is_pivot(6, false);
    for (auto c : pivots) is_pivot[c] = true;
    for (size_t r = 0; r < pivots.size(); ++r) {
        LegRelationRow rel;
        rel.pivot = static_cast<int>(kColVar[pivots[r]]);
        auto q = rationalize(sys[r][6].re, den_bound);
        if (!q) return std::nullopt;
        rel.cst = *q;
        for (size_t j = 0; j < 6; ++j) {
            if (is_pivot[j]) continue;
            rel.free_vars.push_back(static_cast<int>(kColVar[j]));
            auto c = rationalize(-sys[r][j].re, den_bound);
            if (!c) return std::nullopt;
            rel.coef.push_back(*c);
        }
        out.relations.push_back(std::move(rel));
    }
    std::sort(out.relations.begin(), out.relations.end(),
              [](const LegRelationRow& a, const LegRelationRow& b) { return a.pivot < b.pivot; });
    return out;
}

}  // namespace detail

/// Squared-leg subspace for third-order contact at every bond of the
/// gamma-scaled pair: the order-3 jet condition is one linear constraint on
/// the squared legs per bond (complex, split into real pairs); the reduced
/// solution space is returned with exact rational relations.  Leg values are
/// reported even when not realizable by real lengths.
inline Tang3Result tang3_solve(const SixTuple& base, const SixTuple& platform, const Rat& gamma,
                               mpfr_prec_t prec = 256, const Int& den_bound = Int(1000000000000L)) {
    SixTuple scaled = scale_tuple(platform, gamma);
    if (auto r = detail::tang3_attempt(base, scaled, prec, den_bound)) return *r;
    if (auto r = detail::tang3_attempt(base, scaled, 2 * prec, den_bound)) return *r;
    throw std::runtime_error("tang3_solve: rationalization failed at escalated precision");
}

// --------------------------------------------------------------------------
// Movability certificate
// --------------------------------------------------------------------------

struct BondJet {
    BigComplex u, s;
    bool u_inf = false, s_inf = false;
    int multiplicity = 1;
    int jet_order = 2;   // verified contact order of the constraint curve
    BigFloat residual;   // order-3 solvability residual with the given legs
};

struct MovabilityCertificate {
    bool movable = false;
    int bond_count = 0;
    int total_contact = 0;        // sum over bonds of multiplicity * jet order
    int ambient_degree = 40;      // degree of the conformal embedding variety
    std::vector<BondJet> bonds;
    int motion_poly_degree = -1;  // attached by the elimination layer when run
};

/// Mobility certificate: every matched direction must be a genuine bond whose
/// order-3 jet condition is satisfied by the given squared legs.  The contact
/// total then exceeds the ambient intersection bound (14 * 3 = 42 > 40), so
/// the constraint curve meets the boundary positively and the hexapod moves.
inline MovabilityCertificate movability_certificate(const Hexapod& hex, const Rat& gamma,
                                                    mpfr_prec_t prec = 256) {
    SixTuple platform = scale_tuple(hex.platform, gamma);
    auto A = photographic_map(hex.base);
    auto B = photographic_map(platform);
    auto matched = matched_directions(A, B, prec);

    MovabilityCertificate cert;
    BigFloat jet_tol = pow2(-(static_cast<long>(prec) / 3), prec);
    bool all_jets = true;
    for (const auto& pair : matched.pairs) {
        if (pair.node_coincidence) {
            all_jets = false;
            continue;
        }
        Bond b = bond_solve(hex.base, platform, pair, prec);
        BondJet jet;
        jet.u = pair.u;
        jet.s = pair.s;
        jet.u_inf = pair.u_inf;
        jet.s_inf = pair.s_inf;
        jet.multiplicity = pair.multiplicity;
        jet.residual = BigFloat(prec);
        try {
            for (const auto& row : detail::bond_jet_rows(b, hex.base, platform, prec)) {
                BigComplex acc = row.rhs;
                BigFloat scale = row.rhs.abs();
                for (size_t i = 0; i < 6; ++i) {
                    BigComplex term = row.coef[i] * to_complex(hex.leg_sq[i], prec);
                    acc -= term;
                    scale += term.abs();
                }
                if (!(scale > BigFloat(prec))) scale = BigFloat::from_rat(Rat(1), prec);
                BigFloat res = acc.abs() / scale;
                if (jet.residual < res) jet.residual = res;
            }
            jet.jet_order = jet.residual < jet_tol ? 3 : 2;
        } catch (const std::domain_error&) {
            jet.jet_order = 1;  // not even second-order tangent at this scale
            jet.residual = BigFloat::from_rat(Rat(1), prec);
        }
        if (jet.jet_order < 3) all_jets = false;
        cert.total_contact += jet.multiplicity * jet.jet_order;
        ++cert.bond_count;
        cert.bonds.push_back(std::move(jet));
    }
    cert.movable = all_jets && cert.total_contact > cert.ambient_degree;
    return cert;
}

}  // namespace hexmotion
