#pragma once

#include "hexmotion/conic.hpp"
#include "hexmotion/linalg_exact.hpp"
#include "hexmotion/linalg_complex.hpp"
#include "hexmotion/modular.hpp"
#include "hexmotion/mpoly.hpp"
#include "hexmotion/roots.hpp"
#include "hexmotion/sixtuple.hpp"
#include "hexmotion/upoly.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hexmotion {

struct EquiformError : std::domain_error {
    using std::domain_error::domain_error;
};

using GPoly = UPoly<GaussRat>;

/// Binary form over Q(i), stored in the affine chart t1 = 1 together with
/// its formal homogeneous degree; the difference records the multiplicity
/// of the root at infinity.
struct BForm {
    GPoly p;
    int fdeg = 0;

    bool is_zero_form() const { return p.is_zero_poly(); }
    int inf_mult() const { return p.is_zero_poly() ? fdeg : fdeg - p.degree(); }
    /// Coefficient in top (formal-degree) position; the value at (1 : 0).
    GaussRat top() const { return p.coeff(static_cast<size_t>(fdeg)); }
};

inline Rat gauss_poly_content(const GPoly& f) {
    Rat g(0);
    for (int i = 0; i <= f.degree(); ++i) {
        GaussRat c = f.coeff(static_cast<size_t>(i));
        if (!is_zero(c.re)) g = rat_gcd(g, rat_abs(c.re));
        if (!is_zero(c.im)) g = rat_gcd(g, rat_abs(c.im));
    }
    return g;
}

/// Strip the rational content; keeps coefficients small without leaving Q(i).
inline GPoly gauss_poly_primitive(const GPoly& f) {
    Rat c = gauss_poly_content(f);
    if (is_zero(c) || c == 1) return f;
    return GaussRat(Rat(1) / c) * f;
}

/// Monic gcd over Q(i) by Euclid with per-step content stripping; fine for
/// the small degrees of single plane-difference products.
inline GPoly gauss_poly_gcd_euclid(GPoly a, GPoly b) {
    a = gauss_poly_primitive(a);
    b = gauss_poly_primitive(b);
    while (!b.is_zero_poly()) {
        GPoly r = gauss_poly_primitive(a % b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

namespace detail {

inline std::optional<Fp2Poly> gpoly_mod(const GPoly& f, uint64_t p) {
    Fp2Poly out;
    out.reserve(static_cast<size_t>(f.degree() + 1));
    for (int i = 0; i <= f.degree(); ++i) {
        auto c = gauss_mod2(f.coeff(static_cast<size_t>(i)), p);
        if (!c) return std::nullopt;
        out.push_back(*c);
    }
    if (!out.empty() && out.back().is_zero()) return std::nullopt;  // leading coeff killed
    return out;
}

}  // namespace detail

/// Monic gcd over Q(i) by reduction mod word-size primes p = 3 (mod 4),
/// Chinese remaindering of the monic images, rational reconstruction of the
/// coefficients and certification by exact trial division.  A single good
/// prime with coprime images certifies gcd = 1 outright, since reduction can
/// only enlarge the gcd.
inline GPoly gauss_poly_gcd_modular(const GPoly& A, const GPoly& B) {
    if (A.is_zero_poly()) return B.monic();
    if (B.is_zero_poly()) return A.monic();
    if (A.degree() == 0 || B.degree() == 0) return GPoly::constant(GaussRat(Rat(1)));

    int min_deg = std::min(A.degree(), B.degree()) + 1;
    std::vector<CrtValue> crt_re, crt_im;
    uint64_t below = 1ull << 31;
    int since_attempt = 0;
    for (int iter = 0; iter < 4096; ++iter) {
        uint64_t p = next_prime_3mod4(below);
        below = p;
        auto ap = detail::gpoly_mod(A, p);
        auto bp = detail::gpoly_mod(B, p);
        if (!ap || !bp) continue;
        Fp2Poly g = fp2_gcd_monic(*ap, *bp, p);
        int dg = static_cast<int>(g.size()) - 1;
        if (dg == 0) return GPoly::constant(GaussRat(Rat(1)));
        if (dg > min_deg) continue;  // unlucky prime
        if (dg < min_deg) {
            min_deg = dg;
            crt_re.assign(static_cast<size_t>(dg), CrtValue{});
            crt_im.assign(static_cast<size_t>(dg), CrtValue{});
            since_attempt = 0;
        }
        for (int i = 0; i < dg; ++i) {
            crt_re[static_cast<size_t>(i)].absorb(g[static_cast<size_t>(i)].a, p);
            crt_im[static_cast<size_t>(i)].absorb(g[static_cast<size_t>(i)].b, p);
        }
        if (++since_attempt < 3 && iter < 4090) continue;
        since_attempt = 0;
        std::vector<GaussRat> cand(static_cast<size_t>(min_deg + 1));
        cand[static_cast<size_t>(min_deg)] = GaussRat(Rat(1));
        bool ok = true;
        for (int i = 0; i < min_deg && ok; ++i) {
            auto re = rational_reconstruct(crt_re[static_cast<size_t>(i)].value, crt_re[static_cast<size_t>(i)].modulus);
            auto im = rational_reconstruct(crt_im[static_cast<size_t>(i)].value, crt_im[static_cast<size_t>(i)].modulus);
            if (!re || !im) {
                ok = false;
                break;
            }
            cand[static_cast<size_t>(i)] = GaussRat(*re, *im);
        }
        if (!ok) continue;
        GPoly gc(std::move(cand));
        if ((A % gc).is_zero_poly() && (B % gc).is_zero_poly()) return gc;
    }
    throw std::runtime_error("gauss_poly_gcd_modular: reconstruction failed");
}

/// Monic gcd over Q(i); dispatches between direct Euclid (small degrees) and
/// the modular algorithm (interpolated resultants and other large inputs).
inline GPoly gauss_poly_gcd(const GPoly& a, const GPoly& b) {
    if (std::max(a.degree(), b.degree()) <= 20) return gauss_poly_gcd_euclid(a, b);
    return gauss_poly_gcd_modular(a, b);
}

inline BForm bform_mul(const BForm& a, const BForm& b) { return {a.p * b.p, a.fdeg + b.fdeg}; }

inline BForm bform_gcd(const BForm& a, const BForm& b) {
    if (a.is_zero_form()) return b;
    if (b.is_zero_form()) return a;
    GPoly g = gauss_poly_gcd(a.p, b.p);
    int inf = std::min(a.inf_mult(), b.inf_mult());
    return {g, g.degree() + inf};
}

inline BForm bform_exact_div(const BForm& a, const BForm& g) {
    auto [q, r] = a.p.divrem(g.p);
    if (!r.is_zero_poly()) throw std::logic_error("bform_exact_div: division is not exact");
    return {q, a.fdeg - g.fdeg};
}

/// Restriction of the linear form L to the conic parametrization:
/// L(c(t)) = (i b + c) + 2a t + (i b - c) t^2 for L = (a, b, c).
inline GPoly linear_on_conic(const Vec3& L) {
    GaussRat i = GaussRat::I();
    GaussRat a{L[0]}, b{L[1]}, c{L[2]};
    return GPoly({i * b + c, GaussRat(Rat(2)) * a, i * b - c});
}

// --------------------------------------------------------------------------
// Photographic map
// --------------------------------------------------------------------------

/// Index pairs of the five plane-difference triples:
/// phi0 = H12 H36 H45, phi1 = H14 H23 H56, phi2 = H16 H25 H34,
/// phi3 = H16 H23 H45, phi4 = H12 H34 H56   (1-based labels).
inline constexpr int kPhiPairs[5][3][2] = {
    {{0, 1}, {2, 5}, {3, 4}}, {{0, 3}, {1, 2}, {4, 5}}, {{0, 5}, {1, 4}, {2, 3}},
    {{0, 5}, {1, 2}, {3, 4}}, {{0, 1}, {2, 3}, {4, 5}}};

struct PhotographicMap {
    SixTuple tuple;
    std::array<BForm, 5> phi;  // components after common-factor removal
    BForm common;              // removed common factor (monic)
    int form_degree = 0;       // shared formal degree of the reduced phi
    int map_degree = 0;        // 1 (birational) or 2 (planar tuple)
    int image_degree = 0;
    std::string classification;
};

inline PhotographicMap photographic_map(const SixTuple& tuple) {
    if (!tuple.all_distinct())
        throw std::invalid_argument("photographic_map: anchor points must be pairwise distinct");
    PhotographicMap m;
    m.tuple = tuple;
    for (int k = 0; k < 5; ++k) {
        BForm f{GPoly::constant(GaussRat(Rat(1))), 0};
        for (const auto& ij : kPhiPairs[k]) {
            GPoly q = linear_on_conic(h_form(tuple, ij[0], ij[1]));
            if (q.is_zero_poly())
                throw std::invalid_argument("photographic_map: degenerate plane difference");
            f = bform_mul(f, BForm{q, 2});
        }
        m.phi[static_cast<size_t>(k)] = f;
    }
    BForm g = m.phi[0];
    for (int k = 1; k < 5; ++k) g = bform_gcd(g, m.phi[static_cast<size_t>(k)]);
    m.common = g;
    for (auto& f : m.phi) f = bform_exact_div(f, g);
    m.form_degree = 6 - g.fdeg;
    if (m.form_degree <= 0) {
        m.classification = "degenerate";
        return m;
    }
    if (tuple.planar()) {
        m.map_degree = 2;
        if (m.form_degree % 2 != 0) {
            m.classification = "degenerate";
            return m;
        }
        m.image_degree = m.form_degree / 2;
        m.classification = "planar-2:1-deg-" + std::to_string(m.image_degree);
    } else {
        m.map_degree = 1;
        m.image_degree = m.form_degree;
        m.classification = "birational-" + std::to_string(m.image_degree);
    }
    return m;
}

/// Value of the reduced map at a finite parameter / at infinity.
inline std::array<BigComplex, 5> map_value(const PhotographicMap& m, const BigComplex& t,
                                           mpfr_prec_t prec) {
    std::array<BigComplex, 5> v{BigComplex(prec), BigComplex(prec), BigComplex(prec),
                                BigComplex(prec), BigComplex(prec)};
    for (int k = 0; k < 5; ++k) v[static_cast<size_t>(k)] = m.phi[static_cast<size_t>(k)].p.eval_complex(t, prec);
    return v;
}

inline std::array<GaussRat, 5> map_value_infinity(const PhotographicMap& m) {
    std::array<GaussRat, 5> v;
    for (int k = 0; k < 5; ++k) v[static_cast<size_t>(k)] = m.phi[static_cast<size_t>(k)].top();
    return v;
}

// --------------------------------------------------------------------------
// Segre cubic
// --------------------------------------------------------------------------

/// Cubic relation satisfied by every photographic map with this component
/// ordering: x3 x4 (x0+x1+x2+x3+x4) - x0 x1 x2.
inline MPoly segre_cubic() {
    MPoly s = MPoly::zero(5);
    for (int k = 0; k < 5; ++k) s = s + MPoly::var(5, k);
    return MPoly::var(5, 3) * MPoly::var(5, 4) * s - MPoly::var(5, 0) * MPoly::var(5, 1) * MPoly::var(5, 2);
}

inline bool segre_check(const std::array<BForm, 5>& f) {
    GPoly sum;
    for (const auto& c : f) sum = sum + c.p;
    GPoly lhs = f[3].p * f[4].p * sum - f[0].p * f[1].p * f[2].p;
    return lhs.is_zero_poly();
}

inline bool segre_check(const PhotographicMap& m) { return segre_check(m.phi); }

// --------------------------------------------------------------------------
// t-plane roots of a single plane difference
// --------------------------------------------------------------------------

struct TPlaneRoots {
    std::vector<std::pair<BigComplex, int>> finite;
    int inf_mult = 0;
};

/// Parameters at which anchors i and j share a projecting plane: the two
/// roots (with multiplicity) of H_ij(c(t)) as a degree-2 binary form.
inline TPlaneRoots t_plane_roots(const SixTuple& tuple, int i, int j, mpfr_prec_t prec) {
    GPoly q = linear_on_conic(h_form(tuple, i, j));
    if (q.is_zero_poly()) throw std::invalid_argument("t_plane_roots: zero plane difference");
    TPlaneRoots out;
    out.inf_mult = 2 - q.degree();
    for (auto& rc : roots_with_multiplicity(q, prec)) out.finite.emplace_back(rc.z, rc.multiplicity);
    return out;
}

// --------------------------------------------------------------------------
// Quadric pencil through the image curve
// --------------------------------------------------------------------------

struct QuadricPencil {
    // Coefficient vectors over the 15 monomials x_k x_l (k <= l, lex order).
    std::vector<std::array<Rat, 15>> basis;
    int dim() const { return static_cast<int>(basis.size()); }
};

inline int quadric_monomial_index(int k, int l) {
    if (k > l) std::swap(k, l);
    int idx = 0;
    for (int a = 0; a < k; ++a) idx += 5 - a;
    return idx + (l - k);
}

inline MPoly quadric_to_mpoly(const std::array<Rat, 15>& c) {
    MPoly q = MPoly::zero(5);
    int idx = 0;
    for (int k = 0; k < 5; ++k)
        for (int l = k; l < 5; ++l, ++idx)
            if (!is_zero(c[static_cast<size_t>(idx)]))
                q = q + c[static_cast<size_t>(idx)] * (MPoly::var(5, k) * MPoly::var(5, l));
    return q;
}

/// Exact kernel of "vanish on the image": quadrics Q with Q(phi(t)) = 0.
inline QuadricPencil quadric_pencil(const PhotographicMap& m) {
    if (m.classification.rfind("birational", 0) != 0)
        throw std::domain_error("quadric_pencil: map must be birational");
    int prod_deg = 2 * m.form_degree;
    Mat<Rat> sys(static_cast<size_t>(2 * (prod_deg + 1)), std::vector<Rat>(15, Rat(0)));
    size_t idx = 0;
    for (int k = 0; k < 5; ++k)
        for (int l = k; l < 5; ++l, ++idx) {
            GPoly prod = m.phi[static_cast<size_t>(k)].p * m.phi[static_cast<size_t>(l)].p;
            for (int d = 0; d <= prod_deg; ++d) {
                GaussRat c = prod.coeff(static_cast<size_t>(d));
                sys[static_cast<size_t>(2 * d)][idx] = c.re;
                sys[static_cast<size_t>(2 * d + 1)][idx] = c.im;
            }
        }
    QuadricPencil out;
    for (auto& v : nullspace(sys)) {
        // integer-primitive, first nonzero coefficient positive
        Rat g(0);
        for (auto& x : v)
            if (!is_zero(x)) g = rat_gcd(g, rat_abs(x));
        std::array<Rat, 15> q;
        Rat scale = is_zero(g) ? Rat(1) : Rat(1) / g;
        int lead = -1;
        for (int i = 0; i < 15; ++i) {
            q[static_cast<size_t>(i)] = v[static_cast<size_t>(i)] * scale;
            if (lead < 0 && !is_zero(q[static_cast<size_t>(i)])) lead = i;
        }
        if (lead >= 0 && sgn(q[static_cast<size_t>(lead)]) < 0)
            for (auto& x : q) x = -x;
        out.basis.push_back(q);
    }
    return out;
}

/// Exact evaluation of a pencil quadric along the map: Q(phi(t)).
inline GPoly pencil_pullback(const std::array<Rat, 15>& c, const std::array<BForm, 5>& phi) {
    GPoly acc;
    int idx = 0;
    for (int k = 0; k < 5; ++k)
        for (int l = k; l < 5; ++l, ++idx)
            if (!is_zero(c[static_cast<size_t>(idx)]))
                acc = acc + GaussRat(c[static_cast<size_t>(idx)]) * (phi[static_cast<size_t>(k)].p * phi[static_cast<size_t>(l)].p);
    return acc;
}

// --------------------------------------------------------------------------
// Bivariate minors and matched directions
// --------------------------------------------------------------------------

/// Polynomial in (u, s) stored as coefficients of u-powers.
struct BiPoly {
    std::vector<GPoly> cu;  // cu[a] = coefficient of u^a, a poly in s

    int deg_u() const {
        for (size_t a = cu.size(); a-- > 0;)
            if (!cu[a].is_zero_poly()) return static_cast<int>(a);
        return -1;
    }
    bool is_zero() const { return deg_u() < 0; }
    void trim() {
        while (!cu.empty() && cu.back().is_zero_poly()) cu.pop_back();
    }
    GPoly eval_s(const GaussRat& s0) const {
        std::vector<GaussRat> c;
        c.reserve(cu.size());
        for (const auto& p : cu) c.push_back(p.eval(s0));
        return GPoly(std::move(c));
    }
    BigComplex eval(const BigComplex& u0, const BigComplex& s0, mpfr_prec_t prec) const {
        BigComplex acc(prec);
        for (size_t a = cu.size(); a-- > 0;) acc = acc * u0 + cu[a].eval_complex(s0, prec);
        return acc;
    }
};

/// m_kl(u, s) = A_k(u) B_l(s) - A_l(u) B_k(s).
inline BiPoly cross_minor(const GPoly& ak, const GPoly& al, const GPoly& bk, const GPoly& bl) {
    int du = std::max(ak.degree(), al.degree());
    BiPoly m;
    m.cu.reserve(static_cast<size_t>(du + 1));
    for (int a = 0; a <= du; ++a) {
        GPoly row = ak.coeff(static_cast<size_t>(a)) * bl - al.coeff(static_cast<size_t>(a)) * bk;
        m.cu.push_back(std::move(row));
    }
    m.trim();
    return m;
}

/// Exact quotient of m by (u - s); requires m(s, s) = 0 identically.
inline BiPoly divide_by_diagonal(const BiPoly& m) {
    int d = m.deg_u();
    if (d < 1) throw std::logic_error("divide_by_diagonal: u-degree too small");
    GPoly s = GPoly::x();
    BiPoly q;
    q.cu.assign(static_cast<size_t>(d), GPoly());
    GPoly carry = m.cu[static_cast<size_t>(d)];
    for (int a = d - 1; a >= 0; --a) {
        q.cu[static_cast<size_t>(a)] = carry;
        carry = (a < static_cast<int>(m.cu.size()) ? m.cu[static_cast<size_t>(a)] : GPoly()) + s * carry;
    }
    if (!carry.is_zero_poly()) throw std::logic_error("divide_by_diagonal: remainder nonzero");
    q.trim();
    return q;
}

namespace detail {

/// Denominator-cleared coefficient grid of a BiPoly: g[a][j] is the Gaussian
/// integer at u^a s^j (global scale only, so interpolated values stay
/// consistent across nodes).
inline std::vector<std::vector<GInt>> gint_grid(const BiPoly& f) {
    Int den(1);
    for (const auto& row : f.cu)
        for (int j = 0; j <= row.degree(); ++j) {
            const GaussRat c = row.coeff(static_cast<size_t>(j));
            Int d;
            mpz_lcm(d.get_mpz_t(), Int(c.re.get_den()).get_mpz_t(), Int(c.im.get_den()).get_mpz_t());
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
        }
    Rat scale{den};
    std::vector<std::vector<GInt>> g;
    g.reserve(f.cu.size());
    for (const auto& row : f.cu) {
        std::vector<GInt> r;
        r.reserve(static_cast<size_t>(row.degree() + 1));
        for (int j = 0; j <= row.degree(); ++j) {
            GaussRat c = row.coeff(static_cast<size_t>(j));
            Rat re = c.re * scale, im = c.im * scale;
            r.emplace_back(Int(re.get_num()), Int(im.get_num()));
        }
        g.push_back(std::move(r));
    }
    return g;
}

inline GInt gint_row_eval(const std::vector<GInt>& row, const Int& s0) {
    GInt acc;
    for (size_t j = row.size(); j-- > 0;) {
        acc.re = acc.re * s0 + row[j].re;
        acc.im = acc.im * s0 + row[j].im;
    }
    return acc;
}

}  // namespace detail

/// Res_u of two bivariate polynomials by node interpolation in s, with the
/// per-node Sylvester determinants taken fraction-free over Z[i]; nodes where
/// either leading u-coefficient vanishes are skipped so that every sampled
/// resultant has the full formal degrees.
inline GPoly bipoly_resultant_u(const BiPoly& A, const BiPoly& B) {
    int da = A.deg_u(), db = B.deg_u();
    if (da < 0 || db < 0) return GPoly();
    if (da == 0 || db == 0) {
        // Res with a constant-in-u polynomial: lc^deg of the other side.
        const GPoly& base = (da == 0) ? A.cu[0] : B.cu[0];
        int e = (da == 0) ? db : da;
        GPoly r = GPoly::constant(GaussRat(Rat(1)));
        for (int i = 0; i < e; ++i) r = r * base;
        return r;
    }
    int ds_a = 0, ds_b = 0;
    for (const auto& p : A.cu) ds_a = std::max(ds_a, p.degree());
    for (const auto& p : B.cu) ds_b = std::max(ds_b, p.degree());
    int bound = db * ds_a + da * ds_b;
    auto ga = detail::gint_grid(A), gb = detail::gint_grid(B);
    std::vector<GaussRat> xs;
    std::vector<GaussRat> ys;
    long node = 0;
    while (static_cast<int>(xs.size()) < bound + 1) {
        Int s0(node);
        node = (node > 0) ? -node : -node + 1;
        std::vector<GInt> av(static_cast<size_t>(da + 1)), bv(static_cast<size_t>(db + 1));
        for (int a = 0; a <= da; ++a) av[static_cast<size_t>(a)] = detail::gint_row_eval(ga[static_cast<size_t>(a)], s0);
        for (int b = 0; b <= db; ++b) bv[static_cast<size_t>(b)] = detail::gint_row_eval(gb[static_cast<size_t>(b)], s0);
        if (av.back().is_zero() || bv.back().is_zero()) continue;
        GInt r = gint_resultant(av, bv);
        xs.emplace_back(Rat(s0));
        ys.emplace_back(Rat(r.re), Rat(r.im));
    }
    return upoly_interpolate(xs, ys);
}

struct MatchedPair {
    BigComplex u, s;
    bool u_inf = false, s_inf = false;
    int multiplicity = 1;
    bool node_coincidence = false;
};

struct MatchedResult {
    std::vector<MatchedPair> pairs;
    GPoly match_poly;  // monic polynomial in s cutting out the finite matches
    int total_multiplicity = 0;
};

namespace detail {

inline bool maps_projectively_equal(const std::array<BForm, 5>& A, const std::array<BForm, 5>& B) {
    for (int k = 0; k < 5; ++k)
        for (int l = k + 1; l < 5; ++l) {
            GPoly d = A[static_cast<size_t>(k)].p * B[static_cast<size_t>(l)].p -
                      A[static_cast<size_t>(l)].p * B[static_cast<size_t>(k)].p;
            if (!d.is_zero_poly()) return false;
        }
    return true;
}

/// Relative parallelism residual of the two value vectors.
inline BigFloat parallel_residual(const std::array<BigComplex, 5>& a, const std::array<BigComplex, 5>& b,
                                  mpfr_prec_t prec) {
    BigFloat na(prec), nb(prec), worst(prec);
    for (int k = 0; k < 5; ++k) {
        BigFloat ma = a[static_cast<size_t>(k)].abs();
        BigFloat mb = b[static_cast<size_t>(k)].abs();
        if (na < ma) na = ma;
        if (nb < mb) nb = mb;
    }
    BigFloat scale = na * nb;
    if (scale.is_zero()) return BigFloat::from_int(1, prec);
    for (int k = 0; k < 5; ++k)
        for (int l = k + 1; l < 5; ++l) {
            BigFloat m = (a[static_cast<size_t>(k)] * b[static_cast<size_t>(l)] -
                          a[static_cast<size_t>(l)] * b[static_cast<size_t>(k)])
                             .abs();
            if (worst < m) worst = m;
        }
    return worst / scale;
}

inline std::array<BigComplex, 5> value_of(const std::array<BForm, 5>& f, const BigComplex& t,
                                          mpfr_prec_t prec) {
    std::array<BigComplex, 5> v{BigComplex(prec), BigComplex(prec), BigComplex(prec),
                                BigComplex(prec), BigComplex(prec)};
    for (int k = 0; k < 5; ++k) v[static_cast<size_t>(k)] = f[static_cast<size_t>(k)].p.eval_complex(t, prec);
    return v;
}

inline std::array<BigComplex, 5> top_of(const std::array<BForm, 5>& f, mpfr_prec_t prec) {
    std::array<BigComplex, 5> v{BigComplex(prec), BigComplex(prec), BigComplex(prec),
                                BigComplex(prec), BigComplex(prec)};
    for (int k = 0; k < 5; ++k) v[static_cast<size_t>(k)] = to_complex(f[static_cast<size_t>(k)].top(), prec);
    return v;
}

/// Candidate u-values matched to the fixed projective value b, found as the
/// roots of the cross polynomial against the dominant component of b, then
/// filtered by the full 2x5 parallelism residual.
inline std::vector<BigComplex> matched_u_candidates(const std::array<BForm, 5>& A,
                                                    const std::array<BigComplex, 5>& b, bool& u_inf,
                                                    mpfr_prec_t prec) {
    int K = 0;
    for (int k = 1; k < 5; ++k)
        if (b[static_cast<size_t>(K)].abs2() < b[static_cast<size_t>(k)].abs2()) K = k;
    // cross polynomial r_l(u) = A_l(u) b_K - A_K(u) b_l for the strongest l != K
    int L = (K == 0) ? 1 : 0;
    for (int l = 0; l < 5; ++l) {
        if (l == K) continue;
        if (b[static_cast<size_t>(L)].abs2() < b[static_cast<size_t>(l)].abs2()) L = l;
    }
    int dmax = std::max(A[static_cast<size_t>(K)].p.degree(), A[static_cast<size_t>(L)].p.degree());
    std::vector<BigComplex> coeffs;
    coeffs.reserve(static_cast<size_t>(dmax + 1));
    for (int a = 0; a <= dmax; ++a) {
        BigComplex c = to_complex(A[static_cast<size_t>(L)].p.coeff(static_cast<size_t>(a)), prec) * b[static_cast<size_t>(K)] -
                       to_complex(A[static_cast<size_t>(K)].p.coeff(static_cast<size_t>(a)), prec) * b[static_cast<size_t>(L)];
        coeffs.push_back(c);
    }
    while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
    BigFloat tol = pow2(-(static_cast<long>(prec) / 3), prec);
    std::vector<BigComplex> out;
    u_inf = false;
    if (coeffs.size() >= 2) {
        for (auto& z : aberth_roots(coeffs, prec)) {
            auto av = value_of(A, z, prec);
            if (parallel_residual(av, b, prec) < tol) out.push_back(z);
        }
    }
    // the direction at u = infinity
    auto atop = top_of(A, prec);
    bool top_nonzero = false;
    for (auto& c : atop)
        if (!c.is_zero()) top_nonzero = true;
    if (top_nonzero && parallel_residual(atop, b, prec) < tol) u_inf = true;
    return out;
}

struct CoreResult {
    std::vector<MatchedPair> pairs;
    GPoly match_poly;
};

/// Matched-direction core: projective parameter pairs (u, s) with
/// A(u) parallel to B(s).  Finite s handled through a gcd of u-resultants of
/// cross minors over at least three disjoint index pairings; u recovered and
/// verified per root.  Infinity handled exactly through top-coefficient
/// minors, with a reversed-chart recursion for the doubly-infinite pair.
inline CoreResult matched_core(const std::array<BForm, 5>& A, const std::array<BForm, 5>& B,
                               mpfr_prec_t prec, bool handle_infinity) {
    CoreResult out;

    std::array<std::array<BiPoly, 5>, 5> minor;
    for (int k = 0; k < 5; ++k)
        for (int l = k + 1; l < 5; ++l)
            minor[static_cast<size_t>(k)][static_cast<size_t>(l)] =
                cross_minor(A[static_cast<size_t>(k)].p, A[static_cast<size_t>(l)].p,
                            B[static_cast<size_t>(k)].p, B[static_cast<size_t>(l)].p);

    static constexpr int combos[5][4] = {
        {0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}, {0, 4, 1, 3}, {0, 1, 2, 4}};
    GPoly g;
    int used = 0;
    for (const auto& c : combos) {
        const BiPoly& ma = minor[static_cast<size_t>(c[0])][static_cast<size_t>(c[1])];
        const BiPoly& mb = minor[static_cast<size_t>(c[2])][static_cast<size_t>(c[3])];
        if (ma.is_zero() || mb.is_zero()) continue;
        GPoly r = bipoly_resultant_u(ma, mb);
        if (r.is_zero_poly()) continue;
        g = used ? gauss_poly_gcd(g, r) : gauss_poly_primitive(r).monic();
        ++used;
        if (used >= 3 && g.degree() == 0) break;
    }
    if (used < 3 && g.degree() != 0)
        throw std::domain_error("matched_directions: too few independent minor pairs");
    out.match_poly = g;

    BigFloat tol = pow2(-(static_cast<long>(prec) / 3), prec);
    if (g.degree() > 0) {
        for (auto& rc : roots_with_multiplicity(g, prec)) {
            auto bv = value_of(B, rc.z, prec);
            bool u_inf = false;
            auto us = matched_u_candidates(A, bv, u_inf, prec);
            int found = static_cast<int>(us.size()) + (u_inf ? 1 : 0);
            if (found == 0) continue;  // spurious factor of the chosen resultant pairs
            if (found > 1)
                throw std::domain_error("matched_directions: ambiguous match fan-out at a root");
            MatchedPair p;
            p.s = rc.z;
            p.multiplicity = rc.multiplicity;
            if (u_inf)
                p.u_inf = true;
            else
                p.u = us[0];
            out.pairs.push_back(std::move(p));
        }
    }

    if (handle_infinity) {
        // s = infinity: exact gcd of cross polynomials against top(B).
        std::array<GaussRat, 5> btop;
        bool btop_nonzero = false;
        for (int k = 0; k < 5; ++k) {
            btop[static_cast<size_t>(k)] = B[static_cast<size_t>(k)].top();
            if (!is_zero(btop[static_cast<size_t>(k)])) btop_nonzero = true;
        }
        if (btop_nonzero) {
            GPoly gu;
            bool first = true;
            for (int k = 0; k < 5 && (first || gu.degree() != 0); ++k)
                for (int l = k + 1; l < 5; ++l) {
                    GPoly r = btop[static_cast<size_t>(l)] * A[static_cast<size_t>(k)].p -
                              btop[static_cast<size_t>(k)] * A[static_cast<size_t>(l)].p;
                    if (first && !r.is_zero_poly()) {
                        gu = gauss_poly_primitive(r).monic();
                        first = false;
                    } else if (!first) {
                        gu = gauss_poly_gcd(gu, r);
                    }
                }
            if (!first && gu.degree() > 0) {
                auto btv = top_of(B, prec);
                for (auto& rc : roots_with_multiplicity(gu, prec)) {
                    auto av = value_of(A, rc.z, prec);
                    if (parallel_residual(av, btv, prec) < tol) {
                        MatchedPair p;
                        p.u = rc.z;
                        p.s_inf = true;
                        p.multiplicity = rc.multiplicity;
                        out.pairs.push_back(std::move(p));
                    }
                }
            }
            // (infinity, infinity): compare top directions exactly, then take the
            // multiplicity from the reversed charts.
            std::array<GaussRat, 5> atop;
            for (int k = 0; k < 5; ++k) atop[static_cast<size_t>(k)] = A[static_cast<size_t>(k)].top();
            bool tops_parallel = true, atop_nonzero = false;
            for (int k = 0; k < 5; ++k) {
                if (!is_zero(atop[static_cast<size_t>(k)])) atop_nonzero = true;
                for (int l = k + 1; l < 5; ++l)
                    if (!is_zero(atop[static_cast<size_t>(k)] * btop[static_cast<size_t>(l)] -
                                 atop[static_cast<size_t>(l)] * btop[static_cast<size_t>(k)]))
                        tops_parallel = false;
            }
            if (atop_nonzero && tops_parallel) {
                auto rev = [](const std::array<BForm, 5>& f) {
                    std::array<BForm, 5> r;
                    for (int k = 0; k < 5; ++k) {
                        const BForm& src = f[static_cast<size_t>(k)];
                        std::vector<GaussRat> cc(static_cast<size_t>(src.fdeg + 1), GaussRat());
                        for (int a = 0; a <= src.fdeg; ++a) cc[static_cast<size_t>(src.fdeg - a)] = src.p.coeff(static_cast<size_t>(a));
                        r[static_cast<size_t>(k)] = BForm{GPoly(std::move(cc)), src.fdeg};
                    }
                    return r;
                };
                CoreResult inner = matched_core(rev(A), rev(B), prec, false);
                BigFloat eps = pow2(-(static_cast<long>(prec) / 4), prec);
                for (auto& p : inner.pairs)
                    if (!p.u_inf && !p.s_inf && p.u.abs() < eps && p.s.abs() < eps) {
                        MatchedPair q;
                        q.u_inf = q.s_inf = true;
                        q.multiplicity = p.multiplicity;
                        out.pairs.push_back(std::move(q));
                    }
            }
        }
    }
    return out;
}

}  // namespace detail

/// Node-coincidence test: with W_i = <P_i, w> and V_i = <p_i, v>, a matched
/// pair is a genuine bond exactly when the 6x4 coefficient matrix of the
/// pseudo-spherical system has rank 3; rank 4 signals a node coincidence.
inline bool node_coincidence_flag(const std::array<BigComplex, 6>& W, const std::array<BigComplex, 6>& V,
                                  mpfr_prec_t prec) {
    CMat N(6, CVec(4, BigComplex(prec)));
    BigFloat scale(prec);
    for (size_t i = 0; i < 6; ++i) {
        N[i][0] = W[i] * V[i];
        N[i][1] = V[i];
        N[i][2] = W[i];
        N[i][3] = BigComplex::from_rat(Rat(1), prec);
        for (int c = 0; c < 4; ++c) {
            BigFloat m = N[i][static_cast<size_t>(c)].abs();
            if (scale < m) scale = m;
        }
    }
    if (scale.is_zero()) return false;
    BigComplex inv{BigFloat::from_int(1, prec) / scale, BigFloat(prec)};
    for (size_t i = 0; i < 6; ++i)
        for (size_t c = 0; c < 4; ++c) N[i][c] *= inv;
    BigFloat tol = pow2(-(static_cast<long>(prec) / 2), prec);
    return crank(N, tol) >= 4;
}

/// Matched directions of two photographic maps: parameter pairs (u, s) where
/// the base map value is projectively equal to the platform map value.
inline MatchedResult matched_directions(const PhotographicMap& base, const PhotographicMap& platform,
                                        mpfr_prec_t prec) {
    if (detail::maps_projectively_equal(base.phi, platform.phi))
        throw EquiformError("matched_directions: equiform pair (identical photographic maps)");
    auto core = detail::matched_core(base.phi, platform.phi, prec, true);
    MatchedResult out;
    out.match_poly = core.match_poly;
    out.pairs = std::move(core.pairs);
    for (auto& p : out.pairs) {
        auto w = p.u_inf ? conic_point_c_inf(prec) : conic_point_c(p.u, prec);
        auto v = p.s_inf ? conic_point_c_inf(prec) : conic_point_c(p.s, prec);
        std::array<BigComplex, 6> W{BigComplex(prec), BigComplex(prec), BigComplex(prec),
                                    BigComplex(prec), BigComplex(prec), BigComplex(prec)};
        std::array<BigComplex, 6> V = W;
        for (int i = 0; i < 6; ++i)
            for (int c = 0; c < 3; ++c) {
                W[static_cast<size_t>(i)] += to_complex(base.tuple[i][static_cast<size_t>(c)], prec) * w[static_cast<size_t>(c)];
                V[static_cast<size_t>(i)] += to_complex(platform.tuple[i][static_cast<size_t>(c)], prec) * v[static_cast<size_t>(c)];
            }
        p.node_coincidence = node_coincidence_flag(W, V, prec);
        out.total_multiplicity += p.multiplicity;
    }
    return out;
}

// --------------------------------------------------------------------------
// Generality test (injectivity + immersion)
// --------------------------------------------------------------------------

struct GeneralityReport {
    bool injective = false;
    bool immersive = false;
    GPoly self_match_poly;
    GPoly immersion_defect;
    int immersion_defect_inf = 0;
    bool general() const { return injective && immersive; }
};

namespace detail {

/// gcd of the 10 Wronskian forms phi_k phi_l' - phi_l phi_k'; the finite part
/// plus the shared vanishing order at infinity measures immersion defects.
inline std::pair<GPoly, int> immersion_defect_form(const std::array<BForm, 5>& phi) {
    GPoly g;
    int inf = -1;
    bool first = true;
    for (int k = 0; k < 5; ++k)
        for (int l = k + 1; l < 5; ++l) {
            GPoly w = phi[static_cast<size_t>(k)].p * phi[static_cast<size_t>(l)].p.derivative() -
                      phi[static_cast<size_t>(l)].p * phi[static_cast<size_t>(k)].p.derivative();
            if (w.is_zero_poly()) continue;
            int fdeg = phi[static_cast<size_t>(k)].fdeg + phi[static_cast<size_t>(l)].fdeg - 2;
            int wm = fdeg - w.degree();
            if (first) {
                g = gauss_poly_primitive(w).monic();
                inf = wm;
                first = false;
            } else {
                g = gauss_poly_gcd(g, w);
                inf = std::min(inf, wm);
            }
        }
    if (first) throw std::domain_error("immersion test: all Wronskians vanish (degenerate map)");
    return {g, inf};
}

}  // namespace detail

/// Injectivity + immersion of a photographic map, both needed before bond
/// counting can equate intersection multiplicities with parameter data.
inline GeneralityReport moebius_general_test(const PhotographicMap& m, mpfr_prec_t prec) {
    GeneralityReport rep;
    auto [defect, definf] = detail::immersion_defect_form(m.phi);
    rep.immersion_defect = defect;
    rep.immersion_defect_inf = definf;
    rep.immersive = (defect.degree() == 0) && (definf == 0);

    // Self-matching with the diagonal removed.
    std::array<std::array<BiPoly, 5>, 5> minor;
    for (int k = 0; k < 5; ++k)
        for (int l = k + 1; l < 5; ++l) {
            BiPoly raw = cross_minor(m.phi[static_cast<size_t>(k)].p, m.phi[static_cast<size_t>(l)].p,
                                     m.phi[static_cast<size_t>(k)].p, m.phi[static_cast<size_t>(l)].p);
            if (raw.is_zero())
                minor[static_cast<size_t>(k)][static_cast<size_t>(l)] = raw;
            else
                minor[static_cast<size_t>(k)][static_cast<size_t>(l)] = divide_by_diagonal(raw);
        }
    static constexpr int combos[5][4] = {
        {0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}, {0, 4, 1, 3}, {0, 1, 2, 4}};
    GPoly g;
    int used = 0;
    for (const auto& c : combos) {
        const BiPoly& ma = minor[static_cast<size_t>(c[0])][static_cast<size_t>(c[1])];
        const BiPoly& mb = minor[static_cast<size_t>(c[2])][static_cast<size_t>(c[3])];
        if (ma.is_zero() || mb.is_zero()) continue;
        GPoly r = bipoly_resultant_u(ma, mb);
        if (r.is_zero_poly()) continue;
        g = used ? gauss_poly_gcd(g, r) : gauss_poly_primitive(r).monic();
        ++used;
        if (used >= 3 && g.degree() == 0) break;
    }
    if (used < 3 && g.degree() != 0)
        throw std::domain_error("moebius_general_test: too few independent minor pairs");
    rep.self_match_poly = g;

    bool off_diagonal_match = false;
    if (g.degree() > 0) {
        // Verify candidates: an actual double point needs u != s with parallel values.
        BigFloat tol = pow2(-(static_cast<long>(prec) / 3), prec);
        BigFloat sep = pow2(-(static_cast<long>(prec) / 4), prec);
        for (auto& rc : roots_with_multiplicity(g, prec)) {
            auto bv = detail::value_of(m.phi, rc.z, prec);
            bool u_inf = false;
            auto us = detail::matched_u_candidates(m.phi, bv, u_inf, prec);
            if (u_inf) off_diagonal_match = true;
            for (auto& u : us)
                if ((u - rc.z).abs() > sep) off_diagonal_match = true;
            (void)tol;
        }
    }
    // Finite parameter matching the direction at infinity.
    std::array<GaussRat, 5> top;
    bool any_top = false;
    for (int k = 0; k < 5; ++k) {
        top[static_cast<size_t>(k)] = m.phi[static_cast<size_t>(k)].top();
        if (!is_zero(top[static_cast<size_t>(k)])) any_top = true;
    }
    if (any_top) {
        GPoly gu;
        bool first = true;
        for (int k = 0; k < 5; ++k)
            for (int l = k + 1; l < 5; ++l) {
                GPoly r = top[static_cast<size_t>(l)] * m.phi[static_cast<size_t>(k)].p -
                          top[static_cast<size_t>(k)] * m.phi[static_cast<size_t>(l)].p;
                if (first && !r.is_zero_poly()) {
                    gu = gauss_poly_primitive(r).monic();
                    first = false;
                } else if (!first) {
                    gu = gauss_poly_gcd(gu, r);
                }
            }
        if (!first && gu.degree() > 0) off_diagonal_match = true;
    }
    rep.injective = !off_diagonal_match;
    return rep;
}

// --------------------------------------------------------------------------
// Residual intersection count
// --------------------------------------------------------------------------

struct ResidualCount {
    int count = 0;
    GPoly factor;  // common factor of the Jacobian minors along the curve
    int inf_mult = 0;
};

namespace detail {

inline GPoly substitute_map(const MPoly& poly, const std::array<BForm, 5>& phi) {
    GPoly acc;
    for (const auto& [e, c] : poly.t) {
        GPoly term = GPoly::constant(GaussRat(c));
        for (int v = 0; v < 5; ++v)
            for (uint32_t rep = 0; rep < e[static_cast<size_t>(v)]; ++rep) term = term * phi[static_cast<size_t>(v)].p;
        acc = acc + term;
    }
    return acc;
}

}  // namespace detail

/// Multiplicity, along the photographic curve, of the common zero scheme of
/// the two pencil quadrics and the cubic relation: the gcd of the 3x3 minors
/// of the pulled-back Jacobian, counted with the vanishing order at infinity.
/// Requires a smooth curve (immersion defects sharing a factor are an error).
inline ResidualCount residual_intersection_count(const PhotographicMap& m, const QuadricPencil& pencil) {
    if (m.classification != "birational-6")
        throw std::domain_error("residual_intersection_count: map must be birational of degree 6");
    if (pencil.dim() != 2)
        throw std::domain_error("residual_intersection_count: pencil dimension must be 2");

    std::array<MPoly, 3> polys{quadric_to_mpoly(pencil.basis[0]), quadric_to_mpoly(pencil.basis[1]),
                               segre_cubic()};
    // rows of the pulled-back Jacobian
    std::array<std::array<GPoly, 5>, 3> J;
    for (int r = 0; r < 3; ++r)
        for (int v = 0; v < 5; ++v)
            J[static_cast<size_t>(r)][static_cast<size_t>(v)] =
                detail::substitute_map(polys[static_cast<size_t>(r)].derivative(v), m.phi);
    // gradients of the quadrics are linear in x, of the cubic quadratic
    std::array<int, 3> row_fdeg{m.form_degree, m.form_degree, 2 * m.form_degree};

    GPoly g;
    int inf = -1;
    bool first = true;
    for (int a = 0; a < 5; ++a)
        for (int b = a + 1; b < 5; ++b)
            for (int c = b + 1; c < 5; ++c) {
                GPoly det = J[0][static_cast<size_t>(a)] * (J[1][static_cast<size_t>(b)] * J[2][static_cast<size_t>(c)] - J[1][static_cast<size_t>(c)] * J[2][static_cast<size_t>(b)]) -
                            J[0][static_cast<size_t>(b)] * (J[1][static_cast<size_t>(a)] * J[2][static_cast<size_t>(c)] - J[1][static_cast<size_t>(c)] * J[2][static_cast<size_t>(a)]) +
                            J[0][static_cast<size_t>(c)] * (J[1][static_cast<size_t>(a)] * J[2][static_cast<size_t>(b)] - J[1][static_cast<size_t>(b)] * J[2][static_cast<size_t>(a)]);
                if (det.is_zero_poly()) continue;
                int fdeg = row_fdeg[0] + row_fdeg[1] + row_fdeg[2];
                int im = fdeg - det.degree();
                if (first) {
                    g = gauss_poly_primitive(det).monic();
                    inf = im;
                    first = false;
                } else {
                    g = gauss_poly_gcd(g, det);
                    inf = std::min(inf, im);
                }
            }
    if (first) throw std::domain_error("residual_intersection_count: Jacobian minors all vanish");

    auto [defect, definf] = detail::immersion_defect_form(m.phi);
    GPoly shared = gauss_poly_gcd(g, defect);
    if (shared.degree() > 0 || (inf > 0 && definf > 0))
        throw std::domain_error("residual_intersection_count: curve has a singular point in the count");

    ResidualCount out;
    out.factor = g;
    out.inf_mult = inf;
    out.count = std::max(g.degree(), 0) + inf;
    return out;
}

}  // namespace hexmotion
