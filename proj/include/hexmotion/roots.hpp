#pragma once

#include "hexmotion/bigfloat.hpp"
#include "hexmotion/upoly.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace hexmotion {

struct RootCluster {
    BigComplex z;
    int multiplicity = 1;
};

namespace detail {

inline BigComplex horner(const std::vector<BigComplex>& a, const BigComplex& z, mpfr_prec_t prec) {
    BigComplex acc(prec);
    for (size_t i = a.size(); i-- > 0;) acc = acc * z + a[i];
    return acc;
}

inline std::vector<BigComplex> derivative_coeffs(const std::vector<BigComplex>& a, mpfr_prec_t prec) {
    std::vector<BigComplex> d;
    for (size_t i = 1; i < a.size(); ++i)
        d.push_back(BigComplex::from_rat(Rat(static_cast<long>(i)), prec) * a[i]);
    return d;
}

inline BigComplex unit_angle(int k, int n, mpfr_prec_t prec) {
    // exp(2*pi*i*(k + 3/8)/n)
    BigFloat two_pi(prec);
    mpfr_const_pi(two_pi.raw(), MPFR_RNDN);
    BigFloat ang = two_pi * BigFloat::from_rat(Rat(8 * k + 3, 4 * n), prec);
    BigFloat c(prec), s(prec);
    mpfr_sin_cos(s.raw(), c.raw(), ang.raw(), MPFR_RNDN);
    return {c, s};
}

}  // namespace detail

/// Newton refinement of z against the polynomial with ascending coefficients a.
inline BigComplex newton_refine(const std::vector<BigComplex>& a, BigComplex z, mpfr_prec_t prec, int iters = 64) {
    auto d = detail::derivative_coeffs(a, prec);
    BigFloat eps = pow2(-(static_cast<long>(prec) - 4), prec);
    for (int it = 0; it < iters; ++it) {
        BigComplex pv = detail::horner(a, z, prec);
        if (pv.is_zero()) break;
        BigComplex dv = detail::horner(d, z, prec);
        if (dv.is_zero()) break;
        BigComplex step = pv / dv;
        z = z - step;
        BigFloat scale = BigFloat::from_int(1, prec) + z.abs();
        if (step.abs() < eps * scale) break;
    }
    return z;
}

/// Aberth-Ehrlich simultaneous iteration; expects a squarefree polynomial
/// with nonzero leading coefficient, ascending coefficients.
inline std::vector<BigComplex> aberth_roots(const std::vector<BigComplex>& a, mpfr_prec_t prec) {
    int n = static_cast<int>(a.size()) - 1;
    if (n <= 0) return {};
    if (n == 1) return {-(a[0] / a[1])};

    BigFloat lead = a[n].abs();
    BigFloat radius = BigFloat::from_int(1, prec);
    for (int k = 0; k < n; ++k) {
        BigFloat q = a[k].abs() / lead;
        if (q > radius) radius = q;
    }
    radius = radius + BigFloat::from_int(1, prec);

    std::vector<BigComplex> z(n, BigComplex(prec));
    for (int i = 0; i < n; ++i) z[i] = BigComplex{radius, BigFloat(prec)} * detail::unit_angle(i, n, prec);

    auto d = detail::derivative_coeffs(a, prec);
    BigFloat eps = pow2(-(static_cast<long>(prec) - 8), prec);
    for (int it = 0; it < 500; ++it) {
        BigFloat worst(prec);
        for (int i = 0; i < n; ++i) {
            BigComplex pv = detail::horner(a, z[i], prec);
            if (pv.is_zero()) continue;
            BigComplex dv = detail::horner(d, z[i], prec);
            BigComplex ni = dv.is_zero() ? pv : pv / dv;
            BigComplex s(prec);
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                BigComplex diff = z[i] - z[j];
                if (diff.is_zero()) {
                    // coincident iterates: nudge apart
                    diff = BigComplex{eps + eps, eps};
                    z[j] = z[j] + diff;
                }
                s += BigComplex::from_rat(Rat(1), prec) / (z[i] - z[j]);
            }
            BigComplex denom = BigComplex::from_rat(Rat(1), prec) - ni * s;
            BigComplex step = denom.is_zero() ? ni : ni / denom;
            z[i] = z[i] - step;
            BigFloat rel = step.abs() / (BigFloat::from_int(1, prec) + z[i].abs());
            if (rel > worst) worst = rel;
        }
        if (!(worst > eps)) break;
    }
    for (int i = 0; i < n; ++i) z[i] = newton_refine(a, z[i], prec);
    return z;
}

inline bool complex_before(const BigComplex& a, const BigComplex& b) {
    int c = a.re.cmp(b.re);
    if (c != 0) return c < 0;
    return a.im.cmp(b.im) < 0;
}

/// Newton divided-difference interpolation; returns ascending coefficients of
/// the unique polynomial of degree < xs.size() through the given samples.
inline std::vector<BigComplex> cpoly_interpolate(const std::vector<BigComplex>& xs,
                                                 const std::vector<BigComplex>& ys, mpfr_prec_t prec) {
    size_t n = xs.size();
    if (ys.size() != n || n == 0) throw std::invalid_argument("cpoly_interpolate: bad node data");
    std::vector<BigComplex> dd(ys);
    for (size_t level = 1; level < n; ++level)
        for (size_t i = n - 1; i >= level; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
    std::vector<BigComplex> acc{dd[n - 1]};
    for (size_t i = n - 1; i-- > 0;) {
        acc.insert(acc.begin(), BigComplex(prec));
        for (size_t j = 0; j + 1 < acc.size(); ++j) acc[j] -= xs[i] * acc[j + 1];
        acc[0] += dd[i];
    }
    return acc;
}

/// Drop leading coefficients whose magnitude is below rel_tol times the
/// largest coefficient magnitude (numeric degree normalization).
inline std::vector<BigComplex> cpoly_trim(std::vector<BigComplex> a, const BigFloat& rel_tol) {
    BigFloat top = a.empty() ? BigFloat(64) : a[0].abs();
    for (const auto& c : a) {
        BigFloat m = c.abs();
        if (top < m) top = m;
    }
    BigFloat cut = top * rel_tol;
    while (a.size() > 1 && !(a.back().abs() > cut)) a.pop_back();
    return a;
}

/// All complex roots with multiplicities: exact squarefree split first, then
/// Aberth + Newton on each squarefree factor, deterministically sorted.
template <class K>
std::vector<RootCluster> roots_with_multiplicity(const UPoly<K>& p, mpfr_prec_t prec) {
    if (p.degree() <= 0) return {};
    std::vector<RootCluster> out;
    for (const auto& [factor, mult] : squarefree_decomposition(p)) {
        std::vector<BigComplex> coeffs;
        for (const auto& c : factor.c) coeffs.push_back(to_complex(c, prec));
        for (auto& z : aberth_roots(coeffs, prec)) out.push_back({std::move(z), mult});
    }
    std::sort(out.begin(), out.end(), [](const RootCluster& a, const RootCluster& b) {
        return complex_before(a.z, b.z);
    });
    return out;
}

}  // namespace hexmotion
