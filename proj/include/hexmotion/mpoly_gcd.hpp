#pragma once

#include "hexmotion/mpoly.hpp"
#include "hexmotion/upoly.hpp"

#include <stdexcept>
#include <vector>

namespace hexmotion {

/// Primitive gcd of univariate rationals: integer-primitive remainder
/// sequence, result primitive with positive leading coefficient.
inline UPoly<Rat> upoly_gcd_primitive(UPoly<Rat> a, UPoly<Rat> b) {
    auto make_prim = [](UPoly<Rat>& p) {
        if (p.is_zero_poly()) return;
        Rat g(0);
        for (const auto& c : p.c) g = rat_gcd(g, c);
        if (p.lc() < 0) g = -g;
        for (auto& c : p.c) c /= g;
    };
    make_prim(a);
    make_prim(b);
    if (a.is_zero_poly()) return b;
    if (b.is_zero_poly()) return a;
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero_poly()) {
        UPoly<Rat> r = a % b;
        make_prim(r);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

namespace detail {

inline std::vector<int> effective_vars(const MPoly& a, const MPoly& b) {
    std::vector<int> out;
    for (int i = 0; i < a.nv; ++i)
        if (a.degree_in(i) > 0 || b.degree_in(i) > 0) out.push_back(i);
    return out;
}

inline Rat sample_node(int k) {
    // 0, 1, -1, 2, -2, ...
    if (k == 0) return Rat(0);
    int m = (k + 1) / 2;
    return (k % 2) ? Rat(m) : Rat(-m);
}

MPoly mpoly_gcd_inner(const MPoly& A, const MPoly& B);

inline MPoly gcd_list(const std::vector<MPoly>& ps) {
    if (ps.empty()) throw std::invalid_argument("gcd_list: empty");
    MPoly g = MPoly::zero(ps[0].nv);
    for (const auto& p : ps) {
        g = mpoly_gcd_inner(g, p);
        if (g.is_constant() && !g.is_zero()) break;
    }
    return g;
}

/// General recursive gcd for primitive inputs.  Main variable v: content and
/// leading-coefficient bookkeeping in the remaining variables, one of which
/// is sampled and interpolated; candidates are certified by trial division.
inline MPoly mpoly_gcd_inner(const MPoly& A, const MPoly& B) {
    if (A.is_zero()) return B.is_zero() ? B : B.primitive();
    if (B.is_zero()) return A.primitive();
    if (A.is_constant() || B.is_constant()) return MPoly::constant(A.nv, Rat(1));

    auto vars = effective_vars(A, B);
    if (vars.empty()) return MPoly::constant(A.nv, Rat(1));
    if (vars.size() == 1) {
        int v = vars[0];
        if (A.degree_in(v) <= 0 || B.degree_in(v) <= 0) return MPoly::constant(A.nv, Rat(1));
        UPoly<Rat> g = upoly_gcd_primitive(mpoly_to_upoly(A, v), mpoly_to_upoly(B, v));
        return upoly_to_mpoly(g, A.nv, v);
    }

    int v = vars.front();
    if (A.degree_in(v) <= 0 || B.degree_in(v) <= 0) {
        // v only occurs in one input: gcd has no v; recurse on v-coefficients.
        const MPoly& with_v = A.degree_in(v) > 0 ? A : B;
        const MPoly& other = A.degree_in(v) > 0 ? B : A;
        std::vector<MPoly> parts{other};
        for (auto& [k, c] : with_v.coeffs_in(v)) parts.push_back(c);
        return gcd_list(parts);
    }

    auto coeffA = A.coeffs_in(v), coeffB = B.coeffs_in(v);
    std::vector<MPoly> ca, cb;
    for (auto& [k, c] : coeffA) ca.push_back(c);
    for (auto& [k, c] : coeffB) cb.push_back(c);
    MPoly contA = gcd_list(ca), contB = gcd_list(cb);
    MPoly ppA = *A.exact_div(contA);
    MPoly ppB = *B.exact_div(contB);
    MPoly cont_g = mpoly_gcd_inner(contA, contB);

    MPoly lcA = coeffA.rbegin()->second.exact_div(contA).value();
    MPoly lcB = coeffB.rbegin()->second.exact_div(contB).value();
    MPoly gamma = mpoly_gcd_inner(lcA, lcB);

    int w = vars.back();
    int points_cap = gamma.degree_in(w) + std::min(ppA.degree_in(w), ppB.degree_in(w)) + 1;

    auto lc_in_v = [v](const MPoly& p) {
        auto cs = p.coeffs_in(v);
        return cs.rbegin()->second;
    };

    for (int round = 0; round < 4; ++round) {
        std::vector<Rat> nodes;
        std::vector<MPoly> vals;
        int min_deg = -1;
        int k = round * 200;
        int inspected = 0;
        while (static_cast<int>(nodes.size()) < points_cap && inspected < 1000) {
            Rat tval = sample_node(k++);
            ++inspected;
            if (lcA.eval_partial(w, tval).is_zero()) continue;
            if (lcB.eval_partial(w, tval).is_zero()) continue;
            MPoly at = ppA.eval_partial(w, tval);
            MPoly bt = ppB.eval_partial(w, tval);
            MPoly gt = mpoly_gcd_inner(at, bt);
            int dv = gt.degree_in(v);
            if (dv == 0) return cont_g;  // coprime primitive parts
            if (min_deg < 0 || dv < min_deg) {
                min_deg = dv;
                nodes.clear();
                vals.clear();
            }
            if (dv > min_deg) continue;  // unlucky sample
            MPoly gr = gamma.eval_partial(w, tval);
            auto scaled = (gr * gt).exact_div(lc_in_v(gt));
            if (!scaled) continue;
            nodes.push_back(tval);
            vals.push_back(*scaled);
        }
        if (nodes.empty()) break;
        MPoly cand = newton_interpolate(w, nodes, vals).primitive();
        if (cand.is_zero()) continue;
        if (ppA.exact_div(cand) && ppB.exact_div(cand)) return cont_g * cand;
    }
    throw std::runtime_error("mpoly_gcd: interpolation failed to certify a gcd");
}

}  // namespace detail

/// gcd of multivariate rationals, primitive with positive grlex-leading
/// coefficient.  Homogeneous inputs are reduced to one fewer effective
/// variable first (a gcd of homogeneous polynomials is homogeneous).
inline MPoly mpoly_gcd(const MPoly& A, const MPoly& B) {
    if (A.is_zero()) return B.is_zero() ? B : B.primitive();
    if (B.is_zero()) return A.primitive();
    if (A.is_constant() || B.is_constant()) return MPoly::constant(A.nv, Rat(1));
    if (A.is_homogeneous() && B.is_homogeneous()) {
        auto vars = detail::effective_vars(A, B);
        int h = vars.front();
        int a = A.min_power(h), b = B.min_power(h);
        MPoly Ad = A.shift_power(h, -a).eval_partial(h, Rat(1));
        MPoly Bd = B.shift_power(h, -b).eval_partial(h, Rat(1));
        MPoly g = detail::mpoly_gcd_inner(Ad.primitive(), Bd.primitive());
        MPoly gh = g.is_zero() ? g : g.homogenize(h, g.total_degree());
        gh = gh.shift_power(h, std::min(a, b));
        return gh.is_zero() ? gh : gh.primitive();
    }
    return detail::mpoly_gcd_inner(A.primitive(), B.primitive());
}

inline MPoly mpoly_gcd_list(const std::vector<MPoly>& ps) {
    if (ps.empty()) throw std::invalid_argument("mpoly_gcd_list: empty");
    MPoly g = MPoly::zero(ps[0].nv);
    for (const auto& p : ps) {
        g = mpoly_gcd(g, p);
        if (g.is_constant() && !g.is_zero()) break;
    }
    return g;
}

}  // namespace hexmotion
