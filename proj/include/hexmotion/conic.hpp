#pragma once

#include "hexmotion/bigfloat.hpp"
#include "hexmotion/gauss.hpp"

#include <array>
#include <stdexcept>

namespace hexmotion {

/// Parameter on the isotropic conic {x^2 + y^2 + z^2 = 0}: a finite value t
/// or the point at infinity of the parametrization.
struct ParamPoint {
    bool infinite = false;
    GaussRat t;

    static ParamPoint at(GaussRat v) { return {false, std::move(v)}; }
    static ParamPoint inf() { return {true, GaussRat()}; }

    friend bool operator==(const ParamPoint& a, const ParamPoint& b) {
        return a.infinite == b.infinite && (a.infinite || a.t == b.t);
    }
};

/// c(t) = (2t : i(1+t^2) : 1-t^2); c(inf) = (0 : i : -1).
inline std::array<GaussRat, 3> conic_point(const ParamPoint& p) {
    GaussRat i = GaussRat::I();
    if (p.infinite) return {GaussRat(Rat(0)), i, GaussRat(Rat(-1))};
    GaussRat t2 = p.t * p.t;
    return {GaussRat(Rat(2)) * p.t, i * (GaussRat(Rat(1)) + t2), GaussRat(Rat(1)) - t2};
}

inline std::array<BigComplex, 3> conic_point_c(const BigComplex& t, mpfr_prec_t prec) {
    BigComplex i{BigFloat(prec), BigFloat::from_int(1, prec)};
    BigComplex one = BigComplex::from_rat(Rat(1), prec);
    BigComplex two = BigComplex::from_rat(Rat(2), prec);
    BigComplex t2 = t * t;
    return {two * t, i * (one + t2), one - t2};
}

inline std::array<BigComplex, 3> conic_point_c_inf(mpfr_prec_t prec) {
    return {BigComplex(prec), BigComplex{BigFloat(prec), BigFloat::from_int(1, prec)},
            BigComplex::from_rat(Rat(-1), prec)};
}

/// Antipodal involution on parameters: sigma(t) = -1/conj(t); sigma(0) = inf,
/// sigma(inf) = 0.  It realizes c(sigma(t)) ~ conj(c(t)) projectively and has
/// no fixed points.
inline ParamPoint sigma_param(const ParamPoint& p) {
    if (p.infinite) return ParamPoint::at(GaussRat(Rat(0)));
    if (p.t.is_zero()) return ParamPoint::inf();
    return ParamPoint::at(-(GaussRat(Rat(1)) / p.t.conj()));
}

inline BigComplex sigma_param_c(const BigComplex& t, mpfr_prec_t prec) {
    if (t.is_zero()) throw std::domain_error("sigma_param_c: image is the point at infinity");
    return -(BigComplex::from_rat(Rat(1), prec) / t.conj());
}

/// Derivative c'(t) = (2, 2it, -2t); note <c'(t), c'(t)> = 4 identically,
/// so derivative directions from the standard chart are already co-scaled.
inline std::array<GaussRat, 3> conic_tangent(const GaussRat& t) {
    GaussRat i = GaussRat::I();
    return {GaussRat(Rat(2)), GaussRat(Rat(2)) * i * t, GaussRat(Rat(-2)) * t};
}

inline std::array<BigComplex, 3> conic_tangent_c(const BigComplex& t, mpfr_prec_t prec) {
    BigComplex i{BigFloat(prec), BigFloat::from_int(1, prec)};
    BigComplex two = BigComplex::from_rat(Rat(2), prec);
    return {two, two * i * t, -(two * t)};
}

/// Reversed chart around infinity: c~(s) = (2s : i(1+s^2) : -(1-s^2)) covers
/// c(inf) at s = 0; its derivative also has squared norm 4.
inline std::array<BigComplex, 3> conic_point_rev_c(const BigComplex& s, mpfr_prec_t prec) {
    auto p = conic_point_c(s, prec);
    return {p[0], p[1], -p[2]};
}

inline std::array<BigComplex, 3> conic_tangent_rev_c(const BigComplex& s, mpfr_prec_t prec) {
    auto d = conic_tangent_c(s, prec);
    return {d[0], d[1], -d[2]};
}

}  // namespace hexmotion
