#pragma once

#include "hexmotion/rational.hpp"

#include <stdexcept>
#include <string>

namespace hexmotion {

/// Gaussian rational a + b*i.  Field operations are exact; this is the scalar
/// type used whenever complex directions (isotropic conic points, bond data)
/// must be handled without rounding.
struct GaussRat {
    Rat re, im;

    GaussRat() : re(0), im(0) {}
    GaussRat(long v) : re(v, 1), im(0) {}  // NOLINT: implicit by design, mirrors Rat(long)
    GaussRat(Rat r) : re(std::move(r)), im(0) {}
    GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    static GaussRat I() { return GaussRat(Rat(0), Rat(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussRat conj() const { return GaussRat(re, -im); }
    Rat norm2() const { return re * re + im * im; }

    GaussRat operator-() const { return GaussRat(-re, -im); }

    GaussRat& operator+=(const GaussRat& o) { re += o.re; im += o.im; return *this; }
    GaussRat& operator-=(const GaussRat& o) { re -= o.re; im -= o.im; return *this; }
    GaussRat& operator*=(const GaussRat& o) {
        Rat r = re * o.re - im * o.im;
        Rat i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    GaussRat& operator/=(const GaussRat& o) {
        Rat n2 = o.norm2();
        if (n2 == 0) throw std::domain_error("GaussRat: division by zero");
        Rat r = (re * o.re + im * o.im) / n2;
        Rat i = (im * o.re - re * o.im) / n2;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }

    friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
    friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
    friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
    friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
    friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }
};

inline bool is_zero(const Rat& q) { return q == 0; }
inline bool is_zero(const GaussRat& z) { return z.is_zero(); }

inline std::string gauss_str(const GaussRat& z) {
    if (z.im == 0) return rat_str(z.re);
    std::string s = rat_str(z.re);
    s += (z.im > 0) ? " + " : " - ";
    s += rat_str(rat_abs(z.im));
    s += "*i";
    return s;
}

}  // namespace hexmotion
