#pragma once

#include "hexmotion/bigfloat.hpp"
#include "hexmotion/gauss.hpp"
#include "hexmotion/rational.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace hexmotion {

/// Dense univariate polynomial over an exact field K (Rat or GaussRat).
/// Coefficients ascending; the zero polynomial has an empty vector and
/// degree -1.
template <class K>
struct UPoly {
    std::vector<K> c;

    UPoly() = default;
    explicit UPoly(std::vector<K> coeffs) : c(std::move(coeffs)) { trim(); }

    static UPoly zero() { return UPoly(); }
    static UPoly constant(K v) {
        UPoly p;
        if (!is_zero(v)) p.c.push_back(std::move(v));
        return p;
    }
    static UPoly x() {
        UPoly p;
        p.c = {K(0), K(1)};
        return p;
    }

    void trim() {
        while (!c.empty() && is_zero(c.back())) c.pop_back();
    }

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero_poly() const { return c.empty(); }
    const K& lc() const {
        if (c.empty()) throw std::domain_error("UPoly::lc of zero polynomial");
        return c.back();
    }
    K coeff(size_t i) const { return i < c.size() ? c[i] : K(0); }

    UPoly operator-() const {
        UPoly r = *this;
        for (auto& v : r.c) v = -v;
        return r;
    }
    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        UPoly r;
        r.c.resize(std::max(a.c.size(), b.c.size()), K(0));
        for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
        for (size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
        r.trim();
        return r;
    }
    friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero_poly() || b.is_zero_poly()) return UPoly();
        UPoly r;
        r.c.assign(a.c.size() + b.c.size() - 1, K(0));
        for (size_t i = 0; i < a.c.size(); ++i)
            for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
        r.trim();
        return r;
    }
    friend UPoly operator*(const K& s, const UPoly& p) {
        UPoly r = p;
        for (auto& v : r.c) v = s * v;
        r.trim();
        return r;
    }
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c == b.c; }

    UPoly monic() const {
        if (is_zero_poly()) return *this;
        K inv = K(1) / lc();
        return inv * *this;
    }

    UPoly derivative() const {
        UPoly r;
        for (size_t i = 1; i < c.size(); ++i) r.c.push_back(K(static_cast<long>(i)) * c[i]);
        r.trim();
        return r;
    }

    K eval(const K& x) const {
        K acc(0);
        for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
        return acc;
    }

    BigComplex eval_complex(const BigComplex& x, mpfr_prec_t prec) const {
        BigComplex acc(prec);
        for (size_t i = c.size(); i-- > 0;) acc = acc * x + to_complex(c[i], prec);
        return acc;
    }

    /// Euclidean division: *this = q*d + r with deg r < deg d.
    std::pair<UPoly, UPoly> divrem(const UPoly& d) const {
        if (d.is_zero_poly()) throw std::domain_error("UPoly::divrem by zero");
        UPoly q, r = *this;
        int dd = d.degree();
        if (r.degree() < dd) return {q, r};
        q.c.assign(r.degree() - dd + 1, K(0));
        K dlc_inv = K(1) / d.lc();
        while (r.degree() >= dd) {
            int k = r.degree() - dd;
            K f = r.lc() * dlc_inv;
            q.c[k] = f;
            for (int i = 0; i <= dd; ++i) r.c[k + i] -= f * d.c[i];
            r.c.pop_back();
            r.trim();
        }
        q.trim();
        return {q, r};
    }

    UPoly operator%(const UPoly& d) const { return divrem(d).second; }
    UPoly operator/(const UPoly& d) const { return divrem(d).first; }
};

/// Monic gcd via the Euclidean algorithm.
template <class K>
UPoly<K> gcd_monic(UPoly<K> a, UPoly<K> b) {
    while (!b.is_zero_poly()) {
        UPoly<K> r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Yun squarefree decomposition (characteristic zero): returns monic pairs
/// (factor, multiplicity) with product factor^mult = input/lc.
template <class K>
std::vector<std::pair<UPoly<K>, int>> squarefree_decomposition(const UPoly<K>& f) {
    std::vector<std::pair<UPoly<K>, int>> out;
    if (f.degree() <= 0) return out;
    UPoly<K> fm = f.monic();
    UPoly<K> df = fm.derivative();
    UPoly<K> g = gcd_monic(fm, df);
    UPoly<K> ci = fm / g;
    UPoly<K> di = df / g - ci.derivative();
    int i = 1;
    while (ci.degree() > 0) {
        UPoly<K> ai = gcd_monic(ci, di);
        if (ai.degree() > 0) out.emplace_back(ai, i);
        ci = ci / ai;
        di = di / ai - ci.derivative();
        ++i;
    }
    return out;
}

/// Newton interpolation through distinct nodes.
template <class K>
UPoly<K> upoly_interpolate(const std::vector<K>& xs, const std::vector<K>& ys) {
    size_t n = xs.size();
    if (ys.size() != n || n == 0) throw std::invalid_argument("upoly_interpolate: bad node data");
    std::vector<K> dd(ys);
    for (size_t level = 1; level < n; ++level)
        for (size_t i = n - 1; i >= level; --i)
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
    UPoly<K> acc = UPoly<K>::constant(dd[n - 1]);
    for (size_t i = n - 1; i-- > 0;) {
        UPoly<K> lin({-xs[i], K(1)});
        acc = acc * lin + UPoly<K>::constant(dd[i]);
    }
    return acc;
}

/// Classic resultant Res(A, B) = lc(A)^deg(B) * prod_{A(a)=0} B(a), computed
/// by a signed polynomial remainder sequence over the field.
template <class K>
K resultant_classic(UPoly<K> a, UPoly<K> b) {
    if (a.is_zero_poly() || b.is_zero_poly()) return K(0);
    K res(1);
    bool swapped = false;
    if (a.degree() < b.degree()) {
        std::swap(a, b);
        swapped = true;
    }
    if (swapped && (a.degree() % 2) && (b.degree() % 2)) res = -res;
    while (b.degree() > 0) {
        UPoly<K> r = a % b;
        if (r.is_zero_poly()) return K(0);
        if ((a.degree() % 2) && (b.degree() % 2)) res = -res;
        K f = b.lc();
        int e = a.degree() - r.degree();
        for (int i = 0; i < e; ++i) res *= f;
        a = std::move(b);
        b = std::move(r);
    }
    // b is a nonzero constant
    K f = b.lc();
    for (int i = 0; i < a.degree(); ++i) res *= f;
    return res;
}

}  // namespace hexmotion
