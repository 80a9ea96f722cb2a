#pragma once

#include "hexmotion/bigfloat.hpp"
#include "hexmotion/rational.hpp"
#include "hexmotion/upoly.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hexmotion {

using Expo = std::vector<uint32_t>;

inline uint32_t expo_total(const Expo& e) {
    uint32_t s = 0;
    for (auto v : e) s += v;
    return s;
}

/// Graded lexicographic order: compare total degree first, then lex with the
/// first variable most significant.
struct GrlexLess {
    bool operator()(const Expo& a, const Expo& b) const {
        uint32_t da = expo_total(a), db = expo_total(b);
        if (da != db) return da < db;
        for (size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }
};

/// Sparse multivariate polynomial over Rat in a fixed number of variables.
/// Terms are stored in graded-lex order; the leading term is rbegin().
struct MPoly {
    int nv = 0;
    std::map<Expo, Rat, GrlexLess> t;

    MPoly() = default;
    explicit MPoly(int nvars) : nv(nvars) {}

    static MPoly zero(int nvars) { return MPoly(nvars); }
    static MPoly constant(int nvars, const Rat& v) {
        MPoly p(nvars);
        if (v != 0) p.t.emplace(Expo(nvars, 0), v);
        return p;
    }
    static MPoly var(int nvars, int i, uint32_t pow = 1) {
        MPoly p(nvars);
        Expo e(nvars, 0);
        e[i] = pow;
        p.t.emplace(std::move(e), Rat(1));
        return p;
    }

    bool is_zero() const { return t.empty(); }
    bool is_constant() const { return t.empty() || (t.size() == 1 && expo_total(t.begin()->first) == 0); }
    Rat constant_value() const { return t.empty() ? Rat(0) : t.begin()->second; }

    int total_degree() const {
        if (t.empty()) return -1;
        return static_cast<int>(expo_total(t.rbegin()->first));
    }
    int degree_in(int var) const {
        int d = -1;
        for (const auto& [e, c] : t) d = std::max(d, static_cast<int>(e[var]));
        return t.empty() ? -1 : d;
    }
    bool is_homogeneous() const {
        if (t.empty()) return true;
        uint32_t d = expo_total(t.begin()->first);
        for (const auto& [e, c] : t)
            if (expo_total(e) != d) return false;
        return true;
    }

    void add_term(Expo e, const Rat& c) {
        if (c == 0) return;
        auto it = t.find(e);
        if (it == t.end()) {
            t.emplace(std::move(e), c);
        } else {
            it->second += c;
            if (it->second == 0) t.erase(it);
        }
    }

    const std::pair<const Expo, Rat>& leading() const {
        if (t.empty()) throw std::domain_error("MPoly::leading of zero");
        return *t.rbegin();
    }

    MPoly operator-() const {
        MPoly r(nv);
        for (const auto& [e, c] : t) r.t.emplace(e, -c);
        return r;
    }
    friend MPoly operator+(const MPoly& a, const MPoly& b) {
        MPoly r = a;
        for (const auto& [e, c] : b.t) r.add_term(e, c);
        return r;
    }
    friend MPoly operator-(const MPoly& a, const MPoly& b) {
        MPoly r = a;
        for (const auto& [e, c] : b.t) r.add_term(e, -c);
        return r;
    }
    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        MPoly r(a.nv);
        for (const auto& [ea, ca] : a.t)
            for (const auto& [eb, cb] : b.t) {
                Expo e = ea;
                for (int i = 0; i < a.nv; ++i) e[i] += eb[i];
                r.add_term(std::move(e), ca * cb);
            }
        return r;
    }
    friend MPoly operator*(const Rat& s, const MPoly& p) {
        MPoly r(p.nv);
        if (s == 0) return r;
        for (const auto& [e, c] : p.t) r.t.emplace(e, s * c);
        return r;
    }
    friend bool operator==(const MPoly& a, const MPoly& b) { return a.nv == b.nv && a.t == b.t; }

    MPoly pow(uint32_t k) const {
        MPoly r = constant(nv, Rat(1));
        MPoly base = *this;
        while (k) {
            if (k & 1) r = r * base;
            base = base * base;
            k >>= 1;
        }
        return r;
    }

    template <class T>
    T eval(const std::vector<T>& x) const {
        T acc(0);
        for (const auto& [e, c] : t) {
            T term(c);
            for (int i = 0; i < nv; ++i)
                for (uint32_t k = 0; k < e[i]; ++k) term *= x[i];
            acc += term;
        }
        return acc;
    }

    BigComplex eval_complex(const std::vector<BigComplex>& x, mpfr_prec_t prec) const {
        BigComplex acc(prec);
        for (const auto& [e, c] : t) {
            BigComplex term = BigComplex::from_rat(c, prec);
            for (int i = 0; i < nv; ++i)
                for (uint32_t k = 0; k < e[i]; ++k) term *= x[i];
            acc += term;
        }
        return acc;
    }

    /// Substitutes var := value; the variable count is unchanged.
    MPoly eval_partial(int var, const Rat& value) const {
        MPoly r(nv);
        for (const auto& [e, c] : t) {
            Rat coef = c;
            for (uint32_t k = 0; k < e[var]; ++k) coef *= value;
            Expo e2 = e;
            e2[var] = 0;
            r.add_term(std::move(e2), coef);
        }
        return r;
    }

    MPoly derivative(int var) const {
        MPoly r(nv);
        for (const auto& [e, c] : t) {
            if (e[var] == 0) continue;
            Expo e2 = e;
            e2[var] -= 1;
            r.add_term(std::move(e2), c * Rat(static_cast<long>(e[var])));
        }
        return r;
    }

    /// Coefficients as polynomials in the other variables, indexed by the
    /// exponent of var.
    std::map<int, MPoly> coeffs_in(int var) const {
        std::map<int, MPoly> out;
        for (const auto& [e, c] : t) {
            int k = static_cast<int>(e[var]);
            auto it = out.find(k);
            if (it == out.end()) it = out.emplace(k, MPoly(nv)).first;
            Expo e2 = e;
            e2[var] = 0;
            it->second.add_term(std::move(e2), c);
        }
        return out;
    }

    /// Exact division; nullopt when the divisor does not divide exactly.
    std::optional<MPoly> exact_div(const MPoly& d) const {
        if (d.is_zero()) throw std::domain_error("MPoly::exact_div by zero");
        MPoly q(nv), r = *this;
        const auto& [de, dc] = d.leading();
        while (!r.is_zero()) {
            const auto& [re, rc] = r.leading();
            Expo qe(nv);
            for (int i = 0; i < nv; ++i) {
                if (re[i] < de[i]) return std::nullopt;
                qe[i] = re[i] - de[i];
            }
            Rat qc = rc / dc;
            MPoly qt(nv);
            qt.t.emplace(qe, qc);
            q.add_term(std::move(qe), qc);
            r = r - qt * d;
        }
        return q;
    }

    /// Rational content: positive generator of the coefficient Z-module,
    /// signed so the grlex-leading coefficient of the primitive part is > 0.
    Rat content() const {
        if (t.empty()) return Rat(0);
        Rat g(0);
        for (const auto& [e, c] : t) g = rat_gcd(g, c);
        if (t.rbegin()->second < 0) g = -g;
        return g;
    }

    MPoly primitive() const {
        if (t.empty()) return *this;
        Rat g = content();
        MPoly r(nv);
        for (const auto& [e, c] : t) r.t.emplace(e, c / g);
        return r;
    }

    /// Largest k with var^k dividing the polynomial (0 for the zero poly).
    int min_power(int var) const {
        int m = -1;
        for (const auto& [e, c] : t) {
            int k = static_cast<int>(e[var]);
            m = (m < 0) ? k : std::min(m, k);
            if (m == 0) break;
        }
        return m < 0 ? 0 : m;
    }

    MPoly shift_power(int var, int delta) const {
        MPoly r(nv);
        for (const auto& [e, c] : t) {
            Expo e2 = e;
            int k = static_cast<int>(e2[var]) + delta;
            if (k < 0) throw std::domain_error("MPoly::shift_power underflow");
            e2[var] = static_cast<uint32_t>(k);
            r.t.emplace(std::move(e2), c);
        }
        return r;
    }

    /// Homogenizes to total degree target by padding exponents of var.
    MPoly homogenize(int var, int target) const {
        MPoly r(nv);
        for (const auto& [e, c] : t) {
            int pad = target - static_cast<int>(expo_total(e));
            if (pad < 0) throw std::domain_error("MPoly::homogenize target too small");
            Expo e2 = e;
            e2[var] += static_cast<uint32_t>(pad);
            r.t.emplace(std::move(e2), c);
        }
        return r;
    }

    std::string str(const std::vector<std::string>& names) const {
        if (t.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = t.rbegin(); it != t.rend(); ++it) {
            const auto& [e, c] = *it;
            if (!first) os << (c > 0 ? " + " : " - ");
            else if (c < 0) os << "-";
            first = false;
            Rat a = rat_abs(c);
            bool printed = false;
            if (a != 1 || expo_total(e) == 0) {
                os << rat_str(a);
                printed = true;
            }
            for (int i = 0; i < nv; ++i) {
                if (e[i] == 0) continue;
                if (printed) os << "*";
                os << names[i];
                if (e[i] > 1) os << "^" << e[i];
                printed = true;
            }
        }
        return os.str();
    }
};

/// Univariate view: requires all variables except var to have degree 0.
inline UPoly<Rat> mpoly_to_upoly(const MPoly& p, int var) {
    std::vector<Rat> c(static_cast<size_t>(std::max(0, p.degree_in(var)) + 1), Rat(0));
    for (const auto& [e, coef] : p.t) {
        for (int i = 0; i < p.nv; ++i)
            if (i != var && e[i] != 0) throw std::domain_error("mpoly_to_upoly: not univariate");
        c[e[var]] = coef;
    }
    return UPoly<Rat>(std::move(c));
}

inline MPoly upoly_to_mpoly(const UPoly<Rat>& p, int nvars, int var) {
    MPoly r(nvars);
    for (size_t i = 0; i < p.c.size(); ++i) {
        if (p.c[i] == 0) continue;
        Expo e(nvars, 0);
        e[var] = static_cast<uint32_t>(i);
        r.t.emplace(std::move(e), p.c[i]);
    }
    return r;
}

/// Newton interpolation in one variable with polynomial (or constant) values:
/// returns P with P(var = nodes[k]) = values[k] and degree_in(var) < #nodes.
inline MPoly newton_interpolate(int var, const std::vector<Rat>& nodes, std::vector<MPoly> values) {
    size_t n = nodes.size();
    if (n == 0 || values.size() != n) throw std::invalid_argument("newton_interpolate: bad input");
    for (size_t j = 1; j < n; ++j)
        for (size_t i = n - 1; i >= j; --i) {
            Rat den = nodes[i] - nodes[i - j];
            if (den == 0) throw std::invalid_argument("newton_interpolate: repeated node");
            values[i] = Rat(1) / den * (values[i] - values[i - 1]);
        }
    int nv = values[0].nv;
    MPoly acc = values[n - 1];
    for (size_t i = n - 1; i-- > 0;) {
        MPoly lin = MPoly::var(nv, var) - MPoly::constant(nv, nodes[i]);
        acc = acc * lin + values[i];
    }
    return acc;
}

}  // namespace hexmotion
