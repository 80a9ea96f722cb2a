#pragma once

#include "hexmotion/gauss.hpp"
#include "hexmotion/rational.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace hexmotion {

// --------------------------------------------------------------------------
// Word-size prime fields
// --------------------------------------------------------------------------

inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t p) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline uint64_t addmod_u64(uint64_t a, uint64_t b, uint64_t p) {
    uint64_t s = a + b;
    return s >= p ? s - p : s;
}

inline uint64_t submod_u64(uint64_t a, uint64_t b, uint64_t p) { return addmod_u64(a, p - b, p); }

inline uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1 % p;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, p);
        a = mulmod_u64(a, a, p);
        e >>= 1;
    }
    return r;
}

inline uint64_t invmod_u64(uint64_t a, uint64_t p) { return powmod_u64(a % p, p - 2, p); }

inline bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod_u64(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

/// Deterministic stream of 31-bit primes p = 1 (mod 4), descending from 2^31.
inline uint64_t next_prime_1mod4(uint64_t below) {
    uint64_t c = below - 1;
    while (c % 4 != 1) --c;
    while (c > (1ull << 24)) {
        if (is_prime_u64(c)) return c;
        c -= 4;
    }
    throw std::runtime_error("next_prime_1mod4: prime stream exhausted");
}

/// Square root of -1 in F_p (requires p = 1 mod 4).
inline uint64_t sqrt_minus_one(uint64_t p) {
    for (uint64_t g = 2;; ++g) {
        if (powmod_u64(g, (p - 1) / 2, p) == p - 1) return powmod_u64(g, (p - 1) / 4, p);
    }
}

inline uint64_t int_mod(const Int& v, uint64_t p) {
    Int m = v % static_cast<unsigned long>(p);
    long r = m.get_si();
    if (r < 0) r += static_cast<long>(p);
    return static_cast<uint64_t>(r);
}

/// Image of a rational mod p; empty when p divides the denominator.
inline std::optional<uint64_t> rat_mod(const Rat& q, uint64_t p) {
    uint64_t den = int_mod(Int(q.get_den()), p);
    if (den == 0) return std::nullopt;
    uint64_t num = int_mod(Int(q.get_num()), p);
    return mulmod_u64(num, invmod_u64(den, p), p);
}

/// Image of a Gaussian rational mod p via a chosen sqrt of -1.
inline std::optional<uint64_t> gauss_mod(const GaussRat& z, uint64_t p, uint64_t imag_unit) {
    auto re = rat_mod(z.re, p);
    auto im = rat_mod(z.im, p);
    if (!re || !im) return std::nullopt;
    return addmod_u64(*re, mulmod_u64(*im, imag_unit, p), p);
}

// --------------------------------------------------------------------------
// F_p[x]
// --------------------------------------------------------------------------

using FpPoly = std::vector<uint64_t>;  // ascending coefficients

inline void fp_trim(FpPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline FpPoly fp_gcd_monic(FpPoly a, FpPoly b, uint64_t p) {
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        // a mod b in place
        uint64_t inv = invmod_u64(b.back(), p);
        while (a.size() >= b.size() && !a.empty()) {
            uint64_t f = mulmod_u64(a.back(), inv, p);
            size_t off = a.size() - b.size();
            for (size_t i = 0; i < b.size(); ++i)
                a[off + i] = submod_u64(a[off + i], mulmod_u64(f, b[i], p), p);
            fp_trim(a);
            if (a.size() < b.size()) break;
        }
        std::swap(a, b);
    }
    if (!a.empty()) {
        uint64_t inv = invmod_u64(a.back(), p);
        for (auto& c : a) c = mulmod_u64(c, inv, p);
    }
    return a;
}

// --------------------------------------------------------------------------
// F_p^2 = F_p[i] for p = 3 (mod 4): Gaussian rationals reduce componentwise
// --------------------------------------------------------------------------

inline uint64_t next_prime_3mod4(uint64_t below) {
    uint64_t c = below - 1;
    while (c % 4 != 3) --c;
    while (c > (1ull << 24)) {
        if (is_prime_u64(c)) return c;
        c -= 4;
    }
    throw std::runtime_error("next_prime_3mod4: prime stream exhausted");
}

struct Fp2 {
    uint64_t a = 0, b = 0;  // a + b i
    bool is_zero() const { return a == 0 && b == 0; }
};

inline Fp2 fp2_add(const Fp2& x, const Fp2& y, uint64_t p) {
    return {addmod_u64(x.a, y.a, p), addmod_u64(x.b, y.b, p)};
}
inline Fp2 fp2_sub(const Fp2& x, const Fp2& y, uint64_t p) {
    return {submod_u64(x.a, y.a, p), submod_u64(x.b, y.b, p)};
}
inline Fp2 fp2_mul(const Fp2& x, const Fp2& y, uint64_t p) {
    return {submod_u64(mulmod_u64(x.a, y.a, p), mulmod_u64(x.b, y.b, p), p),
            addmod_u64(mulmod_u64(x.a, y.b, p), mulmod_u64(x.b, y.a, p), p)};
}
inline Fp2 fp2_inv(const Fp2& x, uint64_t p) {
    uint64_t n = addmod_u64(mulmod_u64(x.a, x.a, p), mulmod_u64(x.b, x.b, p), p);
    uint64_t ninv = invmod_u64(n, p);
    return {mulmod_u64(x.a, ninv, p), mulmod_u64(p - x.b, ninv, p)};
}

inline std::optional<Fp2> gauss_mod2(const GaussRat& z, uint64_t p) {
    auto re = rat_mod(z.re, p);
    auto im = rat_mod(z.im, p);
    if (!re || !im) return std::nullopt;
    return Fp2{*re, *im};
}

using Fp2Poly = std::vector<Fp2>;

inline void fp2_trim(Fp2Poly& f) {
    while (!f.empty() && f.back().is_zero()) f.pop_back();
}

inline Fp2Poly fp2_gcd_monic(Fp2Poly a, Fp2Poly b, uint64_t p) {
    fp2_trim(a);
    fp2_trim(b);
    while (!b.empty()) {
        Fp2 inv = fp2_inv(b.back(), p);
        while (a.size() >= b.size() && !a.empty()) {
            Fp2 f = fp2_mul(a.back(), inv, p);
            size_t off = a.size() - b.size();
            for (size_t i = 0; i < b.size(); ++i)
                a[off + i] = fp2_sub(a[off + i], fp2_mul(f, b[i], p), p);
            fp2_trim(a);
            if (a.size() < b.size()) break;
        }
        std::swap(a, b);
    }
    if (!a.empty()) {
        Fp2 inv = fp2_inv(a.back(), p);
        for (auto& c : a) c = fp2_mul(c, inv, p);
    }
    return a;
}

// --------------------------------------------------------------------------
// CRT + rational reconstruction
// --------------------------------------------------------------------------

struct CrtValue {
    Int value{0};
    Int modulus{1};

    void absorb(uint64_t residue, uint64_t p) {
        uint64_t cur = int_mod(value, p);
        uint64_t diff = submod_u64(residue % p, cur, p);
        uint64_t k = mulmod_u64(diff, invmod_u64(int_mod(modulus, p), p), p);
        value += modulus * Int(static_cast<unsigned long>(k));
        modulus *= Int(static_cast<unsigned long>(p));
    }
};

/// Rational number congruent to a mod m with |num|, den <= sqrt(m/2).
inline std::optional<Rat> rational_reconstruct(const Int& a0, const Int& m) {
    Int bound;
    mpz_sqrt(bound.get_mpz_t(), Int(m / 2).get_mpz_t());
    Int r0 = m, r1 = a0 % m;
    if (r1 < 0) r1 += m;
    Int t0 = 0, t1 = 1;
    while (r1 > bound) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1;
        Int t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (t1 == 0) return std::nullopt;
    Int num = r1, den = t1;
    if (den < 0) {
        den = -den;
        num = -num;
    }
    if (den > bound) return std::nullopt;
    Int g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (g != 1 && !(num == 0 && den == 1)) {
        // candidate must be in lowest terms to be a valid preimage
        if (den / g == 0) return std::nullopt;
        num /= g;
        den /= g;
    }
    if (den == 0) return std::nullopt;
    return rat(num, den);
}

// --------------------------------------------------------------------------
// Gaussian integers with exact division (for fraction-free elimination)
// --------------------------------------------------------------------------

struct GInt {
    Int re{0}, im{0};

    GInt() = default;
    GInt(Int r, Int i) : re(std::move(r)), im(std::move(i)) {}
    explicit GInt(long r) : re(r), im(0) {}

    bool is_zero() const { return re == 0 && im == 0; }
    GInt conj() const { return {re, -im}; }
    Int norm() const { return re * re + im * im; }

    GInt operator-() const { return {-re, -im}; }
    friend GInt operator+(const GInt& a, const GInt& b) { return {a.re + b.re, a.im + b.im}; }
    friend GInt operator-(const GInt& a, const GInt& b) { return {a.re - b.re, a.im - b.im}; }
    friend GInt operator*(const GInt& a, const GInt& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const GInt& a, const GInt& b) { return a.re == b.re && a.im == b.im; }
};

/// Exact quotient a / b in Z[i]; caller guarantees divisibility.
inline GInt gint_divexact(const GInt& a, const GInt& b) {
    GInt num = a * b.conj();
    Int n = b.norm();
    GInt q;
    mpz_divexact(q.re.get_mpz_t(), num.re.get_mpz_t(), n.get_mpz_t());
    mpz_divexact(q.im.get_mpz_t(), num.im.get_mpz_t(), n.get_mpz_t());
    return q;
}

/// Fraction-free determinant over Z[i] (Bareiss); destroys the input.
inline GInt gint_det_bareiss(std::vector<std::vector<GInt>>& m) {
    size_t n = m.size();
    if (n == 0) return GInt(1);
    GInt prev(1);
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
            if (swap_row == n) return GInt(0);
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) {
                GInt t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                m[i][j] = gint_divexact(t, prev);
            }
        prev = m[k][k];
    }
    GInt d = m[n - 1][n - 1];
    return sign < 0 ? -d : d;
}

/// Sylvester resultant of two Z[i] polynomials given by ascending coefficients.
inline GInt gint_resultant(const std::vector<GInt>& a, const std::vector<GInt>& b) {
    int da = static_cast<int>(a.size()) - 1, db = static_cast<int>(b.size()) - 1;
    if (da < 0 || db < 0) return GInt(0);
    if (da == 0) {
        GInt r(1);
        for (int i = 0; i < db; ++i) r = r * a[0];
        return r;
    }
    if (db == 0) {
        GInt r(1);
        for (int i = 0; i < da; ++i) r = r * b[0];
        return r;
    }
    size_t n = static_cast<size_t>(da + db);
    std::vector<std::vector<GInt>> m(n, std::vector<GInt>(n, GInt(0)));
    for (int r = 0; r < db; ++r)
        for (int j = 0; j <= da; ++j) m[static_cast<size_t>(r)][static_cast<size_t>(r + j)] = a[static_cast<size_t>(da - j)];
    for (int r = 0; r < da; ++r)
        for (int j = 0; j <= db; ++j) m[static_cast<size_t>(db + r)][static_cast<size_t>(r + j)] = b[static_cast<size_t>(db - j)];
    return gint_det_bareiss(m);
}

}  // namespace hexmotion
