#pragma once

#include "hexmotion/gauss.hpp"
#include "hexmotion/rational.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>

namespace hexmotion {

/// Arbitrary-precision binary float (MPFR, round-to-nearest).  Each value
/// carries its own precision; binary operations compute at the larger of the
/// two operand precisions.  Precision is a budget chosen by the caller, not a
/// certified error bound.
class BigFloat {
  public:
    explicit BigFloat(mpfr_prec_t prec = 64) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    static BigFloat from_double(double d, mpfr_prec_t prec) {
        BigFloat r(prec);
        mpfr_set_d(r.v_, d, MPFR_RNDN);
        return r;
    }
    static BigFloat from_rat(const Rat& q, mpfr_prec_t prec) {
        BigFloat r(prec);
        mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN);
        return r;
    }
    static BigFloat from_int(long n, mpfr_prec_t prec) {
        BigFloat r(prec);
        mpfr_set_si(r.v_, n, MPFR_RNDN);
        return r;
    }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    /// value = mantissa * 2^e with mantissa an integer; used for rational
    /// reconstruction.  Requires a finite value.
    std::pair<Int, long> to_mant_exp() const {
        Int m;
        mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
        return {m, static_cast<long>(e)};
    }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    int cmp(const BigFloat& o) const { return mpfr_cmp(v_, o.v_); }
    friend bool operator<(const BigFloat& a, const BigFloat& b) { return a.cmp(b) < 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return a.cmp(b) > 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return a.cmp(b) <= 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return a.cmp(b) >= 0; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
        BigFloat r(std::max(a.prec(), b.prec()));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
        BigFloat r(std::max(a.prec(), b.prec()));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
        BigFloat r(std::max(a.prec(), b.prec()));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
        BigFloat r(std::max(a.prec(), b.prec()));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    BigFloat operator-() const {
        BigFloat r(prec());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }
    BigFloat& operator+=(const BigFloat& o) { return *this = *this + o; }
    BigFloat& operator-=(const BigFloat& o) { return *this = *this - o; }
    BigFloat& operator*=(const BigFloat& o) { return *this = *this * o; }
    BigFloat& operator/=(const BigFloat& o) { return *this = *this / o; }

    BigFloat abs() const {
        BigFloat r(prec());
        mpfr_abs(r.v_, v_, MPFR_RNDN);
        return r;
    }
    BigFloat sqrt() const {
        BigFloat r(prec());
        mpfr_sqrt(r.v_, v_, MPFR_RNDN);
        return r;
    }
    /// *this * 2^k, exact.
    BigFloat scale2(long k) const {
        BigFloat r(prec());
        mpfr_mul_2si(r.v_, v_, k, MPFR_RNDN);
        return r;
    }

    std::string str(size_t digits = 20) const {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%%.%zuRg", digits);
        char* out = nullptr;
        mpfr_asprintf(&out, buf, v_);
        std::string s(out);
        mpfr_free_str(out);
        return s;
    }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

  private:
    mpfr_t v_;
};

inline BigFloat pow2(long k, mpfr_prec_t prec) { return BigFloat::from_int(1, prec).scale2(k); }

/// Complex number over BigFloat.
struct BigComplex {
    BigFloat re, im;

    explicit BigComplex(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
    BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}

    static BigComplex from_gauss(const GaussRat& z, mpfr_prec_t prec) {
        return {BigFloat::from_rat(z.re, prec), BigFloat::from_rat(z.im, prec)};
    }
    static BigComplex from_rat(const Rat& q, mpfr_prec_t prec) {
        return {BigFloat::from_rat(q, prec), BigFloat(prec)};
    }
    static BigComplex from_double(double r, double i, mpfr_prec_t prec) {
        return {BigFloat::from_double(r, prec), BigFloat::from_double(i, prec)};
    }

    mpfr_prec_t prec() const { return std::max(re.prec(), im.prec()); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_finite() const { return re.is_finite() && im.is_finite(); }

    BigComplex conj() const { return {re, -im}; }
    BigFloat abs2() const { return re * re + im * im; }
    BigFloat abs() const { return abs2().sqrt(); }

    BigComplex operator-() const { return {-re, -im}; }
    friend BigComplex operator+(const BigComplex& a, const BigComplex& b) { return {a.re + b.re, a.im + b.im}; }
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b) { return {a.re - b.re, a.im - b.im}; }
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
        BigFloat n2 = b.abs2();
        return {(a.re * b.re + a.im * b.im) / n2, (a.im * b.re - a.re * b.im) / n2};
    }
    BigComplex& operator+=(const BigComplex& o) { return *this = *this + o; }
    BigComplex& operator-=(const BigComplex& o) { return *this = *this - o; }
    BigComplex& operator*=(const BigComplex& o) { return *this = *this * o; }
    BigComplex& operator/=(const BigComplex& o) { return *this = *this / o; }

    /// Principal square root.
    BigComplex sqrt() const {
        mpfr_prec_t p = prec();
        BigFloat r = abs();
        BigFloat half = BigFloat::from_rat(rat(1, 2), p);
        if (re.sign() >= 0) {
            BigFloat x = ((r + re) * half).sqrt();
            if (x.is_zero()) return BigComplex(p);
            BigFloat y = im / (x + x);
            return {x, y};
        }
        BigFloat y = ((r - re) * half).sqrt();
        if (im.sign() < 0) y = -y;
        if (y.is_zero()) return BigComplex(p);
        BigFloat x = im / (y + y);
        return {x, y};
    }

    std::string str(size_t digits = 20) const {
        return "(" + re.str(digits) + (im.sign() < 0 ? " - " : " + ") + im.abs().str(digits) + "i)";
    }
};

inline BigComplex to_complex(const Rat& q, mpfr_prec_t prec) { return BigComplex::from_rat(q, prec); }
inline BigComplex to_complex(const GaussRat& z, mpfr_prec_t prec) { return BigComplex::from_gauss(z, prec); }
inline BigComplex to_complex(const BigComplex& z, mpfr_prec_t) { return z; }

}  // namespace hexmotion
