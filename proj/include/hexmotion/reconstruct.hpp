#pragma once

#include "hexmotion/bigfloat.hpp"
#include "hexmotion/gauss.hpp"
#include "hexmotion/rational.hpp"

#include <optional>

namespace hexmotion {

/// Continued-fraction rationalization: the first convergent of x whose
/// denominator stays within den_bound and which agrees with x to agree_bits
/// relative bits.  agree_bits <= 0 means precision minus a 32-bit guard.
inline std::optional<Rat> rationalize(const BigFloat& x, const Int& den_bound = Int(1000000000000L),
                                      long agree_bits = 0) {
    if (!x.is_finite()) return std::nullopt;
    if (agree_bits <= 0) agree_bits = static_cast<long>(x.prec()) - 32;
    if (x.is_zero()) return Rat(0);

    auto [m, e] = x.to_mant_exp();
    Rat target(m);
    if (e >= 0) {
        Int p2;
        mpz_ui_pow_ui(p2.get_mpz_t(), 2, static_cast<unsigned long>(e));
        target *= Rat(p2);
    } else {
        Int p2;
        mpz_ui_pow_ui(p2.get_mpz_t(), 2, static_cast<unsigned long>(-e));
        target /= Rat(p2);
    }

    Rat tol = rat_abs(target) + 1;
    {
        Int p2;
        mpz_ui_pow_ui(p2.get_mpz_t(), 2, static_cast<unsigned long>(agree_bits));
        tol /= Rat(p2);
    }

    // convergents p_k/q_k of the continued fraction of target
    Rat rem = target;
    Int p_prev(0), q_prev(1), p_cur(1), q_cur(0);
    for (int it = 0; it < 300; ++it) {
        Int a;
        mpz_fdiv_q(a.get_mpz_t(), rem.get_num().get_mpz_t(), rem.get_den().get_mpz_t());
        Int p_next = a * p_cur + p_prev;
        Int q_next = a * q_cur + q_prev;
        p_prev = p_cur;
        q_prev = q_cur;
        p_cur = p_next;
        q_cur = q_next;
        if (q_cur > den_bound) return std::nullopt;
        Rat conv = rat(p_cur, q_cur);
        if (rat_abs(conv - target) <= tol) return conv;
        Rat frac = rem - Rat(a);
        if (frac == 0) return std::nullopt;  // exact CF ended without meeting the bound
        rem = Rat(1) / frac;
    }
    return std::nullopt;
}

inline std::optional<GaussRat> rationalize(const BigComplex& z, const Int& den_bound = Int(1000000000000L),
                                           long agree_bits = 0) {
    auto re = rationalize(z.re, den_bound, agree_bits);
    if (!re) return std::nullopt;
    auto im = rationalize(z.im, den_bound, agree_bits);
    if (!im) return std::nullopt;
    return GaussRat(*re, *im);
}

}  // namespace hexmotion
