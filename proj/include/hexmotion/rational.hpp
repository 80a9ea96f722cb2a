#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hexmotion {

/// Exact rational scalar.  mpq_class keeps values in reduced form with a
/// positive denominator as long as every value is canonicalized on entry;
/// all construction in this library goes through the helpers below.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat rat(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

/// Parses "p", "p/q", or a plain decimal such as "-1.25" (exact binary/decimal
/// semantics: the decimal is read as numerator/10^k).
inline Rat rat_parse(std::string_view s) {
    std::string str(s);
    if (str.empty()) throw std::invalid_argument("rat_parse: empty string");
    auto dot = str.find('.');
    if (dot != std::string::npos) {
        std::string digits = str.substr(0, dot) + str.substr(dot + 1);
        size_t frac_len = str.size() - dot - 1;
        Int num;
        if (num.set_str(digits, 10) != 0)
            throw std::invalid_argument("rat_parse: bad decimal '" + str + "'");
        Int den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
        return rat(num, den);
    }
    Rat q;
    if (q.set_str(str, 10) != 0)
        throw std::invalid_argument("rat_parse: bad rational '" + str + "'");
    if (q.get_den() == 0) throw std::invalid_argument("rat_parse: zero denominator in '" + str + "'");
    q.canonicalize();
    return q;
}

inline std::string rat_str(const Rat& q) {
    return q.get_str();
}

inline int sgn(const Rat& q) { return sgn(q.get_num()); }

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

/// gcd of two rationals: the positive generator of the Z-module they span
/// (gcd of numerators over lcm of denominators).  gcd(0,0) = 0.
inline Rat rat_gcd(const Rat& a, const Rat& b) {
    Int gn, ld;
    mpz_gcd(gn.get_mpz_t(), a.get_num().get_mpz_t(), b.get_num().get_mpz_t());
    mpz_lcm(ld.get_mpz_t(), a.get_den().get_mpz_t(), b.get_den().get_mpz_t());
    return rat(gn, ld);
}

}  // namespace hexmotion
