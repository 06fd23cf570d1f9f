#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>

namespace erb {

using Rational = mpq_class;
using Integer = mpz_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

// Accepts "p", "p/q" or "-p/q". The result is canonicalized.
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("empty rational");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    bool seen_slash = false;
    bool digit_before = false;
    bool digit_after = false;
    for (std::size_t i = start; i < s.size(); ++i) {
        char c = s[i];
        if (c == '/') {
            if (seen_slash) throw std::invalid_argument("malformed rational '" + s + "'");
            seen_slash = true;
        } else if (c >= '0' && c <= '9') {
            (seen_slash ? digit_after : digit_before) = true;
        } else {
            throw std::invalid_argument("malformed rational '" + s + "'");
        }
    }
    if (!digit_before || (seen_slash && !digit_after))
        throw std::invalid_argument("malformed rational '" + s + "'");
    if (s[0] == '+') s.erase(0, 1);
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational '" + s + "'");
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

// Fixed-precision decimal rendering; used only for human-facing output.
inline std::string to_decimal(const Rational& q, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, q.get_d());
    return buf;
}

inline Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline bool fits_int64(const Integer& z) {
    static const Integer lo("-9223372036854775808");
    static const Integer hi("9223372036854775807");
    return z >= lo && z <= hi;
}

inline std::int64_t to_int64(const Integer& z) {
    if (!fits_int64(z)) throw std::overflow_error("integer " + z.get_str() + " exceeds 64 bits");
    return std::stoll(z.get_str());
}

}  // namespace erb
