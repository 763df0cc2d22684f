#ifndef OSCINT_RATIONAL_HPP
#define OSCINT_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "oscint/errors.hpp"

namespace oscint {

// Arbitrary-precision integers and rationals.  cpp_rational keeps values in
// lowest terms with a positive denominator, which is exactly the invariant
// the rest of the engine relies on.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rational& q) { return numerator(q); }
inline Int rat_den(const Rational& q) { return denominator(q); }

// Sign-normalizing construction (the backend requires den > 0).
inline Rational make_rational(Int num, Int den) {
    if (den == 0) throw input_error("bad-rational", "zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(std::move(num), std::move(den));
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

// q^e for signed integer e; throws on 0^negative.
inline Rational rat_pow(const Rational& q, long e) {
    if (e == 0) return Rational(1);
    if (q == 0) {
        if (e < 0) throw input_error("zero-to-negative-power", "0 cannot be raised to a negative power");
        return Rational(0);
    }
    Rational base = q;
    unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
    Rational acc(1);
    while (n) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    if (e < 0) acc = Rational(1) / acc;
    return acc;
}

inline Int int_factorial(int n) {
    Int r(1);
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

inline Int int_binomial(int n, int k) {
    if (k < 0 || k > n) return Int(0);
    k = std::min(k, n - k);
    Int r(1);
    for (int i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;
    }
    return r;
}

// "p", "-p", "p/q"; q > 0 after normalization.
Rational parse_rational(const std::string& text);

// Lowest-terms text form: "p" or "p/q".
std::string rat_to_string(const Rational& q);

// int64 narrowing with an explicit failure instead of silent wraparound.
inline std::int64_t to_int64(const Int& v) {
    if (v > Int(INT64_MAX) || v < Int(INT64_MIN))
        throw invariant_error("int64-overflow", "integer out of 64-bit range");
    return v.convert_to<std::int64_t>();
}

} // namespace oscint

#endif
