#ifndef HYPERBOUND_RATIONAL_HPP
#define HYPERBOUND_RATIONAL_HPP

// Exact integers and rationals. Everything in the engine is computed over
// these types; no floating point enters a certified value.

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace hyperbound {

using Integer = mpz_class;

/// Arbitrary-precision fraction, always kept in lowest terms with a
/// positive denominator (GMP canonical form).
using Rational = mpq_class;

/// Builds num/den in canonical form. Throws std::invalid_argument on a zero
/// denominator.
Rational make_rational(const Integer& num, const Integer& den);

/// Parses "p", "-p", "p/q". Whitespace is not accepted. Throws
/// std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& x);
std::string to_string(const Integer& x);

Rational pow(const Rational& base, long exponent);
Integer pow(const Integer& base, unsigned long exponent);

inline Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }
inline int sign(const Rational& x) { return sgn(x); }

/// Floor and ceiling of a rational as exact integers.
Integer floor(const Rational& x);
Integer ceil(const Rational& x);

/// Smallest integer m >= 0 with m^p >= x, for x >= 0 and p >= 1.
Integer ceil_root(const Rational& x, unsigned long p);

/// Lossy conversion for display fields only.
double approximate(const Rational& x);

}  // namespace hyperbound

#endif  // HYPERBOUND_RATIONAL_HPP
