#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace einstein_barrier {

/// Exact rational scalar. GMP keeps every value canonical (positive
/// denominator, gcd(|num|, den) = 1) after each arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

/// Builds num/den in canonical form. Throws std::invalid_argument if den == 0.
Rational make_rational(const Integer& num, const Integer& den = 1);
Rational make_rational(std::int64_t num, std::int64_t den = 1);

/// Parses "p/q", an integer, or a decimal such as "0.98" or "-1.5e-3" into an
/// exact rational. Decimals are scaled by powers of ten, never rounded through
/// binary floating point. Throws std::invalid_argument on malformed text.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is one. Re-parses to the same value.
std::string to_string(const Rational& q);

/// Nearest double.
double to_double(const Rational& q);

/// Decimal rendering with `digits` significant digits, for human-facing output.
std::string to_decimal_string(const Rational& q, int digits = 10);

inline int sign(const Rational& q) { return sgn(q); }

/// q^e for a nonnegative exponent.
Rational pow(const Rational& q, unsigned e);

}  // namespace einstein_barrier
