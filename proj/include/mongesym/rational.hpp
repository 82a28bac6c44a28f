#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace mongesym {

/// Exact rational number. GMP keeps it canonical: denominator > 0 and
/// gcd(|num|, den) = 1 after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(long numerator, long denominator = 1);

bool is_integer(const Rational& q);

/// Exact k-th root of a rational, if one exists in Q. Negative radicands are
/// admitted for odd k.
std::optional<Rational> rational_root(const Rational& value, unsigned long k);

/// value^exponent when the result is again rational; nullopt otherwise.
/// 0 raised to a negative exponent yields nullopt.
std::optional<Rational> rational_power(const Rational& value, const Rational& exponent);

/// "n" or "n/d".
std::string to_string(const Rational& q);

/// Accepts "[-]n" or "[-]n/d" with d > 0. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

} // namespace mongesym
