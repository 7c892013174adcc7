#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace screenlab {

using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "12", "-0.25", "3/4" and "-7/2". Throws std::invalid_argument on
// anything else, including a zero denominator.
Rational parse_rational(const std::string& text);

Integer ceil_of(const Rational& x);
Integer floor_of(const Rational& x);

// Canonical "p/q", or "p" when the denominator is one.
std::string to_fraction(const Rational& x);

// Exact decimal expansion when the denominator has no prime factors other
// than 2 and 5, std::nullopt otherwise.
std::optional<std::string> to_exact_decimal(const Rational& x);

// Exact decimal when it terminates, otherwise "~" followed by the value
// rounded half away from zero to `digits` places.
std::string to_decimal(const Rational& x, int digits = 6);

long to_long(const Integer& x);

// num/den in lowest terms. Throws std::invalid_argument when den == 0.
Rational ratio(long num, long den);

}  // namespace screenlab
