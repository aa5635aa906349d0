#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace envcert {

/// Exact arbitrary-precision rational, always kept in canonical reduced form.
using Rational = mpq_class;

/// Canonical "num/den" rendering; integers render without "/1".
std::string to_string(const Rational& q);

/// Parses "num/den", signed integers, and plain decimals such as "-0.025" or
/// "1e-6". Decimals are converted exactly (0.1 becomes 1/10).
/// Throws ParseError on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// 10^exponent for any integer exponent.
Rational pow10(int exponent);

Rational pow(const Rational& base, unsigned exponent);

inline Rational abs(const Rational& q) { return Rational(::abs(q)); }

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace envcert
