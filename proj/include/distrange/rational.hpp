#ifndef DISTRANGE_RATIONAL_HPP
#define DISTRANGE_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

namespace distrange {

/// Exact arbitrary-precision rational. All arithmetic in the engine is
/// exact; nothing is ever rounded. GMP keeps values in canonical form
/// (denominator > 0, gcd(|num|, den) = 1) as long as values are built
/// through the helpers below.
using Rational = mpq_class;

/// Build a canonical rational p/q. Throws on q = 0.
Rational make_rational(long p, long q = 1);

/// Parse "p/q" or "p" (optional leading '-'). Throws ParseError on
/// malformed input or zero denominator.
Rational parse_rational(const std::string& text);

/// Canonical "p/q" string; integers print without the "/q" part.
std::string to_string(const Rational& r);

/// True if r is in canonical form (den > 0, gcd(|num|, den) = 1).
bool is_canonical(const Rational& r);

inline Rational rational_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

} // namespace distrange

#endif
