#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace bcr {

// Exact rational number. GMP keeps every result in lowest terms with a
// positive denominator.
using Rational = mpq_class;

// Accepts "p", "-p", "p/q". Throws ParseError on malformed input or q == 0.
Rational parse_rational(std::string_view text);

// "p" when the denominator is 1, otherwise "p/q". Used by the file writers.
std::string format_rational(const Rational& value);

// Always "p/q" (denominator printed even when 1). Used for reports.
std::string format_fraction(const Rational& value);

// True iff the value is an integer multiple of 1/2.
bool is_half_integral(const Rational& value);

inline const Rational& min_of(const Rational& a, const Rational& b) {
  return b < a ? b : a;
}

}  // namespace bcr
