#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace jtlab {

/// Exact rational scalar used for every certified quantity.
using Rational = mpq_class;

/// Parses "p/q", "p", or a finite decimal such as "-0.125" into an exact
/// rational. Throws ParseError on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p/q" in lowest terms, or "p" when q = 1.
std::string to_string(const Rational& q);

/// Exact value of a finite double.
Rational from_double(double x);

/// Largest double <= q.
double to_double_down(const Rational& q);
/// Smallest double >= q.
double to_double_up(const Rational& q);

/// Double bounds on the square root of a non-negative rational:
/// sqrt_down(q)^2 <= q <= sqrt_up(q)^2, checked exactly.
double sqrt_down(const Rational& q);
double sqrt_up(const Rational& q);

}  // namespace jtlab
