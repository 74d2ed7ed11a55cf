#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

namespace halfmap {

// Exact coefficient arithmetic for the series recurrences when the inputs are
// rational ("p/q" strings through the CLI, or exact doubles).
using Rational = boost::multiprecision::cpp_rational;

// Parses "p/q", "p" or a decimal string ("1.25" -> 5/4). Throws InvalidParams
// on malformed input or zero denominator.
Rational parse_rational(const std::string& text);

std::string to_fraction_string(const Rational& r);

// Exact origin jet: coefficient of y0^k at index k (index 0 is zero),
// k up to `order`. Requires a != 0.
std::vector<Rational> taylor_origin_exact(const Rational& T, const Rational& D,
                                          const Rational& a, int order);

// Exact jet of the characteristic-relation orbit through (0, c0), c0 != 0:
// coefficient of y0^k at index k.
std::vector<Rational> taylor_origin_shifted_exact(const Rational& T, const Rational& D,
                                                  const Rational& a, const Rational& c0,
                                                  int order);

}  // namespace halfmap
