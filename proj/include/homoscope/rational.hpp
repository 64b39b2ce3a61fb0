// rational.hpp -- exact rational arithmetic helpers.
//
// All model weights and partition-function values are exact rationals;
// floating-point views are derived for reporting only.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace homoscope {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "num", "num/den" or a plain decimal like "0.25". Throws
// std::invalid_argument on malformed input or zero denominator.
Rational parse_rational(const std::string& text);

// Canonical "num/den" (or "num" when the denominator is 1).
std::string rational_to_string(const Rational& r);

// log2 of a positive rational, usable far beyond double range.
double log2_rational(const Rational& r);

double to_double(const Rational& r);

// r^e with a non-negative integer exponent.
Rational rational_pow(const Rational& r, std::uint64_t e);

BigInt binomial(unsigned n, unsigned k);

}  // namespace homoscope
