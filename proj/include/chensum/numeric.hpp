// numeric.hpp
// Shared numeric vocabulary: exact rationals, big integers, integer
// helpers and the fixed-precision formatting used by every report.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace chensum {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Largest r with r*r <= n.
std::uint64_t isqrt(std::uint64_t n);

// Exact rational value of a finite double (every double is dyadic).
Rational rational_from_double(double x);

// Parses "p/q", "p" or a decimal literal such as "0.25" exactly.
Rational parse_rational(const std::string& text);

// "p/q" (or "p" when the denominator is 1).
std::string rational_string(const Rational& r);

double to_double(const Rational& r);

// Natural log of a positive big integer / rational without overflow.
double log_big(const BigInt& x);
double log_rational(const Rational& r);

// Rounds to 12 significant digits so serialized reals are stable.
double round12(double x);

}  // namespace chensum
