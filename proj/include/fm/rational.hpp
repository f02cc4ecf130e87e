#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace fm {

// All processing times, completion times and LP data are exact rationals.
// boost's cpp_rational keeps values in lowest terms with a positive
// denominator (zero is 0/1), which is exactly the canonical form we need.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "a" or "a/b" (b != 0) into a canonical rational.
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(const std::string& text);

/// Canonical text form: "a" when the denominator is 1, otherwise "a/b".
std::string format_rational(const Rational& value);

}  // namespace fm
