#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace wino {

/// Exact fraction over arbitrary-precision integers. Always kept in lowest
/// terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Nearest double (round-half-to-even on the exact value).
double to_double(const Rational &value);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational &value);

/// Accepts "p", "-p", "p/q"; throws std::invalid_argument on anything else
/// or a zero denominator.
Rational parse_rational(std::string_view text);

} // namespace wino
