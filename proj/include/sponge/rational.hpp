#ifndef SPONGE_RATIONAL_HPP_
#define SPONGE_RATIONAL_HPP_

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace sponge {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Accepts "p/q", an integer, or a plain decimal such as "0.25" or "1e-3".
// Decimals are converted exactly (0.1 becomes 1/10, not the nearest double).
Rational parse_rational(std::string_view text);

// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

// base^(-exponent) exactly.
Rational inverse_power(long base, int exponent);

}  // namespace sponge

#endif  // SPONGE_RATIONAL_HPP_
