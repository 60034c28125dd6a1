#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace superrep {

/// Error class for malformed inputs (bad dimensions, bad values, unknown names).
struct input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

using Integer = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational, always kept in canonical form:
/// denominator > 0 and gcd(|numerator|, denominator) = 1.
using Rational = boost::multiprecision::cpp_rational;

/// Renders "a/b" with the sign on the numerator, or a bare integer "a"
/// when the denominator is 1.
std::string to_string(const Rational& r);

/// Parses "a/b" or "a" where a is an (optionally negative) integer and b a
/// positive integer. Throws input_error on anything else, including "1/0".
Rational parse_rational(const std::string& text);

double to_double(const Rational& r);

}  // namespace superrep
