#pragma once

#include "superrep/polytope.hpp"

#include <string>

namespace superrep {

/// "a/b (0.500000)": the exact rational followed by a 6-significant-digit
/// decimal in parentheses.
std::string format_value(const Rational& r);

std::string format_decimal(const Rational& r);

/// One inequality, e.g. "4*q2 <= 0" or "q1 + 2*q3 = 1"; unit coefficients
/// drop the "1*", zero coefficients are skipped.
std::string format_poly_row(const HPolytope& p, std::size_t row);

/// One inequality per line, in the polytope's variable order.
std::string format_polytope(const HPolytope& p);

}  // namespace superrep
