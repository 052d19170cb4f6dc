#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace mealypred {

/// Exact counts of generating sequences; values reach 2^t.
using BigCount = boost::multiprecision::cpp_int;

using Rational = boost::multiprecision::cpp_rational;

/// "num/den" in lowest terms; integers keep the "/1" suffix so that the
/// field format never varies.
std::string to_fraction_string(const Rational& value);

Rational parse_fraction(const std::string& text);

double to_double(const Rational& value);

}  // namespace mealypred
