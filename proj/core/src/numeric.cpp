#include "mealypred/numeric.hpp"

#include <stdexcept>

namespace mealypred {

std::string to_fraction_string(const Rational& value) {
  return numerator(value).str() + "/" + denominator(value).str();
}

Rational parse_fraction(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigCount(text));
    const BigCount num(text.substr(0, slash));
    const BigCount den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed fraction '" + text + "'");
  }
}

double to_double(const Rational& value) {
  return value.convert_to<double>();
}

}  // namespace mealypred
