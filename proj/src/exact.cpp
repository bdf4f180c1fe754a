#include "poslim/exact.hpp"

#include <stdexcept>

namespace poslim {

BigInt to_integer(const Rational& r) {
  if (!is_integer(r)) throw std::domain_error("rational " + to_string(r) + " is not an integer");
  return numerator(r);
}

Rational rpow(const Rational& base, int exponent) {
  if (exponent >= 0) {
    return Rational(ipow(numerator(base), unsigned(exponent)), ipow(denominator(base), unsigned(exponent)));
  }
  if (base == 0) throw std::domain_error("zero raised to a negative power");
  const auto e = unsigned(-exponent);
  return Rational(ipow(denominator(base), e), ipow(numerator(base), e));
}

std::string to_string(const BigInt& b) { return b.str(); }

std::string to_string(const Rational& r) {
  if (is_integer(r)) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace poslim
