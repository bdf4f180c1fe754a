#pragma once

// Arbitrary precision integers and rationals used by every closed form.
// Expression templates are disabled so the types behave as plain values
// inside Eigen matrices and generic code.

#include <boost/multiprecision/cpp_int.hpp>

#include <Eigen/Core>

#include <string>

namespace poslim {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

inline BigInt ipow(BigInt base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

inline BigInt numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

/// Converts a rational known to be integral; throws std::domain_error otherwise.
BigInt to_integer(const Rational& r);

/// Rational raised to a possibly negative integer power.
Rational rpow(const Rational& base, int exponent);

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(const BigInt& b) { return b.convert_to<double>(); }

std::string to_string(const BigInt& b);
std::string to_string(const Rational& r);

}  // namespace poslim

namespace Eigen {

template <>
struct NumTraits<poslim::Rational> : GenericNumTraits<poslim::Rational> {
  using Real = poslim::Rational;
  using NonInteger = poslim::Rational;
  using Nested = poslim::Rational;
  using Literal = poslim::Rational;
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 32,
    MulCost = 64
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<poslim::BigInt> : GenericNumTraits<poslim::BigInt> {
  using Real = poslim::BigInt;
  using NonInteger = poslim::Rational;
  using Nested = poslim::BigInt;
  using Literal = poslim::BigInt;
  enum {
    IsInteger = 1,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 32,
    MulCost = 64
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
