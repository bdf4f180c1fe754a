#pragma once

#include "poslim/exact.hpp"

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace poslim {

/// Exact fixed-point decimal with six fractional digits, stored as a
/// scaled 64-bit integer. Prices, point values and dollar amounts all use it.
class Decimal {
 public:
  static constexpr std::int64_t kScale = 1'000'000;
  static constexpr int kDigits = 6;

  constexpr Decimal() = default;
  constexpr Decimal(int units) : raw_(std::int64_t{units} * kScale) {}  // NOLINT implicit

  static constexpr Decimal from_raw(std::int64_t raw) {
    Decimal d;
    d.raw_ = raw;
    return d;
  }
  static Decimal from_units(std::int64_t units) { return from_raw(units * kScale); }

  /// Parses "[-]digits[.digits]"; more than six fractional digits is an error.
  static Decimal parse(std::string_view text);

  constexpr std::int64_t raw() const { return raw_; }
  double to_double() const { return static_cast<double>(raw_) / kScale; }
  Rational to_rational() const { return Rational(raw_) / kScale; }

  /// Fixed notation with `places` fractional digits. Rounds half away from zero.
  std::string str(int places = 2) const;
  /// Shortest exact fixed notation, at least `min_places` fractional digits.
  std::string exact_str(int min_places = 0) const;

  constexpr auto operator<=>(const Decimal&) const = default;

  constexpr Decimal operator-() const { return from_raw(-raw_); }
  constexpr Decimal& operator+=(Decimal o) { raw_ += o.raw_; return *this; }
  constexpr Decimal& operator-=(Decimal o) { raw_ -= o.raw_; return *this; }
  constexpr Decimal& operator*=(std::int64_t k) { raw_ *= k; return *this; }

  friend constexpr Decimal operator+(Decimal a, Decimal b) { return a += b; }
  friend constexpr Decimal operator-(Decimal a, Decimal b) { return a -= b; }
  friend constexpr Decimal operator*(Decimal a, std::int64_t k) { return a *= k; }
  friend constexpr Decimal operator*(std::int64_t k, Decimal a) { return a *= k; }

  /// Exact product; throws ValidationError if it needs more than six digits.
  friend Decimal exact_mul(Decimal a, Decimal b);
  /// Product rounded half away from zero to six digits.
  friend Decimal rounded_mul(Decimal a, Decimal b);

 private:
  std::int64_t raw_ = 0;
};

Decimal abs(Decimal d);

std::ostream& operator<<(std::ostream& os, Decimal d);

}  // namespace poslim
