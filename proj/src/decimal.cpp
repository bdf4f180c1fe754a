#include "poslim/decimal.hpp"

#include "poslim/errors.hpp"

#include <charconv>
#include <cstdlib>
#include <limits>
#include <ostream>

namespace poslim {

namespace {

std::int64_t checked(const BigInt& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw ValidationError("decimal overflow");
  return v.convert_to<std::int64_t>();
}

}  // namespace

Decimal Decimal::parse(std::string_view text) {
  const std::string_view original = text;
  auto fail = [&] { return ValidationError("not a decimal number: '" + std::string(original) + "'"); };
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  const auto dot = text.find('.');
  std::string_view whole = text.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (whole.empty() && frac.empty()) throw fail();
  if (frac.size() > std::size_t(kDigits)) {
    // Trailing zeros beyond the sixth digit are harmless.
    auto extra = frac.substr(kDigits);
    if (extra.find_first_not_of('0') != std::string_view::npos)
      throw ValidationError("more than six fractional digits: '" + std::string(original) + "'");
    frac = frac.substr(0, kDigits);
  }
  std::int64_t units = 0;
  if (!whole.empty()) {
    auto [ptr, ec] = std::from_chars(whole.data(), whole.data() + whole.size(), units);
    if (ec != std::errc{} || ptr != whole.data() + whole.size()) throw fail();
  }
  std::int64_t micro = 0;
  for (std::size_t i = 0; i < std::size_t(kDigits); ++i) {
    micro *= 10;
    if (i < frac.size()) {
      if (frac[i] < '0' || frac[i] > '9') throw fail();
      micro += frac[i] - '0';
    }
  }
  if (units > std::numeric_limits<std::int64_t>::max() / kScale - 1) throw ValidationError("decimal overflow");
  const std::int64_t raw = units * kScale + micro;
  return from_raw(negative ? -raw : raw);
}

std::string Decimal::str(int places) const {
  if (places < 0 || places > kDigits) places = kDigits;
  std::int64_t step = 1;
  for (int i = places; i < kDigits; ++i) step *= 10;
  std::int64_t mag = raw_ < 0 ? -raw_ : raw_;
  mag = (mag + step / 2) / step;
  std::int64_t unit = 1;
  for (int i = 0; i < places; ++i) unit *= 10;
  std::string out = (raw_ < 0 && mag != 0) ? "-" : "";
  out += std::to_string(mag / unit);
  if (places > 0) {
    std::string frac = std::to_string(mag % unit);
    out += '.';
    out += std::string(std::size_t(places) - frac.size(), '0') + frac;
  }
  return out;
}

std::string Decimal::exact_str(int min_places) const {
  int places = kDigits;
  std::int64_t r = raw_ < 0 ? -raw_ : raw_;
  while (places > min_places && r % 10 == 0) {
    r /= 10;
    --places;
  }
  return str(places);
}

Decimal exact_mul(Decimal a, Decimal b) {
  const BigInt prod = BigInt(a.raw_) * b.raw_;
  if (prod % Decimal::kScale != 0)
    throw ValidationError("product " + a.exact_str() + "*" + b.exact_str() + " needs more than six digits");
  return Decimal::from_raw(checked(prod / Decimal::kScale));
}

Decimal rounded_mul(Decimal a, Decimal b) {
  BigInt prod = BigInt(a.raw_) * b.raw_;
  const bool negative = prod < 0;
  if (negative) prod = -prod;
  BigInt q = (prod + Decimal::kScale / 2) / Decimal::kScale;
  return Decimal::from_raw(checked(negative ? -q : q));
}

Decimal abs(Decimal d) { return d.raw() < 0 ? -d : d; }

std::ostream& operator<<(std::ostream& os, Decimal d) { return os << d.exact_str(2); }

}  // namespace poslim
