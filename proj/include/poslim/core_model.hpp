#pragma once

#include "poslim/decimal.hpp"

#include <Eigen/Core>

#include <chrono>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace poslim {

using IntVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;
using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Exchange-local wall clock. No timezone conversion is ever applied.
using Timestamp = std::chrono::sys_time<std::chrono::microseconds>;

/// Seconds since midnight.
struct TimeOfDay {
  int seconds = 0;
  static TimeOfDay hms(int h, int m, int s) { return {h * 3600 + m * 60 + s}; }
  auto operator<=>(const TimeOfDay&) const = default;
  std::string str() const;
};

/// Trading session bounds. An open later than the close means the session
/// starts on the previous calendar day. Both bounds are inclusive.
struct SessionWindow {
  TimeOfDay open;
  TimeOfDay close;
  std::string timezone = "exchange-local";

  bool overnight() const { return open > close; }
};

struct Tick {
  Timestamp time;
  Decimal price;
  std::int64_t size = 0;
  std::string condition;

  bool indicative() const { return size == 0; }
  bool operator==(const Tick&) const = default;
};

/// Contract constants: dollars per full point and the minimum price step.
class ContractSpec {
 public:
  ContractSpec(std::string symbol, Decimal point_value, Decimal tick_size, SessionWindow session = {});

  const std::string& symbol() const { return symbol_; }
  Decimal point_value() const { return point_value_; }
  Decimal tick_size() const { return tick_size_; }
  /// Dollars per one minimum fluctuation, exact.
  Decimal tick_value() const { return tick_value_; }
  const SessionWindow& session() const { return session_; }

  /// Price as an integer count of minimum steps. Throws ValidationError off grid.
  std::int64_t to_ticks(Decimal price) const;
  std::vector<std::int64_t> to_ticks(std::span<const Decimal> prices) const;
  Decimal price_of(std::int64_t ticks) const { return tick_size_ * ticks; }

 private:
  std::string symbol_;
  Decimal point_value_;
  Decimal tick_size_;
  Decimal tick_value_;
  SessionWindow session_;
};

/// Integer action vector: contracts bought (positive) or sold at each tick.
class Strategy {
 public:
  Strategy() = default;
  explicit Strategy(IntVector actions) : actions_(std::move(actions)) {}
  Strategy(std::initializer_list<std::int64_t> actions);
  static Strategy do_nothing(Eigen::Index n) { return Strategy(IntVector::Zero(n)); }

  const IntVector& actions() const { return actions_; }
  Eigen::Index size() const { return actions_.size(); }
  std::int64_t operator[](Eigen::Index i) const { return actions_[i]; }
  std::int64_t net() const { return actions_.sum(); }

  Strategy operator-() const { return Strategy(IntVector(-actions_)); }
  bool operator==(const Strategy& o) const {
    return actions_.size() == o.actions_.size() && actions_ == o.actions_;
  }

 private:
  IntVector actions_;
};

/// Position after each tick, with the position held before the first tick.
class PositionSeries {
 public:
  PositionSeries() = default;
  explicit PositionSeries(IntVector positions, std::int64_t w0 = 0)
      : positions_(std::move(positions)), w0_(w0) {}
  PositionSeries(std::initializer_list<std::int64_t> positions);

  const IntVector& positions() const { return positions_; }
  std::int64_t w0() const { return w0_; }
  Eigen::Index size() const { return positions_.size(); }
  std::int64_t operator[](Eigen::Index i) const { return positions_[i]; }

  PositionSeries operator-() const { return PositionSeries(IntVector(-positions_), -w0_); }
  bool operator==(const PositionSeries& o) const {
    return w0_ == o.w0_ && positions_.size() == o.positions_.size() && positions_ == o.positions_;
  }

 private:
  IntVector positions_;
  std::int64_t w0_ = 0;
};

/// Per-contract transaction costs, either one value per tick or a constant.
class CostModel {
 public:
  static CostModel constant(Decimal per_contract);
  static CostModel per_tick(std::vector<Decimal> costs);
  /// Cost proportional to notional: f * k * P_i, rounded to micro-dollars.
  static CostModel equity_fraction(Decimal fraction, const ContractSpec& spec, std::span<const Decimal> prices);

  bool is_constant() const { return constant_.has_value(); }
  /// Cost at 0-based tick i for a chain of length n.
  Decimal at(std::size_t i) const { return constant_ ? *constant_ : costs_.at(i); }
  /// Materializes n costs, throwing StructuralError if a per-tick model has a different length.
  std::vector<Decimal> resolve(std::size_t n) const;

 private:
  std::optional<Decimal> constant_;
  std::vector<Decimal> costs_;
};

PositionSeries strategy_to_positions(const Strategy& s, std::int64_t w0 = 0);
Strategy positions_to_strategy(const PositionSeries& p);

/// True iff the positions implied by s stay within [-limit, limit] and return to zero.
bool validate_membership(const Strategy& s, std::int64_t limit);
bool validate_membership(const PositionSeries& p, std::int64_t limit);

std::string to_string(const Strategy& s);
std::string to_string(const PositionSeries& p);

}  // namespace poslim
