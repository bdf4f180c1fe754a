#pragma once

#include "poslim/core_model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace poslim {

/// An integer confined to [-limit, limit].
class CappedInt {
 public:
  CappedInt(std::int64_t value, std::int64_t limit);

  std::int64_t value() const { return value_; }
  std::int64_t limit() const { return limit_; }
  CappedInt operator-() const { return {-value_, limit_}; }
  bool operator==(const CappedInt&) const = default;

 private:
  std::int64_t value_;
  std::int64_t limit_;
};

/// Clamped addition. Throws ValidationError when the limits differ.
CappedInt oplus(CappedInt a, CappedInt b);

/// a - b when it stays within the limit; empty otherwise.
std::optional<CappedInt> ominus(CappedInt a, CappedInt b);

/// Every x with b (+) x == c, ascending.
std::vector<CappedInt> solution_set(CappedInt b, CappedInt c);

struct CayleyStats {
  std::int64_t pairs = 0;
  std::int64_t clamped = 0;
  std::int64_t ordinary = 0;
  std::int64_t undefined_sub = 0;
};

/// Counted cell by cell over the full table.
CayleyStats cayley_stats(std::int64_t limit);

enum class MagmaOp { Plus, Minus };

/// Table text with the left operand along rows; undefined cells print as n/a.
std::string cayley_table(std::int64_t limit, MagmaOp op, char delimiter = '\t');

PositionSeries positions_oplus(const PositionSeries& a, const PositionSeries& b, std::int64_t limit);

/// Composition induced on strategies, built tick by tick from the positions
/// the two strategies held before each action.
Strategy strategies_compose(const Strategy& a, const Strategy& b, std::int64_t limit);

/// Smallest (a, b, c) with (a (+) b) (+) c != a (+) (b (+) c), scanning values in order.
struct AssociativityWitness {
  std::int64_t a, b, c;
};
std::optional<AssociativityWitness> find_non_associative(std::int64_t limit);

}  // namespace poslim
