#pragma once

#include "poslim/core_model.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace poslim {

/// A maximal run of constant nonzero position between ticks start and end (0-based).
struct Trade {
  std::size_t start = 0;
  std::size_t end = 0;
  std::int64_t position = 0;  ///< signed contracts held during the run

  bool operator==(const Trade&) const = default;
};

struct MpsResult {
  Strategy strategy;
  Decimal pl;
  std::vector<Trade> trades;
  std::int64_t transactions = 0;  ///< nonzero actions
};

/// Maximum-profit strategy under the position limit, exact over the whole
/// universe. Among equal-PL strategies it takes the fewest transactions, then
/// transacts as early as possible, then moves to the smallest position.
/// O(n (2W+1)^2).
MpsResult mps0(std::span<const Decimal> prices, const CostModel& costs, std::int64_t limit, const ContractSpec& spec);

/// Runs of constant nonzero position in a strategy's position path.
std::vector<Trade> trades_of(const Strategy& s);

}  // namespace poslim
