#pragma once

#include "poslim/combinatorics.hpp"
#include "poslim/core_model.hpp"
#include "poslim/errors.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace poslim {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

/// Sweep limits shared by every brute-force routine.
struct SweepOptions {
  std::uint64_t budget = kDefaultBudget;
  unsigned threads = 1;
  std::size_t max_witnesses = 64;
};

/// Universe size as a machine integer, or BudgetExceeded.
std::uint64_t checked_universe_size(const UniverseParams& p, std::uint64_t budget);

/// Positions of strategy `index`: base-(2W+1) digits, least significant first,
/// shifted by -W, with a trailing zero position.
PositionSeries decode(const BigInt& index, const UniverseParams& p);

/// Walks the universe in index order without materializing it.
class UniverseIterator {
 public:
  explicit UniverseIterator(const UniverseParams& p, std::uint64_t start = 0);

  const UniverseParams& params() const { return params_; }
  std::uint64_t cursor() const { return cursor_; }
  bool done() const { return cursor_ >= end_; }
  const IntVector& positions() const { return positions_; }
  /// Actions of the current strategy (positions differenced from zero).
  const IntVector& actions() const { return actions_; }
  void next();

 private:
  UniverseParams params_;
  std::uint64_t cursor_;
  std::uint64_t end_;
  IntVector positions_;
  IntVector actions_;
};

/// Every universe sum the closed forms predict, gathered in one sweep.
struct EmpiricalSums {
  std::uint64_t strategies = 0;
  std::vector<std::int64_t> action_counts;  ///< index m + 2W
  IntVector slice_sum, slice_abs, slice_sq;
  IntMatrix position_products;  ///< sum W_i W_l
  IntMatrix action_products;    ///< sum U_i U_l
  IntMatrix abs_products;       ///< sum |U_i||U_l|
  std::int64_t total_abs = 0;   ///< industry gain in units of C
  std::int64_t max_abs = 0;
  std::uint64_t max_abs_count = 0;
  std::int64_t min_abs = 0;
  std::uint64_t min_abs_count = 0;

  std::int64_t count(std::int64_t m, int limit) const { return action_counts.at(std::size_t(m + 2 * limit)); }
};

EmpiricalSums empirical_sums(const UniverseParams& p, const SweepOptions& opt = {});

ActionDistribution empirical_action_counts(const UniverseParams& p, const SweepOptions& opt = {});

/// Sample variances of PL legs over the universe computed from every PL value.
PlVariance empirical_pl_variance(std::span<const Decimal> prices, Decimal cost, const UniverseParams& p,
                                 const ContractSpec& spec, const SweepOptions& opt = {});

/// Mean price-leg times cost-leg product, which vanishes for constant cost.
Rational empirical_leg_cross_sum(std::span<const Decimal> prices, Decimal cost, const UniverseParams& p,
                                 const ContractSpec& spec, const SweepOptions& opt = {});

struct ExtremeSearch {
  Decimal pl;
  std::uint64_t witness_count = 0;
  std::vector<Strategy> witnesses;  ///< the first few in index order
};

ExtremeSearch brute_force_mps(std::span<const Decimal> prices, const CostModel& costs, const UniverseParams& p,
                              const ContractSpec& spec, const SweepOptions& opt = {});
ExtremeSearch brute_force_mls(std::span<const Decimal> prices, const CostModel& costs, const UniverseParams& p,
                              const ContractSpec& spec, const SweepOptions& opt = {});

}  // namespace poslim
