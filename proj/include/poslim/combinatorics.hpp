#pragma once

#include "poslim/core_model.hpp"
#include "poslim/exact.hpp"

#include <map>
#include <span>
#include <vector>

namespace poslim {

/// Position limit and chain length of a strategy universe.
struct UniverseParams {
  int limit = 1;  ///< maximum absolute position
  int n = 2;      ///< ticks

  UniverseParams(int limit, int n);
  /// Number of strategies, (2W+1)^(n-1).
  BigInt size() const;
  int base() const { return 2 * limit + 1; }
  bool operator==(const UniverseParams&) const = default;
};

struct UniverseCounts {
  BigInt strategies;
  BigInt actions_total;
  BigInt do_nothing;
  BigInt transactions;
};

UniverseCounts universe_counts(const UniverseParams& p);

/// Number of actions equal to m over all strategies and ticks. Zero outside [-2W, 2W].
BigInt action_count(std::int64_t m, const UniverseParams& p);

/// Exact counts of every action type.
struct ActionDistribution {
  int limit = 1;
  std::map<std::int64_t, BigInt> counts;  ///< m in [-2W, 2W]
  BigInt total;

  Rational pmf(std::int64_t m) const;
  /// Right-continuous cumulative mass at x.
  Rational cdf(const Rational& x) const;
  /// Number of points carrying positive mass.
  int jump_count() const;
};

ActionDistribution action_distribution(const UniverseParams& p);
std::map<std::int64_t, Rational> action_pmf(const UniverseParams& p);
Rational action_cdf(const Rational& x, const UniverseParams& p);
Rational action_cdf(double x, const UniverseParams& p);
/// Mass of m as the chain grows without bound.
Rational limit_pmf(std::int64_t m, int limit);

/// Characteristic function of the action type; real because the law is symmetric.
double char_fn(double t, const UniverseParams& p);

/// Raw moment E[m^s].
Rational moment(unsigned s, const UniverseParams& p);

struct IndustryGain {
  Rational total;    ///< dollars collected by the industry over the whole universe
  Rational mean_pl;  ///< mean strategy PL due to costs, never positive
};

IndustryGain industry_gain(const Rational& cost, const UniverseParams& p);

struct ExtremeGain {
  BigInt max_coefficient;  ///< largest sum |U_i| over the universe
  std::vector<Strategy> max_witnesses;
  BigInt min_coefficient;
  std::vector<Strategy> min_witnesses;
};

ExtremeGain extreme_gain_strategies(const UniverseParams& p);

struct SliceSums {
  BigInt sum;
  BigInt sum_abs;
  BigInt sum_sq;
};

/// Sums of U_i, |U_i| and U_i^2 over the universe at 1-based tick i.
SliceSums slice_sums(int i, const UniverseParams& p);

/// Sum over the universe of W_i W_l, 1-based.
BigInt position_cov(int i, int l, const UniverseParams& p);
/// Sum over the universe of U_i U_{i+lag}, 1-based, lag >= 1.
BigInt action_cov(int i, int lag, const UniverseParams& p);

enum class AbsCovCase { A, B, C, D, E, F };
char to_char(AbsCovCase c);
AbsCovCase abs_cov_case(int i, int r, const UniverseParams& p);
/// Sum over the universe of |U_i| |U_r| for 1-based i < r.
BigInt abs_action_cov(int i, int r, const UniverseParams& p);

/// Sample variances (S-1 divisor) of the price and cost legs of PL across the
/// universe, in squared dollars, for a constant per-contract cost.
struct PlVariance {
  Rational price_leg;
  Rational cost_leg;
  Rational total;
};

PlVariance pl_variance(std::span<const Decimal> prices, const Rational& cost, const UniverseParams& p,
                       const ContractSpec& spec);

/// The coarse bound var(price leg) <= 4 k^2 W^2 (sum P_i)^2.
bool pl_variance_bound_holds(std::span<const Decimal> prices, const UniverseParams& p, const ContractSpec& spec);

}  // namespace poslim
