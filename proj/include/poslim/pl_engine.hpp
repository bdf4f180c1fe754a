#pragma once

#include "poslim/core_model.hpp"
#include "poslim/errors.hpp"

#include <Eigen/Core>

#include <span>
#include <vector>

namespace poslim {

struct PlBreakdown {
  Decimal total;
  Decimal price_leg;  ///< k times the price-driven sum, including the final mark
  Decimal cost_leg;   ///< minus all transaction costs, including the closing charge
};

/// Mark-to-market PL of a strategy over one price chain. An open final
/// position is closed at the last price and charged C_n per contract.
PlBreakdown pl(std::span<const Decimal> prices, const Strategy& strategy, const CostModel& costs,
               const ContractSpec& spec);

/// PL of the first j+1 ticks for every j, each prefix marked at its own last price.
std::vector<Decimal> pl_prefix(std::span<const Decimal> prices, const Strategy& strategy, const CostModel& costs,
                               const ContractSpec& spec);

/// One trade of `size` contracts opened at tick `start` and closed at `end` (0-based).
Decimal ote_pl(std::size_t start, std::size_t end, std::int64_t size, std::span<const Decimal> prices,
               const CostModel& costs, const ContractSpec& spec);

/// PL of many strategies (columns) under many price/cost scenarios (columns).
/// prices and costs are n x q, strategies n x S; the result is q x S. The
/// marking term is kept so strategies with a nonzero net action are priced
/// exactly as by pl().
template <typename PriceDerived, typename CostDerived>
Eigen::Matrix<typename PriceDerived::Scalar, Eigen::Dynamic, Eigen::Dynamic> pl_matrix(
    const Eigen::MatrixBase<PriceDerived>& prices, const IntMatrix& strategies,
    const Eigen::MatrixBase<CostDerived>& costs, const typename PriceDerived::Scalar& point_value) {
  using Scalar = typename PriceDerived::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const auto n = prices.rows();
  if (n == 0 || strategies.rows() != n || costs.rows() != n || costs.cols() != prices.cols())
    throw StructuralError("pl_matrix: prices, strategies and costs must share n rows and scenario columns");

  const Mat u = strategies.template cast<Scalar>();
  const Mat abs_u = strategies.cwiseAbs().template cast<Scalar>();
  const Eigen::Matrix<Scalar, 1, Eigen::Dynamic> net = u.colwise().sum();
  const Eigen::Matrix<Scalar, 1, Eigen::Dynamic> abs_net = strategies.colwise().sum().cwiseAbs().template cast<Scalar>();

  Mat out = -point_value * (prices.transpose() * u) - costs.transpose() * abs_u;
  out += point_value * (prices.row(n - 1).transpose() * net) - costs.row(n - 1).transpose() * abs_net;
  return out;
}

struct PriceIncrementStats {
  double mean_price = 0;
  double mean_increment = 0;
  double var_price = 0;      ///< n-1 divisor
  double var_increment = 0;  ///< n-2 divisor over the n-1 increments
  /// var_price minus its reconstruction from the increment statistics.
  double relation_residual = 0;
  /// mean_price minus its reconstruction from P_1 and the increments.
  double mean_relation_residual = 0;
};

PriceIncrementStats price_increment_stats(std::span<const double> prices);

}  // namespace poslim
