#include "poslim/pl_engine.hpp"

#include <cmath>
#include <cstdlib>

namespace poslim {

namespace {

struct Prepared {
  std::vector<std::int64_t> ticks;
  std::vector<Decimal> costs;
};

Prepared prepare(std::span<const Decimal> prices, const Strategy& strategy, const CostModel& costs,
                 const ContractSpec& spec) {
  const auto n = prices.size();
  if (n == 0) throw StructuralError("empty price chain");
  if (std::size_t(strategy.size()) != n)
    throw StructuralError("strategy has " + std::to_string(strategy.size()) + " actions for " + std::to_string(n) +
                          " prices");
  return {spec.to_ticks(prices), costs.resolve(n)};
}

}  // namespace

PlBreakdown pl(std::span<const Decimal> prices, const Strategy& strategy, const CostModel& costs,
               const ContractSpec& spec) {
  const auto [ticks, c] = prepare(prices, strategy, costs, spec);
  const auto n = ticks.size();
  std::int64_t moved = 0;
  std::int64_t net = 0;
  Decimal cost;
  for (std::size_t i = 0; i < n; ++i) {
    const auto u = strategy[Eigen::Index(i)];
    moved += u * (ticks[n - 1] - ticks[i]);
    net += u;
    cost += c[i] * std::abs(u);
  }
  cost += c[n - 1] * std::abs(net);
  PlBreakdown out;
  out.price_leg = spec.tick_value() * moved;
  out.cost_leg = -cost;
  out.total = out.price_leg + out.cost_leg;
  return out;
}

std::vector<Decimal> pl_prefix(std::span<const Decimal> prices, const Strategy& strategy, const CostModel& costs,
                               const ContractSpec& spec) {
  const auto [ticks, c] = prepare(prices, strategy, costs, spec);
  const auto n = ticks.size();
  const Decimal closing = c[n - 1];
  std::vector<Decimal> out;
  out.reserve(n);
  // sum_{i<=j} U_i (N_j - N_i) = N_j * net_j - sum_{i<=j} U_i N_i
  std::int64_t net = 0;
  std::int64_t weighted = 0;
  Decimal paid;
  for (std::size_t j = 0; j < n; ++j) {
    const auto u = strategy[Eigen::Index(j)];
    net += u;
    weighted += u * ticks[j];
    paid += c[j] * std::abs(u);
    out.push_back(spec.tick_value() * (ticks[j] * net - weighted) - paid - closing * std::abs(net));
  }
  return out;
}

Decimal ote_pl(std::size_t start, std::size_t end, std::int64_t size, std::span<const Decimal> prices,
               const CostModel& costs, const ContractSpec& spec) {
  if (start >= end) throw ValidationError("trade must start before it ends");
  if (end >= prices.size()) throw StructuralError("trade end beyond the price chain");
  const auto move = std::abs(spec.to_ticks(prices[end]) - spec.to_ticks(prices[start]));
  return spec.tick_value() * (size * move) - (costs.at(start) + costs.at(end)) * size;
}

PriceIncrementStats price_increment_stats(std::span<const double> p) {
  const auto n = p.size();
  if (n < 3) throw InsufficientData("price/increment statistics need at least 3 prices");
  const double dn = double(n);
  PriceIncrementStats s;
  double sum_p = 0, sum_d = 0, sum_id = 0;
  for (std::size_t i = 0; i < n; ++i) sum_p += p[i];
  for (std::size_t i = 1; i < n; ++i) {
    const double d = p[i] - p[i - 1];
    sum_d += d;
    sum_id += double(i + 1) * d;
  }
  s.mean_price = sum_p / dn;
  s.mean_increment = sum_d / (dn - 1);
  double ss_p = 0, ss_d = 0;
  for (std::size_t i = 0; i < n; ++i) ss_p += (p[i] - s.mean_price) * (p[i] - s.mean_price);
  for (std::size_t i = 1; i < n; ++i) {
    const double d = p[i] - p[i - 1] - s.mean_increment;
    ss_d += d * d;
  }
  s.var_price = ss_p / (dn - 1);
  s.var_increment = ss_d / (dn - 2);

  double tail = 0;  // sum_{i>=2} (P_i^2 - 2 P_i dP_i)
  for (std::size_t i = 1; i < n; ++i) tail += p[i] * p[i] - 2 * p[i] * (p[i] - p[i - 1]);
  const double rebuilt = ((dn - 2) * s.var_increment + p[n - 1] * p[n - 1] + tail - dn * s.mean_price * s.mean_price) /
                             (dn - 1) +
                         s.mean_increment * s.mean_increment;
  s.relation_residual = s.var_price - rebuilt;
  s.mean_relation_residual = s.mean_price - (p[0] + (dn * dn - 1) / dn * s.mean_increment - sum_id / dn);
  return s;
}

}  // namespace poslim
