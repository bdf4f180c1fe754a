#include "poslim/core_model.hpp"

#include "poslim/errors.hpp"

#include <cstdio>

namespace poslim {

std::string TimeOfDay::str() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02d:%02d:%02d", seconds / 3600, seconds / 60 % 60, seconds % 60);
  return buf;
}

ContractSpec::ContractSpec(std::string symbol, Decimal point_value, Decimal tick_size, SessionWindow session)
    : symbol_(std::move(symbol)), point_value_(point_value), tick_size_(tick_size), session_(std::move(session)) {
  if (point_value_ <= Decimal(0)) throw ValidationError("point value k must be positive");
  if (tick_size_ <= Decimal(0)) throw ValidationError("tick size delta must be positive");
  tick_value_ = exact_mul(point_value_, tick_size_);
}

std::int64_t ContractSpec::to_ticks(Decimal price) const {
  if (price.raw() % tick_size_.raw() != 0)
    throw ValidationError("price " + price.exact_str() + " is not a multiple of delta " + tick_size_.exact_str());
  return price.raw() / tick_size_.raw();
}

std::vector<std::int64_t> ContractSpec::to_ticks(std::span<const Decimal> prices) const {
  std::vector<std::int64_t> out;
  out.reserve(prices.size());
  for (Decimal p : prices) out.push_back(to_ticks(p));
  return out;
}

Strategy::Strategy(std::initializer_list<std::int64_t> actions) : actions_(Eigen::Index(actions.size())) {
  Eigen::Index i = 0;
  for (auto a : actions) actions_[i++] = a;
}

PositionSeries::PositionSeries(std::initializer_list<std::int64_t> positions)
    : positions_(Eigen::Index(positions.size())) {
  Eigen::Index i = 0;
  for (auto w : positions) positions_[i++] = w;
}

CostModel CostModel::constant(Decimal per_contract) {
  if (per_contract < Decimal(0)) throw ValidationError("transaction cost must be non-negative");
  CostModel m;
  m.constant_ = per_contract;
  return m;
}

CostModel CostModel::per_tick(std::vector<Decimal> costs) {
  for (Decimal c : costs)
    if (c < Decimal(0)) throw ValidationError("transaction cost must be non-negative");
  CostModel m;
  m.costs_ = std::move(costs);
  return m;
}

CostModel CostModel::equity_fraction(Decimal fraction, const ContractSpec& spec, std::span<const Decimal> prices) {
  if (fraction < Decimal(0)) throw ValidationError("cost fraction must be non-negative");
  std::vector<Decimal> costs;
  costs.reserve(prices.size());
  const Decimal notional_scale = rounded_mul(fraction, spec.point_value());
  for (Decimal p : prices) costs.push_back(rounded_mul(notional_scale, p));
  return per_tick(std::move(costs));
}

std::vector<Decimal> CostModel::resolve(std::size_t n) const {
  if (constant_) return std::vector<Decimal>(n, *constant_);
  if (costs_.size() != n)
    throw StructuralError("cost vector has " + std::to_string(costs_.size()) + " entries, expected " +
                          std::to_string(n));
  return costs_;
}

PositionSeries strategy_to_positions(const Strategy& s, std::int64_t w0) {
  IntVector w(s.size());
  std::int64_t running = w0;
  for (Eigen::Index i = 0; i < s.size(); ++i) w[i] = running += s[i];
  return PositionSeries(std::move(w), w0);
}

Strategy positions_to_strategy(const PositionSeries& p) {
  IntVector u(p.size());
  std::int64_t prev = p.w0();
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    u[i] = p[i] - prev;
    prev = p[i];
  }
  return Strategy(std::move(u));
}

bool validate_membership(const Strategy& s, std::int64_t limit) {
  if (s.size() == 0) return false;
  std::int64_t w = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    w += s[i];
    if (w > limit || w < -limit) return false;
  }
  return w == 0;
}

bool validate_membership(const PositionSeries& p, std::int64_t limit) {
  if (p.size() == 0 || p.w0() != 0 || p[p.size() - 1] != 0) return false;
  return p.positions().cwiseAbs().maxCoeff() <= limit;
}

namespace {
std::string join(const IntVector& v) {
  std::string out = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out + ")";
}
}  // namespace

std::string to_string(const Strategy& s) { return join(s.actions()); }
std::string to_string(const PositionSeries& p) { return join(p.positions()); }

}  // namespace poslim
