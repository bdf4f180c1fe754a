#include "poslim/combinatorics.hpp"

#include "poslim/errors.hpp"

#include <cmath>
#include <cstdlib>

namespace poslim {

namespace {

BigInt pow_base(const UniverseParams& p, int exponent) { return ipow(BigInt(p.base()), unsigned(exponent)); }

/// (2W+1)^e for e >= -1, as a rational.
Rational rpow_base(const UniverseParams& p, int exponent) { return rpow(Rational(p.base()), exponent); }

Rational power_sum(int from, int to, unsigned s) {
  BigInt acc = 0;
  for (int m = from; m <= to; ++m) acc += ipow(BigInt(m), s);
  return Rational(acc);
}

void check_index(int i, const UniverseParams& p, const char* what) {
  if (i < 1 || i > p.n) throw ValidationError(std::string(what) + " index " + std::to_string(i) + " outside 1.." +
                                              std::to_string(p.n));
}

}  // namespace

UniverseParams::UniverseParams(int limit_, int n_) : limit(limit_), n(n_) {
  if (limit < 1) throw ValidationError("position limit must be at least 1");
  if (n < 2) throw ValidationError("closed forms need at least 2 ticks");
}

BigInt UniverseParams::size() const { return pow_base(*this, n - 1); }

UniverseCounts universe_counts(const UniverseParams& p) {
  UniverseCounts c;
  c.strategies = p.size();
  c.actions_total = BigInt(p.n) * c.strategies;
  c.do_nothing = BigInt(p.n) * pow_base(p, p.n - 2);
  c.transactions = BigInt(2) * p.n * p.limit * pow_base(p, p.n - 2);
  return c;
}

BigInt action_count(std::int64_t m, const UniverseParams& p) {
  const std::int64_t am = m < 0 ? -m : m;
  const std::int64_t w = p.limit;
  if (am > 2 * w) return 0;
  // [(2W+1) n - (n-2)|m|] (2W+1)^{n-3}; at n = 2 the bracket is divisible by 2W+1.
  const Rational a = Rational(BigInt(p.base()) * p.n - BigInt(p.n - 2) * am) * rpow_base(p, p.n - 3);
  if (am <= w) return to_integer(a);
  return to_integer(a - 2 * rpow_base(p, p.n - 2));
}

ActionDistribution action_distribution(const UniverseParams& p) {
  ActionDistribution d;
  d.limit = p.limit;
  d.total = BigInt(p.n) * p.size();
  for (std::int64_t m = -2 * p.limit; m <= 2 * p.limit; ++m) d.counts[m] = action_count(m, p);
  return d;
}

Rational ActionDistribution::pmf(std::int64_t m) const {
  auto it = counts.find(m);
  return it == counts.end() ? Rational(0) : Rational(it->second, total);
}

Rational ActionDistribution::cdf(const Rational& x) const {
  BigInt acc = 0;
  for (const auto& [m, c] : counts) {
    if (Rational(m) > x) break;
    acc += c;
  }
  return Rational(acc, total);
}

int ActionDistribution::jump_count() const {
  int jumps = 0;
  for (const auto& [m, c] : counts) jumps += c > 0;
  return jumps;
}

std::map<std::int64_t, Rational> action_pmf(const UniverseParams& p) {
  const auto d = action_distribution(p);
  std::map<std::int64_t, Rational> out;
  for (const auto& [m, c] : d.counts) out[m] = Rational(c, d.total);
  return out;
}

Rational action_cdf(const Rational& x, const UniverseParams& p) { return action_distribution(p).cdf(x); }

Rational action_cdf(double x, const UniverseParams& p) {
  if (!std::isfinite(x)) return x > 0 ? Rational(1) : Rational(0);
  return action_cdf(Rational(std::floor(x)), p);
}

Rational limit_pmf(std::int64_t m, int limit) {
  const std::int64_t am = m < 0 ? -m : m;
  const std::int64_t b = 2 * std::int64_t(limit) + 1;
  if (am > 2 * limit) return 0;
  return Rational(b - am, b * b);
}

double char_fn(double t, const UniverseParams& p) {
  const double b = p.base();
  const double n = p.n;
  // Accumulate 1 - cos(tm) = 2 sin^2(tm/2) so the value is exactly 1 at t = 0
  // and keeps full precision for small t.
  double all = 0, weighted = 0, tail = 0;
  for (int m = 1; m <= 2 * p.limit; ++m) {
    const double s = std::sin(t * m / 2);
    const double v = 2 * s * s;
    all += v;
    weighted += m * v;
    if (m > p.limit) tail += v;
  }
  return 1 - (2 * all / b - 2 * (n - 2) * weighted / (n * b * b) - 4 * tail / (n * b));
}

Rational moment(unsigned s, const UniverseParams& p) {
  if (s == 0) return 1;
  if (s % 2 == 1) return 0;
  const Rational b = p.base();
  const Rational n = p.n;
  const int w2 = 2 * p.limit;
  return 2 * power_sum(1, w2, s) / b - 2 * (n - 2) * power_sum(1, w2, s + 1) / (n * b * b) -
         4 * power_sum(p.limit + 1, w2, s) / (n * b);
}

IndustryGain industry_gain(const Rational& cost, const UniverseParams& p) {
  if (cost < 0) throw ValidationError("transaction cost must be non-negative");
  const BigInt w = p.limit;
  IndustryGain g;
  g.total = cost * Rational(2 * w * (w + 1) * pow_base(p, p.n - 2) * (2 * p.n - 1), 3);
  g.mean_pl = -g.total / Rational(p.size());
  return g;
}

ExtremeGain extreme_gain_strategies(const UniverseParams& p) {
  ExtremeGain g;
  g.max_coefficient = BigInt(2) * p.limit * (p.n - 1);
  IntVector positions(p.n);
  for (int i = 0; i < p.n; ++i) positions[i] = (i % 2 == 0 ? 1 : -1) * std::int64_t(p.limit);
  positions[p.n - 1] = 0;
  const Strategy top = positions_to_strategy(PositionSeries(positions));
  g.max_witnesses = {top, -top};
  g.min_coefficient = 0;
  g.min_witnesses = {Strategy::do_nothing(p.n)};
  return g;
}

SliceSums slice_sums(int i, const UniverseParams& p) {
  check_index(i, p, "slice");
  const BigInt w = p.limit;
  const bool boundary = i == 1 || i == p.n;
  SliceSums s;
  s.sum = 0;
  if (boundary) {
    s.sum_abs = w * (w + 1) * pow_base(p, p.n - 2);
    s.sum_sq = w * (w + 1) * p.size() / 3;
  } else {
    s.sum_abs = 4 * w * (w + 1) * pow_base(p, p.n - 2) / 3;
    s.sum_sq = 2 * w * (w + 1) * p.size() / 3;
  }
  return s;
}

BigInt position_cov(int i, int l, const UniverseParams& p) {
  check_index(i, p, "position");
  check_index(l, p, "position");
  if (i != l || i == p.n) return 0;
  const BigInt w = p.limit;
  return w * (w + 1) * p.size() / 3;
}

BigInt action_cov(int i, int lag, const UniverseParams& p) {
  if (lag < 1) throw ValidationError("lag must be at least 1");
  check_index(i, p, "action");
  check_index(i + lag, p, "action");
  if (lag > 1) return 0;
  const BigInt w = p.limit;
  return -(w * (w + 1) * p.size() / 3);
}

char to_char(AbsCovCase c) { return char('A' + int(c)); }

AbsCovCase abs_cov_case(int i, int r, const UniverseParams& p) {
  check_index(i, p, "action");
  check_index(r, p, "action");
  if (i >= r) throw ValidationError("abs_action_cov needs i < r");
  const int n = p.n;
  if (n == 2) return AbsCovCase::A;
  if ((i == 1 && r == 2) || (i == n - 1 && r == n)) return AbsCovCase::B;
  if (i == 1 && r == n) return AbsCovCase::C;
  if (i == 1 || r == n) return AbsCovCase::D;
  return r == i + 1 ? AbsCovCase::E : AbsCovCase::F;
}

BigInt abs_action_cov(int i, int r, const UniverseParams& p) {
  const auto kind = abs_cov_case(i, r, p);
  const BigInt w = p.limit;
  const BigInt b = p.base();
  if (kind == AbsCovCase::A) return w * (w + 1) * b / 3;
  const BigInt sq = w * w * (w + 1) * (w + 1) * pow_base(p, p.n - 3);
  switch (kind) {
    case AbsCovCase::B: return 3 * sq / 2;
    case AbsCovCase::C: return sq;
    case AbsCovCase::D: return 4 * sq / 3;
    case AbsCovCase::E: return w * (28 * w * w * w + 56 * w * w + 27 * w - 1) * pow_base(p, p.n - 3) / 15;
    case AbsCovCase::F: return 16 * sq / 9;
    default: break;
  }
  throw std::logic_error("unreachable abs covariance case");
}

PlVariance pl_variance(std::span<const Decimal> prices, const Rational& cost, const UniverseParams& p,
                       const ContractSpec& spec) {
  if (prices.size() != std::size_t(p.n))
    throw StructuralError("pl_variance: expected " + std::to_string(p.n) + " prices");
  const auto ticks = spec.to_ticks(prices);
  BigInt sq_increments = 0;  // in ticks^2
  for (std::size_t i = 1; i < ticks.size(); ++i) {
    const BigInt d = ticks[i] - ticks[i - 1];
    sq_increments += d * d;
  }
  const Rational s(p.size());
  const Rational w = p.limit;
  const Rational n = p.n;
  const Rational tick_value = spec.tick_value().to_rational();
  PlVariance v;
  v.price_leg = tick_value * tick_value * w * (w + 1) * s / (3 * (s - 1)) * Rational(sq_increments);
  if (p.n == 2) {
    v.cost_leg = 2 * cost * cost * (w + 1) * (w * w + w + 1) / (3 * (2 * w + 1));
  } else {
    v.cost_leg = 4 * cost * cost * w * (w + 1) * rpow_base(p, p.n - 3) *
                 (6 * n * (2 * w * w + 2 * w + 1) - 11 * w * (w + 1) - 3) / (45 * (s - 1));
  }
  v.total = v.price_leg + v.cost_leg;
  return v;
}

bool pl_variance_bound_holds(std::span<const Decimal> prices, const UniverseParams& p, const ContractSpec& spec) {
  const auto v = pl_variance(prices, 0, p, spec);
  Rational sum = 0;
  for (Decimal d : prices) sum += d.to_rational();
  const Rational k = spec.point_value().to_rational();
  return v.price_leg <= 4 * k * k * Rational(p.limit) * p.limit * sum * sum;
}

}  // namespace poslim
