#include "poslim/enum_oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>

namespace poslim {

namespace {

__extension__ typedef __int128 wide;
__extension__ typedef unsigned __int128 uwide;

BigInt to_big(wide v) {
  const bool neg = v < 0;
  uwide mag = neg ? static_cast<uwide>(-(v + 1)) + 1 : static_cast<uwide>(v);
  BigInt out = BigInt(std::uint64_t(mag >> 64));
  out <<= 64;
  out += std::uint64_t(mag);
  return neg ? BigInt(-out) : out;
}

/// Splits [0, size) into contiguous ranges, one per worker, and folds each
/// range with a fresh accumulator. Results come back in range order so any
/// merge that is associative gives the single-threaded answer.
template <typename Acc>
std::vector<Acc> partitioned(const UniverseParams& p, std::uint64_t size, unsigned threads,
                             const std::function<Acc()>& make,
                             const std::function<void(Acc&, const UniverseIterator&)>& visit) {
  threads = std::max(1u, std::min<unsigned>(threads, unsigned(std::max<std::uint64_t>(1, size / 4096))));
  std::vector<Acc> parts;
  parts.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) parts.push_back(make());
  auto work = [&](unsigned t) {
    const std::uint64_t lo = size * t / threads;
    const std::uint64_t hi = size * (t + 1) / threads;
    UniverseIterator it(p, lo);
    for (std::uint64_t k = lo; k < hi; ++k, it.next()) visit(parts[t], it);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  return parts;
}

}  // namespace

std::uint64_t checked_universe_size(const UniverseParams& p, std::uint64_t budget) {
  const BigInt size = p.size();
  if (size > budget) {
    const std::uint64_t required =
        size > BigInt(UINT64_MAX) ? UINT64_MAX : size.convert_to<std::uint64_t>();
    throw BudgetExceeded(required, budget);
  }
  return size.convert_to<std::uint64_t>();
}

PositionSeries decode(const BigInt& index, const UniverseParams& p) {
  if (index < 0 || index >= p.size()) throw ValidationError("universe index " + index.str() + " out of range");
  IntVector w = IntVector::Zero(p.n);
  BigInt rest = index;
  for (int i = 0; i < p.n - 1; ++i) {
    w[i] = (rest % p.base()).convert_to<std::int64_t>() - p.limit;
    rest /= p.base();
  }
  return PositionSeries(std::move(w));
}

UniverseIterator::UniverseIterator(const UniverseParams& p, std::uint64_t start)
    : params_(p), cursor_(start), end_(p.size() > BigInt(UINT64_MAX) ? UINT64_MAX : p.size().convert_to<std::uint64_t>()) {
  if (cursor_ < end_) {
    positions_ = decode(BigInt(cursor_), p).positions();
  } else {
    positions_ = IntVector::Zero(p.n);
  }
  actions_.resize(p.n);
  actions_[0] = positions_[0];
  for (int i = 1; i < p.n; ++i) actions_[i] = positions_[i] - positions_[i - 1];
}

void UniverseIterator::next() {
  ++cursor_;
  if (cursor_ >= end_) return;
  const std::int64_t w = params_.limit;
  int i = 0;
  while (positions_[i] == w) {
    positions_[i] = -w;
    ++i;
  }
  ++positions_[i];
  // Only coordinates 0..i+1 changed actions.
  const int last = std::min(i + 1, params_.n - 1);
  actions_[0] = positions_[0];
  for (int j = 1; j <= last; ++j) actions_[j] = positions_[j] - positions_[j - 1];
}

EmpiricalSums empirical_sums(const UniverseParams& p, const SweepOptions& opt) {
  const auto size = checked_universe_size(p, opt.budget);
  const int n = p.n;
  auto make = [&] {
    EmpiricalSums s;
    s.action_counts.assign(std::size_t(4 * p.limit + 1), 0);
    s.slice_sum = s.slice_abs = s.slice_sq = IntVector::Zero(n);
    s.position_products = s.action_products = s.abs_products = IntMatrix::Zero(n, n);
    s.max_abs = -1;
    s.min_abs = INT64_MAX;
    return s;
  };
  auto visit = [&](EmpiricalSums& s, const UniverseIterator& it) {
    const auto& w = it.positions();
    const auto& u = it.actions();
    ++s.strategies;
    std::int64_t gain = 0;
    for (int i = 0; i < n; ++i) {
      const std::int64_t a = u[i];
      const std::int64_t aa = std::abs(a);
      ++s.action_counts[std::size_t(a + 2 * p.limit)];
      s.slice_sum[i] += a;
      s.slice_abs[i] += aa;
      s.slice_sq[i] += a * a;
      gain += aa;
      for (int l = i; l < n; ++l) {
        s.position_products(i, l) += w[i] * w[l];
        s.action_products(i, l) += a * u[l];
        s.abs_products(i, l) += aa * std::abs(u[l]);
      }
    }
    s.total_abs += gain;
    if (gain > s.max_abs) {
      s.max_abs = gain;
      s.max_abs_count = 0;
    }
    if (gain == s.max_abs) ++s.max_abs_count;
    if (gain < s.min_abs) {
      s.min_abs = gain;
      s.min_abs_count = 0;
    }
    if (gain == s.min_abs) ++s.min_abs_count;
  };
  auto parts = partitioned<EmpiricalSums>(p, size, opt.threads, make, visit);
  EmpiricalSums out = std::move(parts.front());
  for (std::size_t k = 1; k < parts.size(); ++k) {
    const auto& s = parts[k];
    out.strategies += s.strategies;
    for (std::size_t m = 0; m < out.action_counts.size(); ++m) out.action_counts[m] += s.action_counts[m];
    out.slice_sum += s.slice_sum;
    out.slice_abs += s.slice_abs;
    out.slice_sq += s.slice_sq;
    out.position_products += s.position_products;
    out.action_products += s.action_products;
    out.abs_products += s.abs_products;
    out.total_abs += s.total_abs;
    if (s.max_abs > out.max_abs) {
      out.max_abs = s.max_abs;
      out.max_abs_count = s.max_abs_count;
    } else if (s.max_abs == out.max_abs) {
      out.max_abs_count += s.max_abs_count;
    }
    if (s.min_abs < out.min_abs) {
      out.min_abs = s.min_abs;
      out.min_abs_count = s.min_abs_count;
    } else if (s.min_abs == out.min_abs) {
      out.min_abs_count += s.min_abs_count;
    }
  }
  // Mirror the upper triangles.
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < i; ++l) {
      out.position_products(i, l) = out.position_products(l, i);
      out.action_products(i, l) = out.action_products(l, i);
      out.abs_products(i, l) = out.abs_products(l, i);
    }
  return out;
}

ActionDistribution empirical_action_counts(const UniverseParams& p, const SweepOptions& opt) {
  const auto sums = empirical_sums(p, opt);
  ActionDistribution d;
  d.limit = p.limit;
  d.total = 0;
  for (std::int64_t m = -2 * p.limit; m <= 2 * p.limit; ++m) {
    d.counts[m] = sums.count(m, p.limit);
    d.total += d.counts[m];
  }
  return d;
}

namespace {

struct LegMoments {
  wide sum_price = 0, sum_price_sq = 0;  // price leg in units of k*delta
  wide sum_cost = 0, sum_cost_sq = 0;    // cost leg in units of C
  wide cross = 0;
};

LegMoments leg_moments(std::span<const Decimal> prices, const UniverseParams& p, const ContractSpec& spec,
                       const SweepOptions& opt) {
  if (prices.size() != std::size_t(p.n)) throw StructuralError("price chain length differs from n");
  const auto size = checked_universe_size(p, opt.budget);
  const auto ticks = spec.to_ticks(prices);
  const auto last = ticks.back();
  auto make = [] { return LegMoments{}; };
  auto visit = [&](LegMoments& m, const UniverseIterator& it) {
    const auto& u = it.actions();
    std::int64_t price = 0, cost = 0, net = 0;
    for (int i = 0; i < p.n; ++i) {
      price += u[i] * (last - ticks[std::size_t(i)]);
      cost -= std::abs(u[i]);
      net += u[i];
    }
    cost -= std::abs(net);
    m.sum_price += price;
    m.sum_price_sq += wide(price) * price;
    m.sum_cost += cost;
    m.sum_cost_sq += wide(cost) * cost;
    m.cross += wide(price) * cost;
  };
  auto parts = partitioned<LegMoments>(p, size, opt.threads, make, visit);
  LegMoments out;
  for (const auto& m : parts) {
    out.sum_price += m.sum_price;
    out.sum_price_sq += m.sum_price_sq;
    out.sum_cost += m.sum_cost;
    out.sum_cost_sq += m.sum_cost_sq;
    out.cross += m.cross;
  }
  return out;
}

Rational sample_variance(wide sum, wide sum_sq, const Rational& count) {
  const Rational s = Rational(to_big(sum));
  return (Rational(to_big(sum_sq)) - s * s / count) / (count - 1);
}

}  // namespace

PlVariance empirical_pl_variance(std::span<const Decimal> prices, Decimal cost, const UniverseParams& p,
                                 const ContractSpec& spec, const SweepOptions& opt) {
  const auto m = leg_moments(prices, p, spec, opt);
  const Rational count(p.size());
  const Rational kd = spec.tick_value().to_rational();
  const Rational c = cost.to_rational();
  PlVariance v;
  v.price_leg = kd * kd * sample_variance(m.sum_price, m.sum_price_sq, count);
  v.cost_leg = c * c * sample_variance(m.sum_cost, m.sum_cost_sq, count);
  // Variance of the sum, from the same sweep, so additivity is a checked fact.
  const Rational s_total = kd * Rational(to_big(m.sum_price)) + c * Rational(to_big(m.sum_cost));
  const Rational sq_total = kd * kd * Rational(to_big(m.sum_price_sq)) + 2 * kd * c * Rational(to_big(m.cross)) +
                            c * c * Rational(to_big(m.sum_cost_sq));
  v.total = (sq_total - s_total * s_total / count) / (count - 1);
  return v;
}

Rational empirical_leg_cross_sum(std::span<const Decimal> prices, Decimal cost, const UniverseParams& p,
                                 const ContractSpec& spec, const SweepOptions& opt) {
  const auto m = leg_moments(prices, p, spec, opt);
  return spec.tick_value().to_rational() * cost.to_rational() * Rational(to_big(m.cross));
}

namespace {

ExtremeSearch extreme_search(std::span<const Decimal> prices, const CostModel& costs, const UniverseParams& p,
                             const ContractSpec& spec, const SweepOptions& opt, bool maximize) {
  if (prices.size() != std::size_t(p.n)) throw StructuralError("price chain length differs from n");
  const auto size = checked_universe_size(p, opt.budget);
  const auto ticks = spec.to_ticks(prices);
  const auto c = costs.resolve(prices.size());
  const auto tick_value = spec.tick_value();
  struct Best {
    std::optional<Decimal> pl;
    std::uint64_t count = 0;
    std::vector<Strategy> witnesses;
  };
  auto make = [] { return Best{}; };
  auto visit = [&](Best& b, const UniverseIterator& it) {
    const auto& u = it.actions();
    std::int64_t moved = 0;
    Decimal paid;
    for (int i = 0; i < p.n; ++i) {
      moved += u[i] * (ticks.back() - ticks[std::size_t(i)]);
      paid += c[std::size_t(i)] * std::abs(u[i]);
    }
    const Decimal value = tick_value * moved - paid;
    if (!b.pl || (maximize ? value > *b.pl : value < *b.pl)) {
      b.pl = value;
      b.count = 0;
      b.witnesses.clear();
    }
    if (value == *b.pl) {
      ++b.count;
      if (b.witnesses.size() < opt.max_witnesses) b.witnesses.emplace_back(u);
    }
  };
  auto parts = partitioned<Best>(p, size, opt.threads, make, visit);
  Best out;
  for (auto& b : parts) {
    if (!b.pl) continue;
    if (!out.pl || (maximize ? *b.pl > *out.pl : *b.pl < *out.pl)) {
      out = std::move(b);
    } else if (*b.pl == *out.pl) {
      out.count += b.count;
      for (auto& s : b.witnesses)
        if (out.witnesses.size() < opt.max_witnesses) out.witnesses.push_back(std::move(s));
    }
  }
  return {out.pl.value_or(Decimal{}), out.count, std::move(out.witnesses)};
}

}  // namespace

ExtremeSearch brute_force_mps(std::span<const Decimal> prices, const CostModel& costs, const UniverseParams& p,
                              const ContractSpec& spec, const SweepOptions& opt) {
  return extreme_search(prices, costs, p, spec, opt, true);
}

ExtremeSearch brute_force_mls(std::span<const Decimal> prices, const CostModel& costs, const UniverseParams& p,
                              const ContractSpec& spec, const SweepOptions& opt) {
  return extreme_search(prices, costs, p, spec, opt, false);
}

}  // namespace poslim
