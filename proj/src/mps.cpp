#include "poslim/mps.hpp"

#include "poslim/errors.hpp"

#include <cstdlib>
#include <optional>

namespace poslim {

namespace {

/// Objective: more PL first, then fewer transactions.
struct Score {
  std::int64_t pl_raw = 0;
  std::int64_t transactions = 0;

  bool better_than(const Score& o) const {
    if (pl_raw != o.pl_raw) return pl_raw > o.pl_raw;
    return transactions < o.transactions;
  }
  bool operator==(const Score&) const = default;
};

}  // namespace

MpsResult mps0(std::span<const Decimal> prices, const CostModel& costs, std::int64_t limit, const ContractSpec& spec) {
  if (prices.empty()) throw StructuralError("mps0 needs at least one price");
  if (limit < 1) throw ValidationError("position limit must be at least 1");
  const auto ticks = spec.to_ticks(prices);
  const auto c = costs.resolve(prices.size());
  const std::size_t n = ticks.size();
  const std::int64_t states = 2 * limit + 1;
  const std::int64_t tick_value = spec.tick_value().raw();

  // togo[i][w]: best score from holding w after tick i to the end, the last
  // tick forcing the position back to zero.
  auto idx = [&](std::int64_t w) { return std::size_t(w + limit); };
  std::vector<std::vector<Score>> togo(n, std::vector<Score>(std::size_t(states)));
  for (std::int64_t w = -limit; w <= limit; ++w)
    togo[n - 1][idx(w)] = {-c[n - 1].raw() * std::abs(w), w != 0};
  auto step = [&](std::size_t i, std::int64_t held, std::int64_t next) {
    // Moving from `held` (after tick i-1) to `next` at tick i, then on.
    const std::int64_t carry = held * (ticks[i] - ticks[i - 1]) * tick_value;
    const Score& rest = togo[i][idx(next)];
    return Score{carry - c[i].raw() * std::abs(next - held) + rest.pl_raw,
                 rest.transactions + (next != held)};
  };
  for (std::size_t i = n - 1; i-- > 0;) {
    for (std::int64_t held = -limit; held <= limit; ++held) {
      std::optional<Score> best;
      for (std::int64_t next = -limit; next <= limit; ++next) {
        if (i + 1 == n - 1 && next != 0) continue;
        const Score s = step(i + 1, held, next);
        if (!best || s.better_than(*best)) best = s;
      }
      togo[i][idx(held)] = *best;
    }
  }

  // Forward pass. At tick 0 the position moves from zero to w at cost c[0]|w|.
  IntVector positions(static_cast<Eigen::Index>(n));
  auto choose = [&](auto&& score_of, std::int64_t held, bool last) {
    std::optional<Score> best;
    std::int64_t pick = held;
    // Ties go to transacting now, then to the smallest target position.
    for (int pass = 0; pass < 2; ++pass)
      for (std::int64_t next = -limit; next <= limit; ++next) {
        if (last && next != 0) continue;
        if ((pass == 0) == (next == held)) continue;
        const Score s = score_of(next);
        if (!best || s.better_than(*best)) {
          best = s;
          pick = next;
        }
      }
    return pick;
  };
  std::int64_t held = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t next;
    if (i == 0) {
      next = choose(
          [&](std::int64_t w) {
            const Score& rest = togo[0][idx(w)];
            return Score{-c[0].raw() * std::abs(w) + rest.pl_raw, rest.transactions + (w != 0)};
          },
          0, n == 1);
    } else {
      next = choose([&](std::int64_t w) { return step(i, held, w); }, held, i == n - 1);
    }
    positions[Eigen::Index(i)] = held = next;
  }

  MpsResult out;
  out.strategy = positions_to_strategy(PositionSeries(positions));
  // n == 1: the only member is doing nothing.
  std::int64_t pl_raw = 0;
  held = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t w = positions[Eigen::Index(i)];
    if (i > 0) pl_raw += held * (ticks[i] - ticks[i - 1]) * tick_value;
    pl_raw -= c[i].raw() * std::abs(w - held);
    out.transactions += w != held;
    held = w;
  }
  out.pl = Decimal::from_raw(pl_raw);
  out.trades = trades_of(out.strategy);
  return out;
}

std::vector<Trade> trades_of(const Strategy& s) {
  std::vector<Trade> out;
  std::int64_t held = 0;
  std::size_t since = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const std::int64_t next = held + s[i];
    if (next == held) continue;
    if (held != 0) out.push_back({since, std::size_t(i), held});
    held = next;
    since = std::size_t(i);
  }
  if (held != 0) out.push_back({since, std::size_t(s.size() - 1), held});
  return out;
}

}  // namespace poslim
