#include "poslim/ote.hpp"

#include "poslim/errors.hpp"
#include "poslim/pl_engine.hpp"

#include <chrono>

namespace poslim {

std::int64_t birth_threshold(Decimal fc, const ContractSpec& spec) {
  if (fc < Decimal(0)) throw ValidationError("filtering cost must be non-negative");
  return 2 * fc.raw() / spec.tick_value().raw() + 1;
}

std::vector<Decimal> permitted_profit_grid(Decimal fc, Decimal cost, const ContractSpec& spec, std::size_t count) {
  if (cost >= fc) throw ValidationError("actual cost must be below the filtering cost");
  const Decimal first = spec.tick_value() * birth_threshold(fc, spec) - 2 * cost;
  std::vector<Decimal> grid;
  grid.reserve(count);
  for (std::size_t i = 0; i < count; ++i) grid.push_back(first + spec.tick_value() * std::int64_t(i));
  return grid;
}

std::optional<std::int64_t> grid_index(Decimal pl, Decimal fc, Decimal cost, const ContractSpec& spec) {
  const auto first = permitted_profit_grid(fc, cost, spec, 1).front();
  const auto offset = (pl - first).raw();
  const auto step = spec.tick_value().raw();
  if (offset < 0 || offset % step != 0) return std::nullopt;
  return offset / step;
}

std::string to_string(OteType t) { return t == OteType::Bote ? "BOTE" : "SOTE"; }

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::ProfitGrew: return "profit-grew";
    case Scenario::Replaced: return "replaced";
    case Scenario::SessionEnded: return "session-ended";
  }
  return "?";
}

OteTracker::OteTracker(Decimal fc, Decimal cost, ContractSpec spec)
    : fc_(fc), cost_(cost), spec_(std::move(spec)), threshold_(birth_threshold(fc, spec_)) {
  if (cost < Decimal(0)) throw ValidationError("transaction cost must be non-negative");
  if (cost >= fc) throw ValidationError("actual cost must be below the filtering cost");
}

void OteTracker::push(const Tick& tick) {
  if (!ticks_.empty() && tick.time < ticks_.back().time)
    throw ValidationError("ticks are not in time order at tick " + std::to_string(ticks_.size()));
  const auto level = spec_.to_ticks(tick.price);
  ticks_.push_back(tick);
  levels_.push_back(level);
  const std::size_t i = ticks_.size() - 1;

  if (!current_) {
    if (i == 0) return;
    if (level < levels_[low_]) low_ = i;
    if (level > levels_[high_]) high_ = i;
    if (level - levels_[low_] >= threshold_) open(OteType::Bote, low_, i);
    else if (levels_[high_] - level >= threshold_) open(OteType::Sote, high_, i);
    return;
  }

  OteRecord& r = *current_;
  const std::int64_t dir = r.type == OteType::Bote ? 1 : -1;
  const std::int64_t best = levels_[r.extreme_index];
  if (dir * (level - best) > 0) {
    r.extreme_index = i;
    refresh(r, false);
  } else if (dir * (best - level) >= threshold_) {
    const std::size_t pivot = r.extreme_index;
    r.closed = true;
    refresh(r, true);
    closed_.push_back(std::move(r));
    current_.reset();
    open(dir > 0 ? OteType::Sote : OteType::Bote, pivot, i);
  }
}

void OteTracker::open(OteType type, std::size_t start, std::size_t birth) {
  OteRecord r;
  r.type = type;
  r.start_index = start;
  r.birth_index = birth;
  r.extreme_index = birth;
  r.t_birth = ticks_[birth].time;
  const std::int64_t dir = type == OteType::Bote ? 1 : -1;
  r.p_birth = spec_.price_of(levels_[start] + dir * threshold_);
  r.p_birth_tick = ticks_[birth].price;
  refresh(r, false);
  current_ = std::move(r);
}

void OteTracker::refresh(OteRecord& r, bool with_samples) const {
  const auto s = r.start_index, e = r.extreme_index;
  r.t_start = ticks_[s].time;
  r.p_start = ticks_[s].price;
  r.t_extreme = ticks_[e].time;
  r.p_extreme = ticks_[e].price;
  r.pl = spec_.tick_value() * std::abs(levels_[e] - levels_[s]) - 2 * cost_;
  r.tick_count = std::int64_t(e - s + 1);
  r.duration = std::chrono::duration<double>(r.t_extreme - r.t_start).count();
  if (with_samples) {
    r.prices.clear();
    r.volumes.clear();
    r.a_increments.clear();
    r.b_increments.clear();
    r.volume = 0;
    for (std::size_t k = s; k <= e; ++k) {
      r.prices.push_back(ticks_[k].price);
      r.volumes.push_back(ticks_[k].size);
      r.volume += ticks_[k].size;
      if (k > s) {
        r.a_increments.push_back(std::chrono::duration<double>(ticks_[k].time - ticks_[k - 1].time).count());
        r.b_increments.push_back(ticks_[k].price - ticks_[k - 1].price);
      }
    }
  }
}

std::vector<OteRecord> OteTracker::records() const {
  auto out = closed_;
  if (current_) {
    out.push_back(*current_);
    refresh(out.back(), true);
  }
  return out;
}

std::vector<OteRecord> extract_otes(std::span<const Tick> ticks, Decimal fc, Decimal cost, const ContractSpec& spec) {
  OteTracker tracker(fc, cost, spec);
  for (const auto& t : ticks) tracker.push(t);
  return tracker.records();
}

Scenario classify_scenario(const OteRecord& current, std::span<const Tick> subsequent, Decimal fc,
                           const ContractSpec& spec) {
  const auto threshold = birth_threshold(fc, spec);
  const std::int64_t dir = current.type == OteType::Bote ? 1 : -1;
  const auto best = spec.to_ticks(current.p_extreme);
  for (const auto& t : subsequent) {
    const auto level = spec.to_ticks(t.price);
    if (dir * (level - best) >= 1) return Scenario::ProfitGrew;
    if (dir * (best - level) >= threshold) return Scenario::Replaced;
  }
  return Scenario::SessionEnded;
}

}  // namespace poslim
