#pragma once

#include "poslim/core_model.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace poslim {

/// Minimum move, in deltas, that beats a round trip at filtering cost fc.
std::int64_t birth_threshold(Decimal fc, const ContractSpec& spec);

/// The first count profits a one-contract optimal trade can take.
std::vector<Decimal> permitted_profit_grid(Decimal fc, Decimal cost, const ContractSpec& spec, std::size_t count);

/// Grid position of a profit, or empty when the profit is off the grid.
std::optional<std::int64_t> grid_index(Decimal pl, Decimal fc, Decimal cost, const ContractSpec& spec);

enum class OteType { Bote, Sote };
std::string to_string(OteType t);

/// One optimal trade of the unit-limit maximum-profit strategy.
struct OteRecord {
  OteType type = OteType::Bote;
  std::size_t start_index = 0;
  std::size_t birth_index = 0;
  std::size_t extreme_index = 0;  ///< best price so far; becomes the end once closed
  bool closed = false;

  Timestamp t_start, t_birth, t_extreme;
  Decimal p_start;
  Decimal p_birth;        ///< the threshold level the price had to reach
  Decimal p_birth_tick;   ///< price actually traded at the birth tick, beyond the level after a gap
  Decimal p_extreme;

  Decimal pl;  ///< one contract at the actual cost, start to extreme
  std::int64_t tick_count = 0;
  std::int64_t volume = 0;
  double duration = 0;  ///< seconds, start to extreme

  std::vector<double> a_increments;   ///< seconds between neighbouring ticks
  std::vector<Decimal> b_increments;  ///< price change between neighbouring ticks
  std::vector<Decimal> prices;
  std::vector<std::int64_t> volumes;

  std::optional<std::size_t> end_index() const { return closed ? std::optional(extreme_index) : std::nullopt; }
  std::optional<Timestamp> t_end() const { return closed ? std::optional(t_extreme) : std::nullopt; }
  std::optional<Decimal> p_end() const { return closed ? std::optional(p_extreme) : std::nullopt; }
  bool operator==(const OteRecord&) const = default;
};

/// Incremental zigzag over one session. Each tick either extends the current
/// extreme, does nothing, or retraces by the birth threshold and closes the
/// current record. Closed records never change afterwards.
class OteTracker {
 public:
  OteTracker(Decimal fc, Decimal cost, ContractSpec spec);

  /// Throws ValidationError for a tick earlier than the previous one.
  void push(const Tick& tick);

  std::int64_t threshold() const { return threshold_; }
  const std::vector<OteRecord>& closed() const { return closed_; }
  /// The open record without its sample vectors, which are filled on close.
  const std::optional<OteRecord>& current() const { return current_; }
  /// Closed records then the open one, if any, all with samples.
  std::vector<OteRecord> records() const;
  std::size_t ticks_seen() const { return ticks_.size(); }

 private:
  void open(OteType type, std::size_t start, std::size_t birth);
  void refresh(OteRecord& r, bool with_samples) const;

  Decimal fc_, cost_;
  ContractSpec spec_;
  std::int64_t threshold_;
  std::vector<Tick> ticks_;
  std::vector<std::int64_t> levels_;
  // Running extremes before the first record is born.
  std::size_t low_ = 0, high_ = 0;
  std::vector<OteRecord> closed_;
  std::optional<OteRecord> current_;
};

/// Batch form of OteTracker. Requires cost < fc.
std::vector<OteRecord> extract_otes(std::span<const Tick> ticks, Decimal fc, Decimal cost, const ContractSpec& spec);

enum class Scenario { ProfitGrew, Replaced, SessionEnded };
std::string to_string(Scenario s);

/// What happens to a born record over the ticks that follow its last observed tick.
Scenario classify_scenario(const OteRecord& current, std::span<const Tick> subsequent, Decimal fc,
                           const ContractSpec& spec);

}  // namespace poslim
