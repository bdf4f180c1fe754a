#pragma once

#include "poslim/ote.hpp"

#include <span>

namespace poslim {

/// Comparison slack in deltas. Prices are "equal" within equal_deltas, and
/// a is "less" than b when b exceeds a by at least less_deltas.
struct PatternTolerances {
  std::int64_t equal_deltas = 0;
  std::int64_t less_deltas = 1;
};

/// Head and shoulders over the last six records B1,S2,B3,S4,B5,S6, with S6
/// the current record. Every clause that only involves finished records is
/// evaluated once in the constructor; on_price then costs one comparison.
class HeadAndShouldersMonitor {
 public:
  HeadAndShouldersMonitor(std::span<const OteRecord> chain, const ContractSpec& spec, PatternTolerances tol = {});

  bool shape_holds() const { return shape_; }
  bool on_price(Decimal price) const;
  Decimal trigger_price() const { return trigger_; }

 private:
  ContractSpec spec_;
  PatternTolerances tol_;
  bool shape_ = false;
  Decimal trigger_;
};

/// Throws ValidationError for a chain shorter than six or with the wrong alternation.
bool head_and_shoulders(std::span<const OteRecord> chain, Decimal current_price, const ContractSpec& spec,
                        PatternTolerances tol = {});

}  // namespace poslim
