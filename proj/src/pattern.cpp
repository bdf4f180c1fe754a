#include "poslim/pattern.hpp"

#include "poslim/errors.hpp"

#include <cstdlib>

namespace poslim {

HeadAndShouldersMonitor::HeadAndShouldersMonitor(std::span<const OteRecord> chain, const ContractSpec& spec,
                                                 PatternTolerances tol)
    : spec_(spec), tol_(tol) {
  if (chain.size() < 6) throw ValidationError("head and shoulders needs six records");
  const auto last = chain.subspan(chain.size() - 6);
  for (std::size_t k = 0; k < 6; ++k) {
    const auto want = k % 2 == 0 ? OteType::Bote : OteType::Sote;
    if (last[k].type != want) throw ValidationError("records must alternate BOTE, SOTE ending with the current SOTE");
    if (k < 5 && !last[k].closed) throw ValidationError("only the last record may be open");
  }
  const auto& b1 = last[0];
  const auto& b3 = last[2];
  const auto& b5 = last[4];
  auto n = [&](Decimal p) { return spec_.to_ticks(p); };
  auto less = [&](Decimal a, Decimal b) { return n(b) - n(a) >= tol_.less_deltas; };
  auto equal = [&](Decimal a, Decimal b) { return std::abs(n(a) - n(b)) <= tol_.equal_deltas; };
  shape_ = less(b1.p_start, b3.p_start) && equal(b3.p_start, b5.p_start) && less(b1.p_extreme, b3.p_extreme) &&
           less(b5.p_extreme, b3.p_extreme);
  trigger_ = b5.p_birth;
}

bool HeadAndShouldersMonitor::on_price(Decimal price) const {
  return shape_ && std::abs(spec_.to_ticks(price) - spec_.to_ticks(trigger_)) <= tol_.equal_deltas;
}

bool head_and_shoulders(std::span<const OteRecord> chain, Decimal current_price, const ContractSpec& spec,
                        PatternTolerances tol) {
  return HeadAndShouldersMonitor(chain, spec, tol).on_price(current_price);
}

}  // namespace poslim
