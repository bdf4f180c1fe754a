#pragma once

#include "poslim/combinatorics.hpp"
#include "poslim/enum_oracle.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace poslim {

struct VerifyOptions {
  std::uint64_t max_universe = 1'000'000;
  /// Upper bound on W. Without it n = 2 alone would need half a million sweeps.
  int max_limit = 12;
  int max_n = 64;
  int price_grids = 3;
  std::uint64_t seed = 20171231;
  unsigned threads = 1;
};

struct VerifyRow {
  int limit;
  int n;
  std::string check;
  bool pass;
  std::string detail;  ///< first mismatch, empty on success
};

/// All (W, n) with (2W+1)^(n-1) <= max_universe inside the configured bounds, ordered by W then n.
std::vector<UniverseParams> verification_universes(const VerifyOptions& opt);

/// Closed forms against a full sweep of one universe.
std::vector<VerifyRow> verify_universe(const UniverseParams& p, const VerifyOptions& opt);

std::vector<VerifyRow> verify_all(const VerifyOptions& opt);

/// A random walk on the delta grid, used for variance checks and tests.
std::vector<Decimal> random_grid_prices(std::size_t n, const ContractSpec& spec, std::uint64_t seed,
                                        std::int64_t start_ticks = 9000, std::int64_t max_step = 4);

}  // namespace poslim
