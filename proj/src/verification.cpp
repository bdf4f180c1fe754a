#include "poslim/verification.hpp"

#include "poslim/ingest.hpp"

#include <random>

namespace poslim {

namespace {

class RowBuilder {
 public:
  RowBuilder(std::vector<VerifyRow>& rows, const UniverseParams& p, std::string check)
      : rows_(rows), p_(p), check_(std::move(check)) {}
  ~RowBuilder() { rows_.push_back({p_.limit, p_.n, check_, detail_.empty(), detail_}); }

  template <typename A, typename B>
  void expect(const A& formula, const B& oracle, const std::string& where) {
    if (!detail_.empty() || formula == oracle) return;
    detail_ = where + ": formula " + to_string(formula) + " vs oracle " + to_string(oracle);
  }

 private:
  static std::string to_string(const BigInt& v) { return poslim::to_string(v); }
  static std::string to_string(const Rational& v) { return poslim::to_string(v); }

  std::vector<VerifyRow>& rows_;
  UniverseParams p_;
  std::string check_;
  std::string detail_;
};

std::string at(int i) { return "i=" + std::to_string(i); }
std::string at(int i, int l) { return "(" + std::to_string(i) + "," + std::to_string(l) + ")"; }

}  // namespace

std::vector<Decimal> random_grid_prices(std::size_t n, const ContractSpec& spec, std::uint64_t seed,
                                        std::int64_t start_ticks, std::int64_t max_step) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> step(-max_step, max_step);
  std::vector<Decimal> out;
  out.reserve(n);
  std::int64_t ticks = start_ticks;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(spec.price_of(ticks));
    ticks = std::max<std::int64_t>(1, ticks + step(rng));
  }
  return out;
}

std::vector<UniverseParams> verification_universes(const VerifyOptions& opt) {
  std::vector<UniverseParams> out;
  for (int w = 1; w <= opt.max_limit; ++w)
    for (int n = 2; n <= opt.max_n; ++n) {
      UniverseParams p(w, n);
      if (p.size() > opt.max_universe) break;
      out.push_back(p);
    }
  return out;
}

std::vector<VerifyRow> verify_universe(const UniverseParams& p, const VerifyOptions& opt) {
  SweepOptions sweep;
  sweep.budget = opt.max_universe;
  sweep.threads = opt.threads;
  const auto e = empirical_sums(p, sweep);
  std::vector<VerifyRow> rows;
  const int n = p.n;

  {
    RowBuilder r(rows, p, "universe_counts");
    const auto c = universe_counts(p);
    r.expect(c.strategies, BigInt(e.strategies), "strategies");
    r.expect(c.actions_total, BigInt(e.strategies * std::uint64_t(n)), "actions");
    r.expect(c.do_nothing, BigInt(e.count(0, p.limit)), "do_nothing");
    r.expect(c.transactions, BigInt(e.strategies * std::uint64_t(n) - std::uint64_t(e.count(0, p.limit))),
             "transactions");
  }
  {
    RowBuilder r(rows, p, "action_count");
    for (std::int64_t m = -2 * p.limit; m <= 2 * p.limit; ++m)
      r.expect(action_count(m, p), BigInt(e.count(m, p.limit)), "m=" + std::to_string(m));
  }
  {
    RowBuilder r(rows, p, "moments");
    const Rational total(BigInt(e.strategies) * n);
    for (unsigned s = 0; s <= 4; ++s) {
      BigInt acc = 0;
      for (std::int64_t m = -2 * p.limit; m <= 2 * p.limit; ++m) acc += ipow(BigInt(m), s) * e.count(m, p.limit);
      r.expect(moment(s, p), Rational(acc) / total, "s=" + std::to_string(s));
    }
  }
  {
    RowBuilder r(rows, p, "slice_sums");
    for (int i = 1; i <= n; ++i) {
      const auto s = slice_sums(i, p);
      r.expect(s.sum, BigInt(e.slice_sum[i - 1]), "sum " + at(i));
      r.expect(s.sum_abs, BigInt(e.slice_abs[i - 1]), "abs " + at(i));
      r.expect(s.sum_sq, BigInt(e.slice_sq[i - 1]), "sq " + at(i));
    }
  }
  {
    RowBuilder r(rows, p, "position_cov");
    for (int i = 1; i <= n; ++i)
      for (int l = 1; l <= n; ++l) r.expect(position_cov(i, l, p), BigInt(e.position_products(i - 1, l - 1)), at(i, l));
  }
  {
    RowBuilder r(rows, p, "action_cov");
    for (int i = 1; i < n; ++i)
      for (int lag = 1; i + lag <= n; ++lag)
        r.expect(action_cov(i, lag, p), BigInt(e.action_products(i - 1, i + lag - 1)), at(i, i + lag));
  }
  {
    RowBuilder r(rows, p, "abs_action_cov");
    for (int i = 1; i <= n; ++i)
      for (int l = i + 1; l <= n; ++l)
        r.expect(abs_action_cov(i, l, p), BigInt(e.abs_products(i - 1, l - 1)),
                 at(i, l) + " case " + to_char(abs_cov_case(i, l, p)));
  }
  {
    RowBuilder r(rows, p, "industry_gain");
    const auto g = industry_gain(1, p);
    r.expect(g.total, Rational(e.total_abs), "total");
    r.expect(g.mean_pl, Rational(-e.total_abs) / Rational(e.strategies), "mean");
    const auto x = extreme_gain_strategies(p);
    r.expect(x.max_coefficient, BigInt(e.max_abs), "max gain");
    // (W, -W) and (-W, W) are the only n = 2 maximizers as well.
    r.expect(BigInt(x.max_witnesses.size()), BigInt(e.max_abs_count), "max witnesses");
    r.expect(x.min_coefficient, BigInt(e.min_abs), "min gain");
    r.expect(BigInt(x.min_witnesses.size()), BigInt(e.min_abs_count), "min witnesses");
  }
  {
    RowBuilder r(rows, p, "pl_variance");
    const ContractSpec spec = preset_contract("ES");
    for (int g = 0; g < opt.price_grids; ++g) {
      const auto prices = random_grid_prices(std::size_t(n), spec, opt.seed + std::uint64_t(g) * 7919 +
                                                                        std::uint64_t(p.limit) * 131 + std::uint64_t(n));
      const Decimal cost = Decimal::from_raw(std::int64_t(1'000'000 + 1'230'000 * (g + 1)));
      const auto formula = pl_variance(prices, cost.to_rational(), p, spec);
      const auto oracle = empirical_pl_variance(prices, cost, p, spec, sweep);
      const std::string tag = "grid " + std::to_string(g);
      r.expect(formula.price_leg, oracle.price_leg, tag + " price leg");
      r.expect(formula.cost_leg, oracle.cost_leg, tag + " cost leg");
      r.expect(formula.total, oracle.total, tag + " total");
    }
  }
  return rows;
}

std::vector<VerifyRow> verify_all(const VerifyOptions& opt) {
  std::vector<VerifyRow> out;
  for (const auto& p : verification_universes(opt)) {
    auto rows = verify_universe(p, opt);
    out.insert(out.end(), rows.begin(), rows.end());
  }
  return out;
}

}  // namespace poslim
