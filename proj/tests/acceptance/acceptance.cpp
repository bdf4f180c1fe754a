// One PASS/FAIL line per acceptance criterion. Exits nonzero if any fails.

#include "oracle.hpp"
#include "ote_properties.hpp"

#include "poslim/combinatorics.hpp"
#include "poslim/enum_oracle.hpp"
#include "poslim/ingest.hpp"
#include "poslim/magma.hpp"
#include "poslim/mps.hpp"
#include "poslim/ote.hpp"
#include "poslim/ote_stats.hpp"
#include "poslim/pl_engine.hpp"
#include "poslim/verification.hpp"
#include "poslim/vector_space.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace poslim;

namespace {

const ContractSpec es("ES", 50, Decimal::parse("0.25"));

/// Collects mismatches for one criterion; the first few end up in the report.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++total_;
    if (!ok) failures_.push_back(what);
  }
  void note(std::string text) { notes_.push_back(std::move(text)); }
  bool passed() const { return failures_.empty(); }
  std::string summary() const {
    std::ostringstream os;
    if (passed()) {
      os << total_ << " checks";
    } else {
      os << failures_.size() << "/" << total_ << " checks failed: ";
      for (std::size_t i = 0; i < failures_.size() && i < 4; ++i) os << (i ? "; " : "") << failures_[i];
      if (failures_.size() > 4) os << "; ...";
    }
    for (const auto& n : notes_) os << "; " << n;
    return os.str();
  }

 private:
  std::size_t total_ = 0;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::string str(const BigInt& v) { return v.str(); }
std::string str(const Rational& v) { return v.str(); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

//--------------------------------------------------------------------------

void worked_pl(Check& c) {
  const std::vector<Decimal> p{Decimal::parse("2369.50"), Decimal::parse("2369.75"), Decimal::parse("2370.00")};
  const auto r = pl(p, Strategy{1, 0, -1}, CostModel::constant(5), es);
  c.expect(r.total == Decimal(15), "pl = " + r.total.exact_str(2));
  c.note("pl = " + r.total.exact_str(2));
}

void action_goldens(Check& c) {
  const std::int64_t want[] = {2, 18, 154, 1274, 10290, 81634};
  for (int n = 2; n <= 7; ++n) {
    const auto got = action_count(-3, {3, n});
    c.expect(got == want[n - 2], "W=3 n=" + std::to_string(n) + " gives " + str(got));
  }
  const std::int64_t profile[] = {1, 8, 9, 8, 1};
  for (int m = -2; m <= 2; ++m)
    c.expect(action_count(m, {1, 3}) == profile[m + 2], "W=1 n=3 m=" + std::to_string(m));
}

void oracle_matrix(Check& c) {
  VerifyOptions opt;
  opt.threads = 1;
  const auto universes = verification_universes(opt);
  std::set<std::pair<int, int>> covered;
  for (const auto& p : universes) covered.insert({p.limit, p.n});
  const std::pair<int, int> mandated[] = {{1, 13}, {2, 9}, {3, 8}, {4, 7}};
  for (const auto& [limit, top] : mandated)
    for (int n = 2; n <= top; ++n)
      c.expect(covered.count({limit, n}) == 1, "W=" + std::to_string(limit) + " n=" + std::to_string(n) + " not swept");

  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = verify_all(opt);
  const double elapsed = seconds_since(t0);
  std::set<std::string> kinds;
  for (const auto& r : rows) {
    kinds.insert(r.check);
    c.expect(r.pass, "W=" + std::to_string(r.limit) + " n=" + std::to_string(r.n) + " " + r.check + ": " + r.detail);
  }
  c.expect(elapsed < 300, "single-threaded sweep took " + std::to_string(elapsed) + " s");
  c.note(std::to_string(universes.size()) + " universes, " + std::to_string(rows.size()) + " comparisons over " +
         std::to_string(kinds.size()) + " quantities in " + std::to_string(int(elapsed * 1000)) + " ms");
}

void covariance_goldens(Check& c) {
  const UniverseParams four(1, 4);
  const std::pair<std::pair<int, int>, std::int64_t> small[] = {
      {{1, 2}, 18}, {{1, 3}, 16}, {{1, 4}, 12}, {{2, 3}, 22}};
  for (const auto& [ir, v] : small)
    c.expect(abs_action_cov(ir.first, ir.second, four) == v, "n=4 W=1 entry " + std::to_string(v));
  const UniverseParams seven(3, 7);
  const std::pair<std::pair<int, int>, std::int64_t> big[] = {
      {{1, 2}, 518616}, {{1, 3}, 460992}, {{1, 7}, 345744}, {{2, 3}, 643468}, {{2, 4}, 614656}};
  for (const auto& [ir, v] : big) {
    const auto got = abs_action_cov(ir.first, ir.second, seven);
    c.expect(got == v, "n=7 W=3 (" + std::to_string(ir.first) + "," + std::to_string(ir.second) + ") gives " + str(got));
  }
  const std::int64_t row[] = {2, 10, 28, 60, 110, 182, 280, 408, 570, 770};
  for (int limit = 1; limit <= 10; ++limit)
    c.expect(abs_action_cov(1, 2, {limit, 2}) == row[limit - 1], "W row at W=" + std::to_string(limit));
  // The n=4 matrix against a sweep.
  const auto sums = empirical_sums(four);
  c.expect(sums.abs_products(0, 1) == 18 && sums.abs_products(0, 2) == 16 && sums.abs_products(0, 3) == 12 &&
               sums.abs_products(1, 2) == 22,
           "n=4 sweep disagrees");
}

void distribution_calculus(Check& c) {
  int pairs = 0;
  double worst = 0;
  for (int limit = 1; limit <= 4; ++limit)
    for (int n = 2; n <= 6; ++n, ++pairs) {
      const UniverseParams p(limit, n);
      const std::string tag = "W=" + std::to_string(limit) + " n=" + std::to_string(n);
      const auto d = action_distribution(p);
      Rational mass = 0;
      for (const auto& [m, count] : d.counts) mass += d.pmf(m);
      c.expect(mass == 1, tag + " mass " + str(mass));
      c.expect(char_fn(0, p) == 1.0, tag + " char_fn(0) != 1");
      // Central difference with one Richardson step; char_fn is even so f(-h) = f(h).
      auto second = [&](double h) { return 2 * (1 - char_fn(h, p)) / (h * h); };
      const double h = 1e-3;
      const double fd = (4 * second(h) - second(2 * h)) / 3;
      const double err = std::abs(fd - to_double(moment(2, p)));
      worst = std::max(worst, err);
      c.expect(err < 1e-8, tag + " finite difference off by " + std::to_string(err));
      for (unsigned s = 1; s <= 9; s += 2) c.expect(moment(s, p) == 0, tag + " odd moment");
      if (n >= 3) c.expect(d.jump_count() == 4 * limit + 1, tag + " has " + std::to_string(d.jump_count()) + " jumps");
      else c.expect(d.jump_count() == 2 * limit + 1, tag + " two-tick law");
      // Second moment against the sweep.
      if (p.size() <= 100000) {
        const auto e = empirical_action_counts(p);
        Rational m2 = 0;
        for (const auto& [m, count] : e.counts) m2 += Rational(count * m * m);
        m2 /= Rational(e.total);
        c.expect(m2 == moment(2, p), tag + " second moment " + str(m2) + " vs " + str(moment(2, p)));
      }
    }
  c.expect(pairs == 20, "pair count");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1e", worst);
  c.note(std::to_string(pairs) + " (W,n) pairs, worst finite-difference error " + buf +
         ", 4W+1 jumps for n>=3 (n=2 has 2W+1)");
}

void mps_optimality(Check& c) {
  std::mt19937_64 rng(20170410);
  std::uniform_int_distribution<int> len(2, 8), lim(1, 2), step(1, 6);
  std::uniform_int_distribution<std::int64_t> cost_cents(0, 3000);
  const auto t0 = std::chrono::steady_clock::now();
  const int instances = 250;
  for (int trial = 0; trial < instances; ++trial) {
    const int n = len(rng), limit = lim(rng);
    const auto prices = oracle::to_prices(oracle::random_walk(rng, std::size_t(n), 9000, step(rng)), es);
    const auto costs = CostModel::constant(Decimal::from_raw(cost_cents(rng) * 100));
    const auto r = mps0(prices, costs, limit, es);
    const auto b = brute_force_mps(prices, costs, {limit, n}, es);
    const std::string tag = "instance " + std::to_string(trial);
    c.expect(r.pl == b.pl, tag + ": " + r.pl.exact_str(2) + " vs " + b.pl.exact_str(2));
    c.expect(validate_membership(r.strategy, limit), tag + " strategy outside the universe");
    c.expect(pl(prices, r.strategy, costs, es).total == r.pl, tag + " strategy does not earn the reported pl");
  }
  const double elapsed = seconds_since(t0);
  c.expect(elapsed < 30, "took " + std::to_string(elapsed) + " s");
  c.note(std::to_string(instances) + " instances in " + std::to_string(int(elapsed * 1000)) + " ms");
}

void magma_suite(Check& c) {
  for (std::int64_t w = 1; w <= 5; ++w) {
    const std::string tag = "W=" + std::to_string(w);
    std::int64_t clamped = 0, ordinary = 0, undefined = 0;
    const CappedInt zero(0, w);
    for (std::int64_t a = -w; a <= w; ++a) {
      const CappedInt ca(a, w);
      c.expect(oplus(ca, zero) == ca, tag + " identity");
      std::int64_t inverses = 0;
      for (std::int64_t b = -w; b <= w; ++b) {
        const CappedInt cb(b, w);
        const auto s = oplus(ca, cb);
        c.expect(s == oplus(cb, ca), tag + " commutativity");
        c.expect(-s == oplus(-ca, -cb), tag + " antisymmetry");
        c.expect(s.value() == std::clamp(a + b, -w, w), tag + " clamp");
        inverses += s == zero;
        (std::abs(a + b) > w ? clamped : ordinary) += 1;
        undefined += !ominus(ca, cb).has_value();
      }
      c.expect(inverses == 1, tag + " unique inverse");
    }
    c.expect(clamped == w * (w + 1), tag + " clamp count");
    c.expect(ordinary == 3 * w * w + 3 * w + 1, tag + " ordinary count");
    c.expect(undefined == w * (w + 1), tag + " undefined subtraction count");
    const auto st = cayley_stats(w);
    c.expect(st.clamped == clamped && st.ordinary == ordinary && st.undefined_sub == undefined, tag + " table stats");
    const auto x = find_non_associative(w);
    c.expect(x.has_value(), tag + " no associativity witness");
    if (x) {
      const CappedInt a(x->a, w), b(x->b, w), d(x->c, w);
      c.expect(oplus(oplus(a, b), d) != oplus(a, oplus(b, d)), tag + " witness is associative");
    }
  }
  std::int64_t pairs = 0;
  for (int n = 2; n <= 4; ++n) {
    const auto all = oracle::members(1, n);
    for (const auto& x : all)
      for (const auto& y : all) {
        oracle::Actions via(x.size());
        std::int64_t wx = 0, wy = 0, prev = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
          wx += x[i];
          wy += y[i];
          const std::int64_t w = std::clamp<std::int64_t>(wx + wy, -1, 1);
          via[i] = w - prev;
          prev = w;
        }
        c.expect(strategies_compose(oracle::strategy(x), oracle::strategy(y), 1) == oracle::strategy(via),
                 "composition n=" + std::to_string(n));
        ++pairs;
      }
  }
  c.note("W=1..5 exhaustive, " + std::to_string(pairs) + " composed pairs");
}

void vector_suite(Check& c) {
  for (int n = 2; n <= 8; ++n) {
    c.expect(rank_of_universe(n) == n - 1, "rank at n=" + std::to_string(n));
    const auto r = rank_report(n, 1);
    c.expect(r.swept && r.rank == n - 1, "swept rank at n=" + std::to_string(n));
  }
  const auto five = max_orthogonal_subset(5), seven = max_orthogonal_subset(7);
  c.expect(five.size == 3, "n=5 orthogonal subset " + std::to_string(five.size));
  c.expect(seven.size == 5, "n=7 orthogonal subset " + std::to_string(seven.size));

  // Flat prices earn nothing before costs for every member of small universes.
  std::uint64_t flat = 0;
  for (int limit = 1; limit <= 2; ++limit)
    for (int n = 2; n <= 7; ++n) {
      const std::vector<Decimal> prices(std::size_t(n), Decimal::parse("2350.25"));
      for (UniverseIterator it({limit, n}); !it.done(); it.next(), ++flat)
        if (pl(prices, Strategy(it.actions()), CostModel::constant(0), es).total != Decimal(0)) {
          c.expect(false, "flat price pl nonzero at W=" + std::to_string(limit) + " n=" + std::to_string(n));
          break;
        }
    }
  c.expect(flat > 0, "no strategies enumerated");

  // The stated relation table, checked literally for every n where both families exist.
  using K = FamilyKind;
  auto perpendicular = [](K a, K b, int n) -> std::optional<bool> {
    try {
      const auto fa = gen_family(a, n), fb = gen_family(b, n);
      for (const auto& x : fa.members)
        for (const auto& y : fb.members)
          if (x.actions().dot(y.actions()) != 0) return false;
      return true;
    } catch (const ValidationError&) {
      return std::nullopt;
    }
  };
  struct Relation {
    K a, b;
    bool perpendicular;
  };
  const Relation table[] = {{K::Eta, K::Lambda, true},  {K::Eta, K::Nu, true},     {K::Theta, K::Eta, true},
                            {K::Theta, K::Lambda, true}, {K::Lambda, K::Nu, false}, {K::Theta, K::Nu, false}};
  for (const auto& rel : table) {
    std::string bad;
    for (int n = 2; n <= 12; ++n) {
      const auto r = perpendicular(rel.a, rel.b, n);
      if (r && *r != rel.perpendicular) bad += (bad.empty() ? "" : ",") + std::to_string(n);
    }
    c.expect(bad.empty(), to_string(rel.a) + (rel.perpendicular ? " perp " : " not perp ") + to_string(rel.b) +
                              " is false at n=" + bad);
  }
  c.note("rank n-1 for n=2..8, subsets 3 and 5, " + std::to_string(flat) + " flat-price strategies");
}

void thresholds(Check& c) {
  const std::pair<const char*, std::int64_t> cases[] = {{"100", 17}, {"74.99", 12}, {"0", 1}};
  for (const auto& [fc, want] : cases) {
    const auto got = birth_threshold(Decimal::parse(fc), es);
    c.expect(got == want, std::string("FC=") + fc + " gives " + std::to_string(got));
  }
}

void permitted_grid(Check& c) {
  const Decimal fc = Decimal::parse("49.99"), cost = Decimal::parse("4.68");
  const auto grid = permitted_profit_grid(fc, cost, es, 5);
  c.expect(grid.front() == Decimal::parse("90.64"), "grid starts at " + grid.front().exact_str(2));
  for (std::size_t i = 1; i < grid.size(); ++i)
    c.expect(grid[i] - grid[i - 1] == Decimal::parse("12.50"), "grid spacing");
  std::mt19937_64 rng(99);
  std::size_t profits = 0;
  for (int s = 0; s < 20; ++s) {
    const auto ticks = oracle::synthetic_session(rng, 5000, es);
    for (const auto& r : extract_otes(ticks, fc, cost, es)) {
      ++profits;
      c.expect(grid_index(r.pl, fc, cost, es).has_value(), "profit " + r.pl.exact_str(2) + " off the grid");
    }
  }
  c.note("90.64 + 12.50 i; " + std::to_string(profits) + " synthetic profits on the grid");
}

void stats_goldens(Check& c) {
  auto at = [](const char* date, const char* time, const char* price) {
    return Tick{parse_timestamp(date, time), Decimal::parse(price), 1, {}};
  };
  const std::vector<Tick> ticks{
      at("2017-04-09", "17:02:54", "2350.75"), at("2017-04-09", "20:04:00", "2359.00"),
      at("2017-04-10", "05:03:55", "2349.75"), at("2017-04-10", "09:35:48", "2363.25"),
      at("2017-04-10", "11:14:41", "2347.50"), at("2017-04-10", "12:37:14", "2360.00"),
      at("2017-04-10", "13:04:45", "2354.50"), at("2017-04-10", "14:06:28", "2360.25"),
      at("2017-04-10", "15:00:07", "2351.00")};
  const auto records = extract_otes(ticks, Decimal(100), Decimal::parse("4.68"), es);
  c.expect(records.size() == 8, "records " + std::to_string(records.size()));
  const auto profit = ote_stats(records, OteMetric::Profit, {}, true);
  const auto duration = ote_stats(records, OteMetric::Duration, {}, true);
  auto near = [&](double got, double want, const char* what) {
    c.expect(std::abs(got - want) <= 1e-4 * std::abs(want), std::string(what) + " " + std::to_string(got));
  };
  near(profit.mean, 489.0775, "PL mean");
  near(profit.max, 778.14, "PL max");
  near(profit.min, 265.64, "PL min");
  near(duration.mean, 9879.125, "duration mean");
  near(duration.std_dev, 10277.4075, "duration std dev");
  char buf[160];
  std::snprintf(buf, sizeof buf, "PL mean %.4f max %.2f min %.2f; duration mean %.3f sd %.4f", profit.mean,
                profit.max, profit.min, duration.mean, duration.std_dev);
  c.note(buf);
}

void synthetic_properties(Check& c) {
  std::mt19937_64 rng(424242);
  const std::pair<const char*, const char*> costs[] = {{"49.99", "4.68"}, {"100", "4.68"}, {"74.99", "2.50"}};
  std::size_t sessions = 0, records = 0;
  double bote_sum = 0, sote_sum = 0;
  std::size_t bote_n = 0, sote_n = 0;
  for (int s = 0; s < 30; ++s) {
    const auto ticks = oracle::synthetic_session(rng, 6000, es);
    ++sessions;
    for (const auto& [f, k] : costs) {
      const Decimal fc = Decimal::parse(f), cost = Decimal::parse(k);
      for (const auto& v : oracle::ote_violations(ticks, fc, cost, es))
        c.expect(false, "session " + std::to_string(s) + " FC=" + f + " " + v);
      for (const auto& r : extract_otes(ticks, fc, cost, es)) {
        ++records;
        for (auto b : r.b_increments) (r.type == OteType::Bote ? bote_sum : sote_sum) += b.to_double();
        (r.type == OteType::Bote ? bote_n : sote_n) += r.b_increments.size();
      }
    }
  }
  c.expect(bote_n > 0 && bote_sum / double(bote_n) > 0, "pooled BOTE increment not positive");
  c.expect(sote_n > 0 && sote_sum / double(sote_n) < 0, "pooled SOTE increment not negative");
  c.expect(records > 1000, "too few records: " + std::to_string(records));
  c.note(std::to_string(sessions) + " sessions, " + std::to_string(records) +
         " records: alternation, chaining, grid, immutability, streaming, increment signs, mps0 boundaries");
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<void(Check&)>> criteria[] = {
      {"worked PL example", worked_pl},
      {"action-count goldens", action_goldens},
      {"oracle equivalence matrix", oracle_matrix},
      {"covariance goldens", covariance_goldens},
      {"distribution calculus", distribution_calculus},
      {"MPS0 optimality", mps_optimality},
      {"magma suite", magma_suite},
      {"vector suite", vector_suite},
      {"birth threshold", thresholds},
      {"permitted profit grid", permitted_grid},
      {"OTE stats goldens", stats_goldens},
      {"synthetic OTE properties", synthetic_properties},
  };
  int failed = 0, index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      fn(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double ms = seconds_since(t0) * 1000;
    failed += !c.passed();
    std::printf("%s %2d %s (%.0f ms): %s\n", c.passed() ? "PASS" : "FAIL", index, name, ms, c.summary().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
