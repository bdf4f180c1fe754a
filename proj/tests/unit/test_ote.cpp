#include "oracle.hpp"
#include "ote_properties.hpp"

#include "poslim/errors.hpp"
#include "poslim/ingest.hpp"
#include "poslim/ote.hpp"

#include <doctest.h>

#include <random>

using namespace poslim;

namespace {

const ContractSpec es("ES", 50, Decimal::parse("0.25"));
const Decimal fc50 = Decimal::parse("49.99");
const Decimal fc100 = Decimal(100);
const Decimal cost = Decimal::parse("4.68");

Tick at(const std::string& date, const std::string& time, const char* price) {
  return {parse_timestamp(date, time), Decimal::parse(price), 1, {}};
}

std::vector<std::int64_t> triangle(std::int64_t base, std::int64_t amplitude, int legs) {
  std::vector<std::int64_t> out{base};
  for (int leg = 0; leg < legs; ++leg)
    for (std::int64_t k = 0; k < amplitude; ++k) out.push_back(out.back() + (leg % 2 == 0 ? 1 : -1));
  return out;
}

}  // namespace

TEST_CASE("birth thresholds and the profit grid") {
  CHECK(birth_threshold(fc50, es) == 8);
  CHECK(birth_threshold(fc100, es) == 17);
  CHECK(birth_threshold(Decimal::parse("74.99"), es) == 12);
  CHECK(birth_threshold(Decimal(0), es) == 1);
  const auto grid = permitted_profit_grid(fc50, cost, es, 3);
  CHECK(grid == std::vector<Decimal>{Decimal::parse("90.64"), Decimal::parse("103.14"), Decimal::parse("115.64")});
  CHECK(grid_index(Decimal::parse("115.64"), fc50, cost, es) == 2);
  CHECK_FALSE(grid_index(Decimal::parse("78.14"), fc50, cost, es));
  CHECK_FALSE(grid_index(Decimal::parse("100.00"), fc50, cost, es));
  CHECK_THROWS_AS(permitted_profit_grid(cost, fc50, es, 1), ValidationError);
}

TEST_CASE("triangle wave of the threshold height") {
  const auto ticks = oracle::ticks_from_levels(triangle(9000, 8, 9), es);
  const auto records = extract_otes(ticks, fc50, cost, es);
  REQUIRE(records.size() == 9);
  for (std::size_t k = 0; k < records.size(); ++k) {
    CHECK(records[k].pl == Decimal::parse("90.64"));
    CHECK(records[k].type == (k % 2 == 0 ? OteType::Bote : OteType::Sote));
    CHECK(records[k].start_index == 8 * k);
    CHECK(records[k].birth_index == 8 * k + 8);
    CHECK(records[k].closed == (k + 1 < records.size()));
  }
  // One delta short of the threshold never gives birth.
  CHECK(extract_otes(oracle::ticks_from_levels(triangle(9000, 7, 9), es), fc50, cost, es).empty());
  CHECK(oracle::ote_violations(ticks, fc50, cost, es).empty());
}

TEST_CASE("monotone ramp is one open record") {
  std::vector<std::int64_t> levels;
  for (std::int64_t l = 9000; l <= 9030; ++l) levels.push_back(l);
  const auto records = extract_otes(oracle::ticks_from_levels(levels, es), fc50, cost, es);
  REQUIRE(records.size() == 1);
  const auto& r = records[0];
  CHECK_FALSE(r.closed);
  CHECK_FALSE(r.p_end());
  CHECK(r.type == OteType::Bote);
  CHECK(r.start_index == 0);
  CHECK(r.birth_index == 8);
  CHECK(r.extreme_index == 30);
  CHECK(r.pl == es.tick_value() * 30 - 2 * cost);
  CHECK(r.tick_count == 31);
  CHECK(r.duration == 30.0);
  CHECK(r.prices.size() == 31);
}

TEST_CASE("birth across a gap") {
  const auto ticks = oracle::ticks_from_levels({100, 101, 112, 110}, es);
  OteTracker tracker(fc50, cost, es);
  for (const auto& t : ticks) tracker.push(t);
  REQUIRE(tracker.current());
  const auto& r = *tracker.current();
  CHECK(r.birth_index == 2);
  CHECK(r.p_birth == es.price_of(108));
  CHECK(r.p_birth_tick == es.price_of(112));
  CHECK(r.p_extreme == es.price_of(112));
  CHECK(tracker.ticks_seen() == 4);
  CHECK(tracker.threshold() == 8);
}

TEST_CASE("sell record opens from the running high") {
  // Up short of the threshold, then down: the sell side opens from the running high.
  auto ticks = oracle::ticks_from_levels({100, 107, 99, 92}, es);
  auto records = extract_otes(ticks, fc50, cost, es);
  REQUIRE(records.size() == 1);
  CHECK(records[0].type == OteType::Sote);
  CHECK(records[0].start_index == 1);
  CHECK(records[0].birth_index == 2);
  CHECK(records[0].p_birth == es.price_of(99));
  CHECK(records[0].extreme_index == 3);
}

TEST_CASE("session OTE table reproduces from its boundary prices") {
  std::vector<Tick> ticks{
      at("2017-04-09", "17:02:54", "2350.75"), at("2017-04-09", "20:04:00", "2359.00"),
      at("2017-04-10", "05:03:55", "2349.75"), at("2017-04-10", "09:35:48", "2363.25"),
      // A partial retrace, then the sell birth level exactly.
      at("2017-04-10", "09:50:00", "2360.00"), at("2017-04-10", "09:59:13", "2359.00"),
      at("2017-04-10", "11:14:41", "2347.50"), at("2017-04-10", "12:37:14", "2360.00"),
      at("2017-04-10", "13:04:45", "2354.50"), at("2017-04-10", "14:06:28", "2360.25"),
      at("2017-04-10", "15:00:07", "2351.00")};
  const auto records = extract_otes(ticks, fc100, cost, es);
  REQUIRE(records.size() == 8);
  const char* pls[] = {"403.14", "453.14", "665.64", "778.14", "615.64", "265.64", "278.14", "453.14"};
  const double durations[] = {10866, 32395, 16313, 5933, 4953, 1651, 3703, 3219};
  for (std::size_t k = 0; k < 8; ++k) {
    CAPTURE(k);
    CHECK(records[k].pl == Decimal::parse(pls[k]));
    CHECK(records[k].duration == durations[k]);
    CHECK(records[k].type == (k % 2 == 0 ? OteType::Bote : OteType::Sote));
    CHECK(grid_index(records[k].pl, fc100, cost, es));
  }
  CHECK(format_timestamp(records[3].t_start) == "2017/04/10 09:35:48");
  CHECK(records[3].p_birth == Decimal::parse("2359.00"));
  CHECK(format_timestamp(records[3].t_birth) == "2017/04/10 09:59:13");
  CHECK(records[3].p_end() == Decimal::parse("2347.50"));
  CHECK_FALSE(records[7].closed);
  CHECK(oracle::ote_violations(ticks, fc100, cost, es).empty());
}

TEST_CASE("scenario classification") {
  const auto ticks = oracle::ticks_from_levels(triangle(9000, 10, 1), es);
  const auto records = extract_otes(ticks, fc50, cost, es);
  REQUIRE(records.size() == 1);
  const auto& r = records[0];
  const auto later = [](std::vector<std::int64_t> levels) {
    return oracle::ticks_from_levels(levels, es, parse_timestamp("2020/01/01", "00:00:00"));
  };
  CHECK(classify_scenario(r, later({9009, 9011}), fc50, es) == Scenario::ProfitGrew);
  CHECK(classify_scenario(r, later({9005, 9002, 9020}), fc50, es) == Scenario::Replaced);
  CHECK(classify_scenario(r, later({9009, 9003}), fc50, es) == Scenario::SessionEnded);
  CHECK(classify_scenario(r, {}, fc50, es) == Scenario::SessionEnded);
  CHECK(to_string(Scenario::Replaced) == "replaced");
}

TEST_CASE("bad inputs") {
  CHECK_THROWS_AS(OteTracker(cost, cost, es), ValidationError);
  CHECK_THROWS_AS(OteTracker(cost, fc50, es), ValidationError);
  CHECK_THROWS_AS(OteTracker(fc50, Decimal(-1), es), ValidationError);
  OteTracker tracker(fc50, cost, es);
  const auto ticks = oracle::ticks_from_levels({100, 101}, es);
  tracker.push(ticks[1]);
  CHECK_THROWS_AS(tracker.push(ticks[0]), ValidationError);
  CHECK(extract_otes(std::span<const Tick>{}, fc50, cost, es).empty());
}

TEST_CASE("structural properties on synthetic sessions") {
  std::mt19937_64 rng(1234);
  const std::pair<const char*, const char*> costs[] = {
      {"49.99", "4.68"}, {"100", "4.68"}, {"74.99", "2.50"}, {"1", "0"}, {"250", "12"}};
  for (int s = 0; s < 25; ++s) {
    const auto ticks = oracle::synthetic_session(rng, 4000, es);
    for (const auto& [f, c] : costs) {
      CAPTURE(s);
      CAPTURE(f);
      const auto bad = oracle::ote_violations(ticks, Decimal::parse(f), Decimal::parse(c), es);
      CHECK(bad.empty());
      if (!bad.empty()) MESSAGE(bad.front());
    }
  }
}
