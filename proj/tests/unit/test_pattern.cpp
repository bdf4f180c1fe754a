#include "oracle.hpp"

#include "poslim/errors.hpp"
#include "poslim/pattern.hpp"

#include <doctest.h>

using namespace poslim;

namespace {

const ContractSpec es("ES", 50, Decimal::parse("0.25"));
const Decimal fc = Decimal::parse("49.99");
const Decimal cost = Decimal::parse("4.68");

// Six alternating swings: left shoulder, head, right shoulder, then the
// current sell record. With an 8-delta threshold the fifth record is born at 112.
std::vector<OteRecord> chain(std::int64_t fourth_low = 104, std::int64_t fifth_high = 118) {
  const auto ticks = oracle::ticks_from_levels({100, 120, 104, 130, fourth_low, fifth_high, 109}, es);
  return extract_otes(ticks, fc, cost, es);
}

}  // namespace

TEST_CASE("head and shoulders fires at the right shoulder's birth price") {
  const auto records = chain();
  REQUIRE(records.size() == 6);
  CHECK(records[4].p_birth == es.price_of(112));
  const HeadAndShouldersMonitor monitor(records, es);
  CHECK(monitor.shape_holds());
  CHECK(monitor.trigger_price() == es.price_of(112));
  CHECK(monitor.on_price(es.price_of(112)));
  CHECK_FALSE(monitor.on_price(es.price_of(111)));
  CHECK_FALSE(monitor.on_price(es.price_of(113)));
  CHECK(head_and_shoulders(records, es.price_of(112), es));
  // Looser equality widens the trigger band.
  CHECK(head_and_shoulders(records, es.price_of(113), es, {1, 1}));
}

TEST_CASE("broken shapes never fire") {
  // Necklines differ.
  const auto uneven = chain(103);
  REQUIRE(uneven.size() == 6);
  CHECK_FALSE(HeadAndShouldersMonitor(uneven, es).shape_holds());
  CHECK_FALSE(head_and_shoulders(uneven, uneven[4].p_birth, es));
  // ...unless the equality tolerance covers the gap.
  CHECK(head_and_shoulders(uneven, uneven[4].p_birth, es, {1, 1}));
  // Right shoulder above the head.
  const auto tall = chain(104, 140);
  REQUIRE(tall.size() == 6);
  CHECK_FALSE(HeadAndShouldersMonitor(tall, es).shape_holds());
}

TEST_CASE("pattern chain validation") {
  auto records = chain();
  CHECK_THROWS_AS(HeadAndShouldersMonitor(std::span(records).first(5), es), ValidationError);
  // Ending on a buy record breaks the alternation.
  const auto seven = extract_otes(oracle::ticks_from_levels({100, 120, 104, 130, 104, 118, 109, 130}, es), fc, cost, es);
  REQUIRE(seven.size() == 7);
  CHECK_THROWS_AS(HeadAndShouldersMonitor(seven, es), ValidationError);
  // Only the last six matter when the chain is longer.
  const auto eight =
      extract_otes(oracle::ticks_from_levels({90, 110, 100, 120, 104, 130, 104, 118, 109}, es), fc, cost, es);
  REQUIRE(eight.size() == 8);
  CHECK(head_and_shoulders(eight, es.price_of(112), es));
  // An open record before the last one is rejected.
  records[2].closed = false;
  CHECK_THROWS_AS(HeadAndShouldersMonitor(records, es), ValidationError);
}
