#pragma once

#include "poslim/core_model.hpp"
#include "poslim/errors.hpp"

#include <chrono>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace poslim {

struct TickFormat {
  /// Field separator; a space means any run of blanks or tabs.
  char delimiter = ' ';
};

/// Reads "date time price size [condition]" records, one per line. Dates use
/// '/' or '-', times may carry fractional seconds. Blank lines and lines
/// starting with '#' are skipped. With a contract, prices must lie on its grid.
std::vector<Tick> parse_ticks(std::istream& in, const TickFormat& format = {}, const ContractSpec* spec = nullptr);

/// Drops indicative (zero size) ticks.
std::vector<Tick> tradable(const std::vector<Tick>& ticks);

std::string format_timestamp(Timestamp t);
/// "YYYY/MM/DD" or "YYYY-MM-DD" plus "HH:MM:SS[.f]"; throws ValidationError.
Timestamp parse_timestamp(const std::string& date, const std::string& time);

/// Canonical tab-separated form that parse_ticks reads back.
std::string serialize_ticks(const std::vector<Tick>& ticks);

struct Session {
  std::chrono::sys_days trading_day;
  std::vector<Tick> ticks;
};

struct SessionSplit {
  std::vector<Session> sessions;
  std::vector<Tick> dropped;
};

/// Stable-sorts by time, then assigns each tick to the session it trades in.
/// In an overnight window a tick at or after the open belongs to the next
/// calendar day's session.
SessionSplit sessionize(std::vector<Tick> ticks, const SessionWindow& window);

/// Contract definitions from "key = value" lines grouped under [SYMBOL]
/// headings. Keys: point_value, tick_size, session_open, session_close, timezone.
std::map<std::string, ContractSpec> load_contracts(std::istream& in);

/// Built-in "ES" (E-mini S&P 500) and "ZC" (corn).
ContractSpec preset_contract(const std::string& symbol);

/// Looks the symbol up in config_path when given, else in the file named by
/// POSLIM_CONFIG, then among the presets.
ContractSpec resolve_contract(const std::string& symbol, const std::optional<std::string>& config_path = {});

TimeOfDay parse_time_of_day(const std::string& text);

}  // namespace poslim
