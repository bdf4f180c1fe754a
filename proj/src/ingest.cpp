#include "poslim/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>

namespace poslim {

namespace {

using namespace std::chrono;

std::vector<std::string> split(const std::string& line, char delimiter) {
  std::vector<std::string> out;
  if (delimiter == ' ') {
    std::istringstream is(line);
    std::string field;
    while (is >> field) out.push_back(field);
    return out;
  }
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, delimiter)) {
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string{} : field.substr(b, e - b + 1));
  }
  return out;
}

int to_int(std::string_view s, const char* what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw ValidationError(std::string("bad ") + what + " '" + std::string(s) + "'");
  return v;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::int64_t micros_of_day(Timestamp t) {
  const auto day = floor<days>(t);
  return (t - day).count();
}

}  // namespace

TimeOfDay parse_time_of_day(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw ValidationError("time of day must be HH:MM:SS, got '" + text + "'");
  const int h = to_int(parts[0], "hour"), m = to_int(parts[1], "minute"), s = to_int(parts[2], "second");
  if (h < 0 || h > 23 || m < 0 || m > 59 || s < 0 || s > 59) throw ValidationError("time of day out of range: " + text);
  return TimeOfDay::hms(h, m, s);
}

Timestamp parse_timestamp(const std::string& date, const std::string& time) {
  const char sep = date.find('/') != std::string::npos ? '/' : '-';
  const auto d = split(date, sep);
  if (d.size() != 3) throw ValidationError("bad date '" + date + "'");
  const year_month_day ymd{year{to_int(d[0], "year")}, month{unsigned(to_int(d[1], "month"))},
                           day{unsigned(to_int(d[2], "day"))}};
  if (!ymd.ok()) throw ValidationError("invalid date '" + date + "'");

  const auto dot = time.find('.');
  const auto tod = parse_time_of_day(time.substr(0, dot));
  std::int64_t micros = 0;
  if (dot != std::string::npos) {
    const std::string frac = time.substr(dot + 1);
    if (frac.empty() || frac.size() > 6 || frac.find_first_not_of("0123456789") != std::string::npos)
      throw ValidationError("bad fractional seconds in '" + time + "'");
    micros = to_int(frac, "fraction");
    for (std::size_t k = frac.size(); k < 6; ++k) micros *= 10;
  }
  return Timestamp(sys_days(ymd).time_since_epoch() + seconds(tod.seconds) + microseconds(micros));
}

std::string format_timestamp(Timestamp t) {
  const auto day = floor<days>(t);
  const year_month_day ymd{day};
  const auto us = (t - day).count();
  const auto secs = us / 1'000'000;
  char buf[48];
  std::snprintf(buf, sizeof buf, "%04d/%02u/%02u %02lld:%02lld:%02lld", int(ymd.year()), unsigned(ymd.month()),
                unsigned(ymd.day()), static_cast<long long>(secs / 3600), static_cast<long long>(secs / 60 % 60),
                static_cast<long long>(secs % 60));
  std::string out = buf;
  if (const auto frac = us % 1'000'000; frac != 0) {
    std::snprintf(buf, sizeof buf, ".%06lld", static_cast<long long>(frac));
    std::string f = buf;
    while (f.back() == '0') f.pop_back();
    out += f;
  }
  return out;
}

std::vector<Tick> parse_ticks(std::istream& in, const TickFormat& format, const ContractSpec* spec) {
  std::vector<Tick> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto f = split(body, format.delimiter);
    if (f.size() < 4 || f.size() > 5)
      throw ParseError(number, "expected date, time, price, size and an optional condition");
    Tick t;
    try {
      t.time = parse_timestamp(f[0], f[1]);
      t.price = Decimal::parse(f[2]);
      t.size = to_int(f[3], "size");
    } catch (const ValidationError& e) {
      throw ParseError(number, e.what());
    }
    if (f.size() == 5) t.condition = f[4];
    if (t.price <= Decimal(0)) throw ParseError(number, "price must be positive");
    if (t.size < 0) throw ParseError(number, "size must be non-negative");
    if (spec && t.price.raw() % spec->tick_size().raw() != 0)
      throw ValidationError("line " + std::to_string(number) + ": price " + t.price.exact_str() +
                            " is not a multiple of delta " + spec->tick_size().exact_str());
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<Tick> tradable(const std::vector<Tick>& ticks) {
  std::vector<Tick> out;
  std::copy_if(ticks.begin(), ticks.end(), std::back_inserter(out), [](const Tick& t) { return !t.indicative(); });
  return out;
}

std::string serialize_ticks(const std::vector<Tick>& ticks) {
  std::string out;
  for (const auto& t : ticks) {
    auto stamp = format_timestamp(t.time);
    std::replace(stamp.begin(), stamp.end(), ' ', '\t');
    out += stamp + '\t' + t.price.exact_str() + '\t' + std::to_string(t.size);
    if (!t.condition.empty()) out += '\t' + t.condition;
    out += '\n';
  }
  return out;
}

SessionSplit sessionize(std::vector<Tick> ticks, const SessionWindow& window) {
  if (window.open == window.close) throw ValidationError("session open and close must differ");
  std::stable_sort(ticks.begin(), ticks.end(), [](const Tick& a, const Tick& b) { return a.time < b.time; });
  const std::int64_t open = std::int64_t(window.open.seconds) * 1'000'000;
  const std::int64_t close = std::int64_t(window.close.seconds) * 1'000'000;
  SessionSplit out;
  for (auto& t : ticks) {
    const auto tod = micros_of_day(t.time);
    auto day = floor<days>(t.time);
    bool inside;
    if (window.overnight()) {
      inside = tod >= open || tod <= close;
      if (tod >= open) day += days(1);
    } else {
      inside = tod >= open && tod <= close;
    }
    if (!inside) {
      out.dropped.push_back(std::move(t));
      continue;
    }
    if (out.sessions.empty() || out.sessions.back().trading_day != day) out.sessions.push_back({day, {}});
    out.sessions.back().ticks.push_back(std::move(t));
  }
  return out;
}

std::map<std::string, ContractSpec> load_contracts(std::istream& in) {
  std::map<std::string, std::map<std::string, std::string>> raw;
  std::string line, section;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#' || body.front() == ';') continue;
    if (body.front() == '[') {
      if (body.back() != ']') throw ParseError(number, "unterminated section heading");
      section = trim(body.substr(1, body.size() - 2));
      raw[section];
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ParseError(number, "expected key = value");
    if (section.empty()) throw ParseError(number, "key outside a [SYMBOL] section");
    raw[section][trim(body.substr(0, eq))] = trim(body.substr(eq + 1));
  }
  std::map<std::string, ContractSpec> out;
  for (const auto& [symbol, kv] : raw) {
    auto get = [&](const std::string& key) {
      auto it = kv.find(key);
      if (it == kv.end()) throw ValidationError("contract " + symbol + " lacks " + key);
      return it->second;
    };
    SessionWindow w{parse_time_of_day(get("session_open")), parse_time_of_day(get("session_close")),
                    kv.count("timezone") ? kv.at("timezone") : "exchange-local"};
    out.emplace(symbol, ContractSpec(symbol, Decimal::parse(get("point_value")), Decimal::parse(get("tick_size")), w));
  }
  return out;
}

ContractSpec preset_contract(const std::string& symbol) {
  if (symbol == "ES")
    return ContractSpec("ES", 50, Decimal::parse("0.25"),
                        {TimeOfDay::hms(17, 0, 0), TimeOfDay::hms(15, 15, 0), "CST"});
  // Corn quotes in cents per bushel on 5000 bushels.
  if (symbol == "ZC")
    return ContractSpec("ZC", 50, Decimal::parse("0.25"),
                        {TimeOfDay::hms(19, 0, 0), TimeOfDay::hms(13, 20, 0), "CST"});
  throw ValidationError("no preset for contract '" + symbol + "'");
}

ContractSpec resolve_contract(const std::string& symbol, const std::optional<std::string>& config_path) {
  std::optional<std::string> path = config_path;
  if (!path)
    if (const char* env = std::getenv("POSLIM_CONFIG"); env && *env) path = env;
  if (path) {
    std::ifstream f(*path);
    if (!f) throw ValidationError("cannot open contract config " + *path);
    auto contracts = load_contracts(f);
    if (auto it = contracts.find(symbol); it != contracts.end()) return it->second;
  }
  return preset_contract(symbol);
}

}  // namespace poslim
