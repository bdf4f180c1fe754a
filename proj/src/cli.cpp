#include "poslim/cli.hpp"

#include "poslim/combinatorics.hpp"
#include "poslim/enum_oracle.hpp"
#include "poslim/ingest.hpp"
#include "poslim/magma.hpp"
#include "poslim/mps.hpp"
#include "poslim/ote.hpp"
#include "poslim/ote_stats.hpp"
#include "poslim/pattern.hpp"
#include "poslim/verification.hpp"
#include "poslim/vector_space.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace poslim::cli {

namespace {

using Json = nlohmann::ordered_json;

enum class Format { Tsv, Json };

struct Common {
  std::string format = "tsv";
  std::string out_path;
  std::string plot_path;

  Format fmt() const { return format == "json" ? Format::Json : Format::Tsv; }
};

std::string num(double v, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

Json big(const BigInt& v) {
  if (v >= INT64_MIN && v <= INT64_MAX) return v.convert_to<std::int64_t>();
  return v.str();
}

std::string join(const std::vector<std::string>& cells, char sep = '\t') {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += sep;
    out += cells[i];
  }
  return out + '\n';
}

/// Writes the payload to --out or to the given stream, plus a gnuplot script when asked.
void emit(const Common& c, std::ostream& out, const std::string& payload, const std::string& plot_body = {}) {
  if (c.out_path.empty()) {
    out << payload;
  } else {
    std::ofstream f(c.out_path, std::ios::binary);
    if (!f) throw ValidationError("cannot write " + c.out_path);
    f << payload;
  }
  if (!c.plot_path.empty()) {
    if (c.out_path.empty()) throw ValidationError("--emit-plot needs --out so the script can name the data file");
    if (plot_body.empty()) throw ValidationError("this subcommand has no plot");
    std::ofstream f(c.plot_path, std::ios::binary);
    if (!f) throw ValidationError("cannot write " + c.plot_path);
    f << "# gnuplot script\n"
      << "set datafile separator '\\t'\n"
      << "set key autotitle columnhead\n"
      << "data = '" << c.out_path << "'\n"
      << plot_body;
  }
}

std::vector<Decimal> parse_price_list(const std::string& text) {
  std::vector<Decimal> out;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ',')) {
    field.erase(std::remove_if(field.begin(), field.end(), ::isspace), field.end());
    if (!field.empty()) out.push_back(Decimal::parse(field));
  }
  return out;
}

/// A file holding either one price per line or full tick records.
std::vector<Tick> read_ticks(const std::string& path, char delimiter, const ContractSpec& spec) {
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot open " + path);
  std::stringstream buffer;
  buffer << f.rdbuf();
  return tradable(parse_ticks(buffer, TickFormat{delimiter}, &spec));
}

std::vector<Decimal> read_prices(const std::string& path, char delimiter, const ContractSpec& spec) {
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot open " + path);
  std::vector<Decimal> prices;
  std::string line;
  std::vector<std::string> lines;
  bool plain = true;
  while (std::getline(f, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    const auto e = line.find_last_not_of(" \t\r");
    const auto body = line.substr(b, e - b + 1);
    if (body.find_first_of(" \t,;") != std::string::npos) plain = false;
    lines.push_back(body);
  }
  if (plain) {
    for (const auto& l : lines) prices.push_back(Decimal::parse(l));
    return prices;
  }
  for (const auto& t : read_ticks(path, delimiter, spec)) prices.push_back(t.price);
  return prices;
}

std::string strategy_cells(const Strategy& s) {
  std::string out;
  for (Eigen::Index i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out;
}

Json strategy_json(const Strategy& s) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < s.size(); ++i) a.push_back(s[i]);
  return a;
}

//------------------------------------------------------------------ counts

int cmd_counts(const Common& c, int limit, int n, std::ostream& out) {
  const UniverseParams p(limit, n);
  const auto k = universe_counts(p);
  if (c.fmt() == Format::Json) {
    Json j{{"W", limit}, {"n", n}, {"strategies", big(k.strategies)}, {"actions_total", big(k.actions_total)},
           {"do_nothing", big(k.do_nothing)}, {"transactions", big(k.transactions)}};
    emit(c, out, j.dump(2) + "\n");
    return kOk;
  }
  std::string s = join({"quantity", "value"});
  s += join({"strategies", k.strategies.str()});
  s += join({"actions_total", k.actions_total.str()});
  s += join({"do_nothing", k.do_nothing.str()});
  s += join({"transactions", k.transactions.str()});
  emit(c, out, s);
  return kOk;
}

//------------------------------------------------------------------ dist

int cmd_dist(const Common& c, int limit, int n, std::ostream& out) {
  const UniverseParams p(limit, n);
  const auto d = action_distribution(p);
  Rational cum = 0;
  std::string tsv = join({"m", "count", "pmf", "cdf"});
  Json rows = Json::array();
  for (const auto& [m, count] : d.counts) {
    const Rational pm(count, d.total);
    cum += pm;
    tsv += join({std::to_string(m), count.str(), num(to_double(pm)), num(to_double(cum))});
    rows.push_back({{"m", m}, {"count", big(count)}, {"pmf", to_double(pm)}, {"cdf", to_double(cum)},
                    {"pmf_exact", to_string(pm)}});
  }
  const std::string plot =
      "set title 'Action distribution W=" + std::to_string(limit) + " n=" + std::to_string(n) +
      "'\nset xlabel 'm'\nset style fill solid 0.5\n"
      "plot data using 1:3 with boxes title 'pmf', data using 1:4 with steps title 'cdf'\n";
  if (c.fmt() == Format::Json) {
    Json j{{"W", limit}, {"n", n}, {"total", big(d.total)}, {"rows", rows}};
    emit(c, out, j.dump(2) + "\n", plot);
  } else {
    emit(c, out, tsv, plot);
  }
  return kOk;
}

//------------------------------------------------------------------ verify

int cmd_verify(const Common& c, const VerifyOptions& opt, std::ostream& out) {
  const auto rows = verify_all(opt);
  const auto failed = std::count_if(rows.begin(), rows.end(), [](const VerifyRow& r) { return !r.pass; });
  if (c.fmt() == Format::Json) {
    Json a = Json::array();
    for (const auto& r : rows)
      a.push_back({{"W", r.limit}, {"n", r.n}, {"check", r.check}, {"pass", r.pass}, {"detail", r.detail}});
    Json j{{"max_universe", opt.max_universe}, {"checks", rows.size()}, {"failed", failed}, {"rows", a}};
    emit(c, out, j.dump(2) + "\n");
  } else {
    std::string s = join({"W", "n", "check", "result", "detail"});
    for (const auto& r : rows)
      s += join({std::to_string(r.limit), std::to_string(r.n), r.check, r.pass ? "pass" : "FAIL", r.detail});
    s += "# " + std::to_string(rows.size() - std::size_t(failed)) + "/" + std::to_string(rows.size()) +
         " checks passed\n";
    emit(c, out, s);
  }
  return failed == 0 ? kOk : kValidation;
}

//------------------------------------------------------------------ magma-table

int cmd_magma(const Common& c, int limit, const std::string& op, std::ostream& out) {
  MagmaOp kind;
  if (op == "plus") kind = MagmaOp::Plus;
  else if (op == "minus") kind = MagmaOp::Minus;
  else throw ValidationError("--op must be plus or minus");
  if (c.fmt() == Format::Json) {
    Json rows = Json::array();
    for (std::int64_t a = -limit; a <= limit; ++a) {
      Json row = Json::array();
      for (std::int64_t b = -limit; b <= limit; ++b) {
        if (kind == MagmaOp::Plus) {
          row.push_back(oplus({a, limit}, {b, limit}).value());
        } else {
          const auto r = ominus({a, limit}, {b, limit});
          row.push_back(r ? Json(r->value()) : Json(nullptr));
        }
      }
      rows.push_back(row);
    }
    const auto st = cayley_stats(limit);
    Json j{{"W", limit}, {"op", op}, {"table", rows},
           {"stats", {{"pairs", st.pairs}, {"clamped", st.clamped}, {"ordinary", st.ordinary},
                      {"undefined_sub", st.undefined_sub}}}};
    emit(c, out, j.dump(2) + "\n");
  } else {
    emit(c, out, cayley_table(limit, kind));
  }
  return kOk;
}

//------------------------------------------------------------------ rank

int cmd_rank(const Common& c, int n, int limit, std::uint64_t budget, bool orthogonal, std::ostream& out) {
  const auto rep = rank_report(n, limit, budget);
  std::optional<OrthogonalSubset> orth;
  if (orthogonal) orth = max_orthogonal_subset(n, budget);
  if (c.fmt() == Format::Json) {
    Json j{{"n", n}, {"W", limit}, {"rank", rep.rank}, {"bhs_rank", rep.bhs_rank}, {"swept", rep.swept},
           {"flat_orthogonal", rep.flat_orthogonal}};
    if (orth) {
      Json w = Json::array();
      for (const auto& s : orth->witness) w.push_back(strategy_json(s));
      j["max_orthogonal"] = {{"size", orth->size}, {"witness", w}, {"nodes", orth->nodes}};
    }
    emit(c, out, j.dump(2) + "\n");
    return kOk;
  }
  std::string s = join({"quantity", "value"});
  s += join({"rank", std::to_string(rep.rank)});
  s += join({"bhs_rank", std::to_string(rep.bhs_rank)});
  s += join({"swept", rep.swept ? "yes" : "no"});
  s += join({"flat_orthogonal", rep.flat_orthogonal ? "yes" : "no"});
  if (orth) {
    s += join({"max_orthogonal", std::to_string(orth->size)});
    for (const auto& w : orth->witness) s += join({"witness", strategy_cells(w)});
  }
  emit(c, out, s);
  return kOk;
}

//------------------------------------------------------------------ mps

int cmd_mps(const Common& c, const std::vector<Decimal>& prices, Decimal cost, int limit, const ContractSpec& spec,
            bool brute, const SweepOptions& sweep, std::ostream& out) {
  const auto r = mps0(prices, CostModel::constant(cost), limit, spec);
  std::optional<ExtremeSearch> oracle;
  if (brute) oracle = brute_force_mps(prices, CostModel::constant(cost), UniverseParams(limit, int(prices.size())), spec,
                                      sweep);
  if (c.fmt() == Format::Json) {
    Json trades = Json::array();
    for (const auto& t : r.trades) trades.push_back({{"start", t.start + 1}, {"end", t.end + 1}, {"position", t.position}});
    Json j{{"n", prices.size()}, {"W", limit}, {"cost", cost.exact_str(2)}, {"pl", r.pl.str(2)},
           {"transactions", r.transactions}, {"strategy", strategy_json(r.strategy)}, {"trades", trades}};
    if (oracle) j["brute_force"] = {{"pl", oracle->pl.str(2)}, {"witnesses", oracle->witness_count},
                                    {"agrees", oracle->pl == r.pl}};
    emit(c, out, j.dump(2) + "\n");
  } else {
    std::string s = join({"quantity", "value"});
    s += join({"pl", r.pl.str(2)});
    s += join({"transactions", std::to_string(r.transactions)});
    s += join({"strategy", strategy_cells(r.strategy)});
    s += join({"trade", "start", "end", "position"});
    for (std::size_t k = 0; k < r.trades.size(); ++k)
      s += join({std::to_string(k + 1), std::to_string(r.trades[k].start + 1), std::to_string(r.trades[k].end + 1),
                 std::to_string(r.trades[k].position)});
    if (oracle) {
      s += join({"brute_force_pl", oracle->pl.str(2)});
      s += join({"brute_force_agrees", oracle->pl == r.pl ? "yes" : "no"});
    }
    emit(c, out, s);
  }
  if (oracle && oracle->pl != r.pl) return kValidation;
  return kOk;
}

//------------------------------------------------------------------ ote

struct OteArgs {
  std::string file;
  Decimal fc, cost;
  char delimiter = ' ';
  bool whole_file = false;
  bool include_open = false;
  HistogramSpec hist;
};

struct SessionOtes {
  std::string label;
  std::vector<OteRecord> records;
};

std::vector<SessionOtes> ote_sessions(const OteArgs& a, const ContractSpec& spec) {
  auto ticks = read_ticks(a.file, a.delimiter, spec);
  std::vector<SessionOtes> out;
  if (a.whole_file) {
    std::stable_sort(ticks.begin(), ticks.end(), [](const Tick& x, const Tick& y) { return x.time < y.time; });
    out.push_back({"all", extract_otes(ticks, a.fc, a.cost, spec)});
    return out;
  }
  const auto split = sessionize(std::move(ticks), spec.session());
  for (const auto& s : split.sessions) {
    const std::chrono::year_month_day d{s.trading_day};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(d.year()), unsigned(d.month()), unsigned(d.day()));
    out.push_back({buf, extract_otes(s.ticks, a.fc, a.cost, spec)});
  }
  return out;
}

std::string dash_time(Timestamp t) {
  auto s = format_timestamp(t);
  std::replace(s.begin(), s.begin() + 10, '/', '-');
  return s;
}

int cmd_ote(const Common& c, const OteArgs& a, const ContractSpec& spec, std::ostream& out) {
  const auto sessions = ote_sessions(a, spec);
  std::vector<OteRecord> all;
  for (const auto& s : sessions) all.insert(all.end(), s.records.begin(), s.records.end());
  const auto values = metric_values(all, OteMetric::Profit, a.include_open);
  std::optional<OteStats> profit, duration;
  if (values.size() >= 2) {
    profit = ote_stats(all, OteMetric::Profit, a.hist, a.include_open);
    duration = ote_stats(all, OteMetric::Duration, a.hist, a.include_open);
  }
  const auto grid = profit_epmf(all, a.fc, a.cost, spec, a.include_open);

  if (c.fmt() == Format::Json) {
    Json js = Json::array();
    for (const auto& s : sessions) {
      Json recs = Json::array();
      for (std::size_t k = 0; k < s.records.size(); ++k) {
        const auto& r = s.records[k];
        recs.push_back({{"#", k + 1}, {"type", to_string(r.type)}, {"closed", r.closed},
                        {"t_start", dash_time(r.t_start)}, {"P_start", r.p_start.exact_str(2)},
                        {"t_birth", dash_time(r.t_birth)}, {"P_birth", r.p_birth.exact_str(2)},
                        {"P_birth_tick", r.p_birth_tick.exact_str(2)},
                        {"t_end", r.closed ? Json(dash_time(r.t_extreme)) : Json(nullptr)},
                        {"P_end", r.closed ? Json(r.p_extreme.exact_str(2)) : Json(nullptr)},
                        {"duration", r.duration}, {"pl", r.pl.str(2)}, {"ticks", r.tick_count},
                        {"volume", r.volume}});
      }
      js.push_back({{"session", s.label}, {"records", recs}});
    }
    Json g = Json::array();
    for (const auto& f : grid)
      g.push_back({{"i", f.index}, {"profit", f.profit.str(2)}, {"count", f.count}, {"cumulative", f.cumulative},
                   {"fraction", f.fraction}, {"cumulative_fraction", f.cumulative_fraction}});
    Json j{{"fc", a.fc.exact_str(2)}, {"cost", a.cost.exact_str(2)},
           {"threshold_deltas", birth_threshold(a.fc, spec)}, {"sessions", js}, {"epmf", g}};
    auto stats_json = [](const OteStats& s) {
      return Json{{"count", s.count}, {"mean", s.mean}, {"min", s.min}, {"min_count", s.min_count},
                  {"max", s.max}, {"max_count", s.max_count}, {"variance", s.variance}, {"std_dev", s.std_dev},
                  {"skewness", s.skewness}, {"excess_kurtosis", s.excess_kurtosis}};
    };
    if (profit) j["profit_stats"] = stats_json(*profit);
    if (duration) j["duration_stats"] = stats_json(*duration);
    emit(c, out, j.dump(2) + "\n");
    return kOk;
  }

  std::string s;
  for (const auto& sess : sessions) {
    s += "# session " + sess.label + "\n";
    s += join({"#", "t_start", "P_start", "t_end", "P_end", "dt_s", "PL", "Type"});
    for (std::size_t k = 0; k < sess.records.size(); ++k) {
      const auto& r = sess.records[k];
      s += join({std::to_string(k + 1), dash_time(r.t_start), r.p_start.exact_str(2),
                 r.closed ? dash_time(r.t_extreme) : "open", r.closed ? r.p_extreme.exact_str(2) : "open",
                 num(r.duration), r.pl.str(2), to_string(r.type)});
    }
  }
  if (profit) {
    s += "\n" + format_stats_block("PL distribution", *profit);
    s += "\n" + format_stats_block("Trade time distribution", *duration);
  }
  std::string grid_table = join({"i", "profit", "count", "cumulative", "fraction", "cumulative_fraction"});
  for (const auto& f : grid)
    grid_table += join({std::to_string(f.index), f.profit.str(2), std::to_string(f.count),
                        std::to_string(f.cumulative), num(f.fraction, 6), num(f.cumulative_fraction, 6)});
  // With a plot, --out holds only the grid table so gnuplot can read it; the report goes to stdout.
  if (!c.plot_path.empty()) {
    const std::string plot =
        "set title 'OTE profit frequencies'\nset xlabel 'profit, $'\n"
        "plot data using 2:5 with impulses title 'epmf', data using 2:6 with steps title 'ecdf'\n";
    emit(c, out, grid_table, plot);
    out << s;
    return kOk;
  }
  s += "\n" + grid_table;
  emit(c, out, s);
  return kOk;
}

//------------------------------------------------------------------ stats

int cmd_stats(const Common& c, const std::string& values_text, const std::string& file, const std::string& title,
              const HistogramSpec& hist, std::ostream& out) {
  std::vector<double> xs;
  auto take = [&](const std::string& field) {
    if (field.empty()) return;
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(field, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != field.size()) throw ValidationError("not a number: '" + field + "'");
    xs.push_back(v);
  };
  if (!values_text.empty()) {
    std::stringstream ss(values_text);
    std::string f;
    while (std::getline(ss, f, ',')) {
      f.erase(std::remove_if(f.begin(), f.end(), ::isspace), f.end());
      take(f);
    }
  }
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw ValidationError("cannot open " + file);
    std::string line;
    while (std::getline(in, line)) {
      line.erase(std::remove_if(line.begin(), line.end(), ::isspace), line.end());
      if (!line.empty() && line.front() != '#') take(line);
    }
  }
  const auto s = sample_stats(xs, hist);
  if (c.fmt() == Format::Json) {
    Json h = Json::array();
    for (std::size_t b = 0; b < s.histogram.counts.size(); ++b)
      h.push_back({{"lo", s.histogram.edges[b]}, {"hi", s.histogram.edges[b + 1]}, {"count", s.histogram.counts[b]}});
    Json e = Json::array();
    for (const auto& p : s.ecdf) e.push_back({{"value", p.value}, {"fraction", p.fraction}});
    Json j{{"count", s.count}, {"mean", s.mean}, {"min", s.min}, {"min_count", s.min_count}, {"max", s.max},
           {"max_count", s.max_count}, {"variance", s.variance}, {"std_dev", s.std_dev}, {"skewness", s.skewness},
           {"excess_kurtosis", s.excess_kurtosis}, {"histogram", h}, {"ecdf", e}};
    emit(c, out, j.dump(2) + "\n");
    return kOk;
  }
  std::string text = format_stats_block(title, s);
  text += "\n" + join({"value", "count", "ecdf"});
  for (std::size_t k = 0; k < s.epmf.size(); ++k)
    text += join({num(s.epmf[k].value), std::to_string(s.epmf[k].count), num(s.ecdf[k].fraction, 6)});
  emit(c, out, text);
  return kOk;
}

//------------------------------------------------------------------ pattern

int cmd_pattern(const Common& c, const OteArgs& a, const ContractSpec& spec, PatternTolerances tol,
                std::ostream& out) {
  auto ticks = read_ticks(a.file, a.delimiter, spec);
  std::stable_sort(ticks.begin(), ticks.end(), [](const Tick& x, const Tick& y) { return x.time < y.time; });
  OteTracker tracker(a.fc, a.cost, spec);
  std::optional<HeadAndShouldersMonitor> monitor;
  std::size_t monitored_for = 0;
  Json hits = Json::array();
  std::string tsv = join({"time", "price", "ote", "trigger"});
  for (const auto& t : ticks) {
    tracker.push(t);
    const auto& closed = tracker.closed();
    const auto& cur = tracker.current();
    if (!cur || cur->type != OteType::Sote || closed.size() < 5) {
      monitor.reset();
      continue;
    }
    if (!monitor || monitored_for != closed.size()) {
      std::vector<OteRecord> chain(closed.end() - 5, closed.end());
      chain.push_back(*cur);
      monitor.emplace(chain, spec, tol);
      monitored_for = closed.size();
    }
    if (monitor->on_price(t.price)) {
      tsv += join({dash_time(t.time), t.price.exact_str(2), std::to_string(closed.size() + 1),
                   monitor->trigger_price().exact_str(2)});
      hits.push_back({{"time", dash_time(t.time)}, {"price", t.price.exact_str(2)}, {"ote", closed.size() + 1},
                      {"trigger", monitor->trigger_price().exact_str(2)}});
    }
  }
  if (c.fmt() == Format::Json) emit(c, out, Json{{"hits", hits}}.dump(2) + "\n");
  else emit(c, out, tsv);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bounded-position strategy analytics"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  Common common;
  auto add_common = [&](CLI::App* sub, bool plot) {
    sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"tsv", "json"}));
    sub->add_option("--out", common.out_path, "Write output to this path instead of stdout");
    if (plot) sub->add_option("--emit-plot", common.plot_path, "Also write a gnuplot script for the --out data");
  };

  int limit = 1, n = 3;
  auto* counts = app.add_subcommand("counts", "Universe size and action totals");
  counts->add_option("--W", limit, "Position limit")->required();
  counts->add_option("--n", n, "Ticks")->required();
  add_common(counts, false);

  auto* dist = app.add_subcommand("dist", "Action-type PMF and CDF");
  dist->add_option("--W", limit, "Position limit")->required();
  dist->add_option("--n", n, "Ticks")->required();
  add_common(dist, true);

  VerifyOptions vopt;
  auto* verify = app.add_subcommand("verify", "Closed forms against exhaustive enumeration");
  verify->add_option("--max-universe", vopt.max_universe, "Largest universe to sweep");
  verify->add_option("--max-W", vopt.max_limit, "Largest position limit");
  verify->add_option("--threads", vopt.threads, "Worker threads per sweep");
  verify->add_option("--seed", vopt.seed, "Seed for the random price grids");
  add_common(verify, false);

  std::string op = "plus";
  auto* magma = app.add_subcommand("magma-table", "Cayley table of clamped addition or subtraction");
  magma->add_option("--W", limit, "Position limit")->required();
  magma->add_option("--op", op, "plus or minus");
  add_common(magma, false);

  std::uint64_t budget = kDefaultBudget;
  bool orthogonal = false;
  auto* rank = app.add_subcommand("rank", "Rank of the strategy universe");
  rank->add_option("--n", n, "Ticks")->required();
  rank->add_option("--W", limit, "Position limit");
  rank->add_option("--budget", budget, "Sweep and search budget");
  rank->add_flag("--max-orthogonal", orthogonal, "Also search the unit universe for the largest orthogonal set");
  add_common(rank, false);

  std::string prices_text, file, contract = "ES", config, cost_text = "0", fc_text, delimiter = " ";
  bool brute = false;
  unsigned threads = 1;
  auto* mps = app.add_subcommand("mps", "Maximum-profit strategy");
  mps->add_option("--prices", prices_text, "Comma-separated prices");
  mps->add_option("file", file, "Price or tick file");
  mps->add_option("--cost", cost_text, "Cost per contract");
  mps->add_option("--W", limit, "Position limit");
  mps->add_option("--contract", contract, "Contract symbol");
  mps->add_option("--config", config, "Contract config file");
  mps->add_option("--delimiter", delimiter, "Tick field delimiter");
  mps->add_flag("--brute-force", brute, "Also sweep the whole universe");
  mps->add_option("--budget", budget, "Largest universe for --brute-force");
  mps->add_option("--threads", threads, "Worker threads for --brute-force");
  add_common(mps, false);

  OteArgs oargs;
  auto add_ote_inputs = [&](CLI::App* sub) {
    sub->add_option("file", oargs.file, "Tick file")->required();
    sub->add_option("--fc", fc_text, "Filtering cost")->required();
    sub->add_option("--cost", cost_text, "Actual cost per contract")->required();
    sub->add_option("--contract", contract, "Contract symbol");
    sub->add_option("--config", config, "Contract config file");
    sub->add_option("--delimiter", delimiter, "Tick field delimiter");
    sub->add_flag("--whole-file", oargs.whole_file, "Treat the file as one chain instead of splitting sessions");
  };
  auto* ote = app.add_subcommand("ote", "Optimal trading elements of a tick file");
  add_ote_inputs(ote);
  ote->add_flag("--include-open", oargs.include_open, "Count the open record in the statistics");
  ote->add_option("--bins", oargs.hist.bins, "Histogram bins, 0 for automatic");
  ote->add_flag("--anchored-bins", oargs.hist.anchored_at_max, "Bins of width max/10 ending at the maximum");
  add_common(ote, true);

  std::string values, title = "Distribution";
  HistogramSpec shist;
  auto* stats = app.add_subcommand("stats", "Sample statistics of numbers");
  stats->add_option("--values", values, "Comma-separated samples");
  stats->add_option("file", file, "One sample per line");
  stats->add_option("--title", title, "Heading of the report");
  stats->add_option("--bins", shist.bins, "Histogram bins, 0 for automatic");
  stats->add_flag("--anchored-bins", shist.anchored_at_max, "Bins of width max/10 ending at the maximum");
  add_common(stats, false);

  PatternTolerances tol;
  auto* pattern = app.add_subcommand("pattern", "Head-and-shoulders triggers over a tick file");
  add_ote_inputs(pattern);
  pattern->add_option("--eq-tol", tol.equal_deltas, "Equality slack in deltas");
  pattern->add_option("--lt-tol", tol.less_deltas, "Minimum gap in deltas for a strict comparison");
  add_common(pattern, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kValidation;
  }

  try {
    auto contract_spec = [&] { return resolve_contract(contract, config.empty() ? std::nullopt : std::optional(config)); };
    const char delim = delimiter.empty() ? ' ' : delimiter == "\\t" ? '\t' : delimiter.front();
    if (*counts) return cmd_counts(common, limit, n, out);
    if (*dist) return cmd_dist(common, limit, n, out);
    if (*verify) return cmd_verify(common, vopt, out);
    if (*magma) return cmd_magma(common, limit, op, out);
    if (*rank) return cmd_rank(common, n, limit, budget, orthogonal, out);
    if (*mps) {
      const auto spec = contract_spec();
      std::vector<Decimal> prices = prices_text.empty() ? std::vector<Decimal>{} : parse_price_list(prices_text);
      if (!file.empty()) {
        auto more = read_prices(file, delim, spec);
        prices.insert(prices.end(), more.begin(), more.end());
      }
      if (prices.empty()) throw ValidationError("mps needs --prices or a price file");
      SweepOptions sweep;
      sweep.budget = budget;
      sweep.threads = threads;
      return cmd_mps(common, prices, Decimal::parse(cost_text), limit, spec, brute, sweep, out);
    }
    if (*ote || *pattern) {
      const auto spec = contract_spec();
      oargs.fc = Decimal::parse(fc_text);
      oargs.cost = Decimal::parse(cost_text);
      oargs.delimiter = delim;
      if (*ote) return cmd_ote(common, oargs, spec, out);
      return cmd_pattern(common, oargs, spec, tol, out);
    }
    if (*stats) {
      if (values.empty() && file.empty()) throw ValidationError("stats needs --values or a file");
      return cmd_stats(common, values, file, title, shist, out);
    }
  } catch (const BudgetExceeded& e) {
    err << "refused: " << e.what() << '\n';
    return kBudget;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }
  err << app.help();
  return kValidation;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace poslim::cli
