#include "poslim/ote_stats.hpp"

#include "poslim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace poslim {

Histogram histogram(std::span<const double> samples, const HistogramSpec& spec) {
  Histogram h;
  if (samples.empty()) return h;
  const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
  const double lo = *lo_it, hi = *hi_it;
  int bins = spec.bins;
  double width = 0, first = lo;
  if (spec.anchored_at_max && hi > 0) {
    width = hi / 10;
    bins = int(std::ceil((hi - lo) / width - 1e-12));
    if (bins < 1) bins = 1;
    // A sample on the lowest edge would fall outside the open bound.
    if (hi - bins * width >= lo - 1e-12 * std::abs(hi)) ++bins;
    first = hi - bins * width;
  } else {
    if (bins <= 0)
      bins = samples.size() <= 10 ? 7 : int(std::ceil(std::log2(double(samples.size())))) + 1;
    width = (hi - lo) / bins;
    if (width == 0) width = 1;
  }
  for (int b = 0; b <= bins; ++b) h.edges.push_back(b == bins ? hi : first + b * width);
  if (!spec.anchored_at_max) h.edges.front() = lo;
  h.counts.assign(std::size_t(bins), 0);
  for (double x : samples) {
    // The first bin also takes the minimum when the lowest edge equals it.
    int b = int(std::ceil((x - first) / width)) - 1;
    b = std::clamp(b, 0, bins - 1);
    while (b > 0 && x <= h.edges[std::size_t(b)]) --b;
    while (b < bins - 1 && x > h.edges[std::size_t(b + 1)]) ++b;
    ++h.counts[std::size_t(b)];
  }
  return h;
}

OteStats sample_stats(std::span<const double> xs, const HistogramSpec& hist) {
  const auto n = xs.size();
  if (n < 2) throw InsufficientData("statistics need at least 2 samples");
  OteStats s;
  s.count = std::int64_t(n);
  double sum = 0;
  for (double x : xs) sum += x;
  s.mean = sum / double(n);
  s.min = *std::min_element(xs.begin(), xs.end());
  s.max = *std::max_element(xs.begin(), xs.end());
  double m2 = 0, m3 = 0, m4 = 0;
  for (double x : xs) {
    const double d = x - s.mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
    s.min_count += x == s.min;
    s.max_count += x == s.max;
  }
  const double dn = double(n);
  s.variance = m2 / (dn - 1);
  s.std_dev = std::sqrt(s.variance);
  m2 /= dn;
  m3 /= dn;
  m4 /= dn;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  s.skewness = nan;
  s.excess_kurtosis = nan;
  if (n >= 3 && m2 > 0) s.skewness = std::sqrt(dn * (dn - 1)) / (dn - 2) * m3 / std::pow(m2, 1.5);
  if (n >= 4 && m2 > 0) {
    const double g2 = m4 / (m2 * m2) - 3;
    s.excess_kurtosis = (dn - 1) / ((dn - 2) * (dn - 3)) * ((dn + 1) * g2 + 6);
  }
  s.histogram = histogram(xs, hist);

  std::map<double, std::int64_t> counts;
  for (double x : xs) ++counts[x];
  std::int64_t running = 0;
  for (const auto& [v, c] : counts) {
    running += c;
    s.epmf.push_back({v, c});
    s.ecdf.push_back({v, double(running) / dn});
  }
  return s;
}

std::string to_string(OteMetric m) {
  switch (m) {
    case OteMetric::Profit: return "profit";
    case OteMetric::Duration: return "duration";
    case OteMetric::Ticks: return "ticks";
    case OteMetric::Volume: return "volume";
  }
  return "?";
}

OteMetric parse_metric(const std::string& text) {
  for (auto m : {OteMetric::Profit, OteMetric::Duration, OteMetric::Ticks, OteMetric::Volume})
    if (to_string(m) == text) return m;
  throw ValidationError("unknown metric '" + text + "'");
}

std::vector<double> metric_values(std::span<const OteRecord> records, OteMetric metric, bool include_open) {
  std::vector<double> out;
  for (const auto& r : records) {
    if (!r.closed && !include_open) continue;
    switch (metric) {
      case OteMetric::Profit: out.push_back(r.pl.to_double()); break;
      case OteMetric::Duration: out.push_back(r.duration); break;
      case OteMetric::Ticks: out.push_back(double(r.tick_count)); break;
      case OteMetric::Volume: out.push_back(double(r.volume)); break;
    }
  }
  return out;
}

OteStats ote_stats(std::span<const OteRecord> records, OteMetric metric, const HistogramSpec& hist,
                   bool include_open) {
  const auto values = metric_values(records, metric, include_open);
  return sample_stats(values, hist);
}

std::vector<GridFrequency> profit_epmf(std::span<const OteRecord> records, Decimal fc, Decimal cost,
                                       const ContractSpec& spec, bool include_open) {
  std::map<std::int64_t, std::int64_t> by_index;
  std::int64_t total = 0, top = -1;
  for (const auto& r : records) {
    if (!r.closed && !include_open) continue;
    const auto i = grid_index(r.pl, fc, cost, spec);
    if (!i) throw ValidationError("profit " + r.pl.exact_str(2) + " is off the permitted grid");
    ++by_index[*i];
    ++total;
    top = std::max(top, *i);
  }
  std::vector<GridFrequency> out;
  if (total == 0) return out;
  const auto grid = permitted_profit_grid(fc, cost, spec, std::size_t(top + 1));
  std::int64_t running = 0;
  for (std::int64_t i = 0; i <= top; ++i) {
    const auto c = by_index.count(i) ? by_index[i] : 0;
    running += c;
    out.push_back({i + 1, grid[std::size_t(i)], c, running, double(c) / double(total),
                   double(running) / double(total)});
  }
  return out;
}

namespace {

std::string g(double v, int digits = 9) {
  std::ostringstream os;
  os.precision(digits);
  os << v;
  return os.str();
}

}  // namespace

std::string format_stats_block(const std::string& title, const OteStats& s) {
  std::ostringstream os;
  os << title << '\n';
  os << "Mean                = " << g(s.mean) << '\n';
  os << "Samples size        = " << s.count << '\n';
  os << "Maximum value       = " << g(s.max) << '\n';
  os << "Maximum value count = " << s.max_count << '\n';
  os << "Minimum value       = " << g(s.min) << '\n';
  os << "Minimum value count = " << s.min_count << '\n';
  os << "Variance            = " << g(s.variance) << '\n';
  os << "Std. deviation      = " << g(s.std_dev) << '\n';
  os << "Skewness            = " << g(s.skewness) << '\n';
  os << "Excess kurtosis     = " << g(s.excess_kurtosis) << '\n';
  for (std::size_t b = 0; b < s.histogram.counts.size(); ++b)
    os << b << " (" << g(s.histogram.edges[b], 6) << ", " << g(s.histogram.edges[b + 1], 6) << "] "
       << s.histogram.counts[b] << '\n';
  return os.str();
}

}  // namespace poslim
