#pragma once

#include "poslim/ote.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace poslim {

struct Histogram {
  std::vector<double> edges;  ///< bins are (edges[i], edges[i+1]]
  std::vector<std::int64_t> counts;
};

struct HistogramSpec {
  /// Zero picks 7 bins for up to 10 samples and Sturges' rule above that.
  int bins = 0;
  /// Width max/10 with the top edge at max and as many bins as the minimum
  /// needs, the layout of the classic text report.
  bool anchored_at_max = false;
};

struct EcdfPoint {
  double value;
  double fraction;
};

struct PmfPoint {
  double value;
  std::int64_t count;
};

struct OteStats {
  std::int64_t count = 0;
  double mean = 0;
  double min = 0;
  std::int64_t min_count = 0;
  double max = 0;
  std::int64_t max_count = 0;
  double variance = 0;  ///< n-1 divisor
  double std_dev = 0;
  double skewness = 0;         ///< adjusted Fisher-Pearson G1
  double excess_kurtosis = 0;  ///< bias-corrected G2
  Histogram histogram;
  std::vector<EcdfPoint> ecdf;  ///< one point per distinct value
  std::vector<PmfPoint> epmf;   ///< distinct values and their counts
};

/// Throws InsufficientData below two samples. Skewness needs three samples
/// and kurtosis four; smaller samples leave them NaN.
OteStats sample_stats(std::span<const double> samples, const HistogramSpec& hist = {});

Histogram histogram(std::span<const double> samples, const HistogramSpec& spec = {});

enum class OteMetric { Profit, Duration, Ticks, Volume };
std::string to_string(OteMetric m);
OteMetric parse_metric(const std::string& text);

/// Values of one metric over the records; the open record only when asked.
std::vector<double> metric_values(std::span<const OteRecord> records, OteMetric metric, bool include_open = false);

OteStats ote_stats(std::span<const OteRecord> records, OteMetric metric, const HistogramSpec& hist = {},
                   bool include_open = false);

/// One row of the profit frequency table on the permitted grid.
struct GridFrequency {
  std::int64_t index;  ///< 1-based grid position
  Decimal profit;
  std::int64_t count;
  std::int64_t cumulative;
  double fraction;
  double cumulative_fraction;
};

/// Every grid value from the minimum up to the largest observed profit.
/// Throws ValidationError if a profit is off the grid.
std::vector<GridFrequency> profit_epmf(std::span<const OteRecord> records, Decimal fc, Decimal cost,
                                       const ContractSpec& spec, bool include_open = false);

/// The plain-text block: mean, size, extremes, moments, then histogram rows.
std::string format_stats_block(const std::string& title, const OteStats& s);

}  // namespace poslim
