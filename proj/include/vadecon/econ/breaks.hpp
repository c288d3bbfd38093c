#pragma once

#include <optional>
#include <span>
#include <vector>

#include "vadecon/dates.hpp"

namespace vadecon::econ {

// Per-regime model: intercept + AR(p) fit within each segment, the first p
// observations of a segment conditioning the lags.
struct BreakModelConfig {
  int max_breaks = 5;
  double trim_fraction = 0.15;
  int ar_order = 1;

  // max(ceil(trim * T), ar_order + 2)
  int min_segment_length(int t_len) const;
  void validate() const;
};

struct SegmentFit {
  int begin = 0;  // first index of the regime
  int end = 0;    // one past the last index
  std::vector<double> coefficients;  // intercept, then AR terms
  double ssr = 0.0;
  int n_obs = 0;  // rows entering the residual sum (length - ar_order)
};

struct BreakResult {
  // Index i means a new regime starts at slot i; strictly increasing.
  std::vector<int> break_indices;
  // Filled by the series-level overload (start month + index).
  std::vector<YearMonth> break_dates;
  int n_breaks = 0;
  std::vector<double> ssr_by_m;  // minimal SSR for m = 0..max_breaks
  std::vector<double> bic_by_m;
  std::vector<std::vector<int>> breaks_by_m;
  std::vector<SegmentFit> segment_fits;  // for the selected partition
  BreakModelConfig config;
};

// Cost of fitting one segment [begin, end): SSR of the within-segment
// intercept + AR(p) regression. Tolerates rank-deficient designs (constant
// stretches cost their projection SSR instead of throwing).
double segment_ssr(std::span<const double> xs, int begin, int end,
                   int ar_order);

// Lower-triangle-free flat table: cost[begin * (T+1) + end] for all
// admissible segments (end - begin >= min_segment). Inadmissible cells hold
// +infinity. The parallel variant distributes rows over OpenMP threads and
// is bit-identical to the serial one for any thread count.
std::vector<double> segment_cost_table(std::span<const double> xs,
                                       int min_segment, int ar_order);
std::vector<double> segment_cost_table_serial(std::span<const double> xs,
                                              int min_segment, int ar_order);

// Global SSR minimization over all partitions into m+1 segments for each
// m = 0..max_breaks via dynamic programming, with BIC selecting the break
// count. Ties favor fewer breaks, then lexicographically earliest break
// positions.
BreakResult detect_breaks(std::span<const double> xs,
                          const BreakModelConfig& config);

// Same, reading values from a gap-free span of a monthly series and
// translating break indices into calendar months.
BreakResult detect_breaks(std::span<const double> xs, YearMonth start,
                          const BreakModelConfig& config);

}  // namespace vadecon::econ
