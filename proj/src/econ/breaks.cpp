#include "vadecon/econ/breaks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vadecon/econ/ols.hpp"
#include "vadecon/errors.hpp"

namespace vadecon::econ {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

int BreakModelConfig::min_segment_length(int t_len) const {
  const int trim_len = static_cast<int>(
      std::ceil(trim_fraction * static_cast<double>(t_len)));
  return std::max(trim_len, ar_order + 2);
}

void BreakModelConfig::validate() const {
  if (max_breaks < 0) {
    throw ValidationError("break config: max_breaks must be >= 0");
  }
  if (!(trim_fraction > 0.0 && trim_fraction < 0.5)) {
    throw ValidationError("break config: trim_fraction must lie in (0, 0.5)");
  }
  if (ar_order < 0) {
    throw ValidationError("break config: ar_order must be >= 0");
  }
}

double segment_ssr(std::span<const double> xs, int begin, int end,
                   int ar_order) {
  const int rows = end - begin - ar_order;
  if (rows <= 0) return kInf;
  if (ar_order == 0) {
    // Mean fit.
    double mean = 0.0;
    for (int t = begin; t < end; ++t) mean += xs[static_cast<std::size_t>(t)];
    mean /= static_cast<double>(rows);
    double ssr = 0.0;
    for (int t = begin; t < end; ++t) {
      const double d = xs[static_cast<std::size_t>(t)] - mean;
      ssr += d * d;
    }
    return ssr;
  }
  Eigen::MatrixXd design(rows, ar_order + 1);
  Eigen::VectorXd y(rows);
  for (int r = 0; r < rows; ++r) {
    const int t = begin + ar_order + r;
    y(r) = xs[static_cast<std::size_t>(t)];
    design(r, 0) = 1.0;
    for (int i = 1; i <= ar_order; ++i) {
      design(r, i) = xs[static_cast<std::size_t>(t - i)];
    }
  }
  return projection_ssr(design, y);
}

namespace {

template <bool Parallel>
std::vector<double> cost_table_impl(std::span<const double> xs,
                                    int min_segment, int ar_order) {
  const int t_len = static_cast<int>(xs.size());
  std::vector<double> cost(static_cast<std::size_t>(t_len) *
                               static_cast<std::size_t>(t_len + 1),
                           kInf);
#pragma omp parallel for schedule(dynamic) if (Parallel)
  for (int begin = 0; begin < t_len; ++begin) {
    for (int end = begin + min_segment; end <= t_len; ++end) {
      cost[static_cast<std::size_t>(begin) *
               static_cast<std::size_t>(t_len + 1) +
           static_cast<std::size_t>(end)] =
          segment_ssr(xs, begin, end, ar_order);
    }
  }
  return cost;
}

SegmentFit fit_segment(std::span<const double> xs, int begin, int end,
                       int ar_order) {
  SegmentFit fit;
  fit.begin = begin;
  fit.end = end;
  fit.n_obs = end - begin - ar_order;
  if (ar_order == 0) {
    double mean = 0.0;
    for (int t = begin; t < end; ++t) mean += xs[static_cast<std::size_t>(t)];
    mean /= static_cast<double>(end - begin);
    fit.coefficients = {mean};
    fit.ssr = segment_ssr(xs, begin, end, 0);
    return fit;
  }
  const int rows = fit.n_obs;
  Eigen::MatrixXd design(rows, ar_order + 1);
  Eigen::VectorXd y(rows);
  for (int r = 0; r < rows; ++r) {
    const int t = begin + ar_order + r;
    y(r) = xs[static_cast<std::size_t>(t)];
    design(r, 0) = 1.0;
    for (int i = 1; i <= ar_order; ++i) {
      design(r, i) = xs[static_cast<std::size_t>(t - i)];
    }
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  Eigen::VectorXd beta = qr.solve(y);
  fit.coefficients.assign(beta.data(), beta.data() + beta.size());
  fit.ssr = (y - design * beta).squaredNorm();
  return fit;
}

}  // namespace

std::vector<double> segment_cost_table(std::span<const double> xs,
                                       int min_segment, int ar_order) {
  return cost_table_impl<true>(xs, min_segment, ar_order);
}

std::vector<double> segment_cost_table_serial(std::span<const double> xs,
                                              int min_segment, int ar_order) {
  return cost_table_impl<false>(xs, min_segment, ar_order);
}

BreakResult detect_breaks(std::span<const double> xs,
                          const BreakModelConfig& config) {
  config.validate();
  const int t_len = static_cast<int>(xs.size());
  for (double x : xs) {
    if (!std::isfinite(x)) {
      throw ValidationError("detect_breaks: input contains non-finite values");
    }
  }
  const int min_seg = config.min_segment_length(t_len);
  const int max_m = config.max_breaks;
  if (t_len < (max_m + 1) * min_seg) {
    throw DataError("detect_breaks: series of length " + std::to_string(t_len) +
                    " too short for " + std::to_string(max_m) +
                    " breaks with minimum segment length " +
                    std::to_string(min_seg));
  }

  const std::vector<double> cost =
      segment_cost_table(xs, min_seg, config.ar_order);
  const auto cost_at = [&](int begin, int end) {
    return cost[static_cast<std::size_t>(begin) *
                    static_cast<std::size_t>(t_len + 1) +
                static_cast<std::size_t>(end)];
  };

  // Suffix DP: best[j][s] = minimal SSR splitting [s, T) into j segments,
  // choosing the smallest first-segment end on ties so that reconstruction
  // from the left yields the lexicographically earliest break vector.
  const int max_segments = max_m + 1;
  std::vector<std::vector<double>> best(
      static_cast<std::size_t>(max_segments) + 1,
      std::vector<double>(static_cast<std::size_t>(t_len) + 1, kInf));
  std::vector<std::vector<int>> first_end(
      static_cast<std::size_t>(max_segments) + 1,
      std::vector<int>(static_cast<std::size_t>(t_len) + 1, -1));

  for (int s = 0; s <= t_len; ++s) {
    if (s < t_len) best[1][static_cast<std::size_t>(s)] = cost_at(s, t_len);
    first_end[1][static_cast<std::size_t>(s)] = t_len;
  }
  for (int j = 2; j <= max_segments; ++j) {
    for (int s = 0; s + j * min_seg <= t_len; ++s) {
      double best_ssr = kInf;
      int best_e = -1;
      const int e_lo = s + min_seg;
      const int e_hi = t_len - (j - 1) * min_seg;
      for (int e = e_lo; e <= e_hi; ++e) {
        const double c = cost_at(s, e);
        if (!(c < kInf)) continue;
        const double rest = best[static_cast<std::size_t>(j - 1)]
                                [static_cast<std::size_t>(e)];
        if (!(rest < kInf)) continue;
        const double total = c + rest;
        if (total < best_ssr) {
          best_ssr = total;
          best_e = e;
        }
      }
      best[static_cast<std::size_t>(j)][static_cast<std::size_t>(s)] = best_ssr;
      first_end[static_cast<std::size_t>(j)][static_cast<std::size_t>(s)] =
          best_e;
    }
  }

  BreakResult result;
  result.config = config;
  result.ssr_by_m.resize(static_cast<std::size_t>(max_m) + 1, kInf);
  result.bic_by_m.resize(static_cast<std::size_t>(max_m) + 1, kInf);
  result.breaks_by_m.resize(static_cast<std::size_t>(max_m) + 1);

  // SSRs at rounding-error scale are numerically perfect fits, not distinct
  // ones; flooring the BIC's variance term at the noise floor keeps extra
  // segments from winning on residual QR noise (a constant series must
  // select zero breaks).
  double sum_sq = 0.0;
  for (double x : xs) sum_sq += x * x;
  const double ssr_floor = 1e-20 * sum_sq + 1e-300;

  for (int m = 0; m <= max_m; ++m) {
    const int segments = m + 1;
    const double ssr = best[static_cast<std::size_t>(segments)][0];
    result.ssr_by_m[static_cast<std::size_t>(m)] = ssr;
    if (!(ssr < kInf)) continue;

    std::vector<int> breaks;
    int s = 0;
    for (int j = segments; j > 1; --j) {
      const int e =
          first_end[static_cast<std::size_t>(j)][static_cast<std::size_t>(s)];
      breaks.push_back(e);
      s = e;
    }
    result.breaks_by_m[static_cast<std::size_t>(m)] = breaks;

    // Effective residual count: each regime conditions on its first
    // ar_order points. Parameters: (p+1) per regime plus the break dates.
    const double t_eff =
        static_cast<double>(t_len - segments * config.ar_order);
    const double q =
        static_cast<double>(segments * (config.ar_order + 1) + m);
    result.bic_by_m[static_cast<std::size_t>(m)] =
        t_eff * std::log(std::max(ssr, ssr_floor) / t_eff) +
        q * std::log(t_eff);
  }

  int chosen = 0;
  double best_bic = kInf;
  for (int m = 0; m <= max_m; ++m) {
    const double b = result.bic_by_m[static_cast<std::size_t>(m)];
    if (b < best_bic) {
      best_bic = b;
      chosen = m;
    }
  }
  result.n_breaks = chosen;
  result.break_indices = result.breaks_by_m[static_cast<std::size_t>(chosen)];

  int seg_start = 0;
  for (std::size_t i = 0; i <= result.break_indices.size(); ++i) {
    const int seg_end = i < result.break_indices.size()
                            ? result.break_indices[i]
                            : t_len;
    result.segment_fits.push_back(
        fit_segment(xs, seg_start, seg_end, config.ar_order));
    seg_start = seg_end;
  }
  return result;
}

BreakResult detect_breaks(std::span<const double> xs, YearMonth start,
                          const BreakModelConfig& config) {
  BreakResult result = detect_breaks(xs, config);
  result.break_dates.reserve(result.break_indices.size());
  for (int idx : result.break_indices) {
    result.break_dates.push_back(YearMonth::from_index(start.index() + idx));
  }
  return result;
}

}  // namespace vadecon::econ
