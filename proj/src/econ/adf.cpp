#include "vadecon/econ/adf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vadecon/econ/critical_values.hpp"
#include "vadecon/econ/ols.hpp"
#include "vadecon/errors.hpp"

namespace vadecon::econ {

namespace {

// Builds the ADF design over rows t = first_row .. T-1 (index into xs) and
// returns the fit. Column order: intercept, [trend], y_{t-1}, dy lags.
OlsFit fit_adf(std::span<const double> xs, DeterministicSpec spec, int lags,
               int first_row) {
  const int t_len = static_cast<int>(xs.size());
  const int rows = t_len - first_row;
  const int det_cols = spec == DeterministicSpec::kConstantTrend ? 2 : 1;
  const int cols = det_cols + 1 + lags;
  Eigen::MatrixXd design(rows, cols);
  Eigen::VectorXd dy(rows);
  for (int r = 0; r < rows; ++r) {
    const int t = first_row + r;
    dy(r) = xs[static_cast<std::size_t>(t)] - xs[static_cast<std::size_t>(t - 1)];
    design(r, 0) = 1.0;
    if (det_cols == 2) design(r, 1) = static_cast<double>(r + 1);
    design(r, det_cols) = xs[static_cast<std::size_t>(t - 1)];
    for (int i = 1; i <= lags; ++i) {
      design(r, det_cols + i) = xs[static_cast<std::size_t>(t - i)] -
                                xs[static_cast<std::size_t>(t - i - 1)];
    }
  }
  return ols(design, dy);
}

double aic(const OlsFit& fit) {
  const double n = static_cast<double>(fit.n);
  const double ssr = std::max(fit.ssr, 1e-300);
  return n * std::log(ssr / n) + 2.0 * static_cast<double>(fit.k);
}

}  // namespace

bool AdfResult::rejected(double level) const {
  return std::find(rejected_at.begin(), rejected_at.end(), level) !=
         rejected_at.end();
}

AdfResult adf_test(std::span<const double> xs, DeterministicSpec spec,
                   std::optional<int> max_lags) {
  const int t_len = static_cast<int>(xs.size());
  for (double x : xs) {
    if (!std::isfinite(x)) {
      throw ValidationError("adf_test: input contains non-finite values");
    }
  }

  int lag_cap;
  if (max_lags.has_value()) {
    lag_cap = *max_lags;
    if (lag_cap < 0) throw ValidationError("adf_test: max_lags must be >= 0");
    if (t_len < 15 + lag_cap) {
      throw DataError("adf_test: series too short for max_lags=" +
                      std::to_string(lag_cap) + " (need >= " +
                      std::to_string(15 + lag_cap) + ", have " +
                      std::to_string(t_len) + ")");
    }
  } else {
    lag_cap = static_cast<int>(
        std::floor(12.0 * std::pow(static_cast<double>(t_len) / 100.0, 0.25)));
    lag_cap = std::max(0, std::min(lag_cap, t_len - 15));
    if (t_len < 15) {
      throw DataError("adf_test: series too short (need >= 15, have " +
                      std::to_string(t_len) + ")");
    }
  }

  const auto wrap_singular = [](const char* stage, const NumericError& e) {
    return NumericError(std::string("adf_test: degenerate regression (") +
                        stage + "): " + e.what());
  };

  // Lag order by minimal AIC on a common sample, so likelihoods are
  // comparable; ties pick the smaller order.
  int best_lag = 0;
  double best_aic = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= lag_cap; ++k) {
    OlsFit fit;
    try {
      fit = fit_adf(xs, spec, k, lag_cap + 1);
    } catch (const NumericError& e) {
      throw wrap_singular("lag selection", e);
    }
    const double a = aic(fit);
    if (a < best_aic) {
      best_aic = a;
      best_lag = k;
    }
  }

  OlsFit fit;
  try {
    fit = fit_adf(xs, spec, best_lag, best_lag + 1);
  } catch (const NumericError& e) {
    throw wrap_singular("final fit", e);
  }

  const int gamma_col = spec == DeterministicSpec::kConstantTrend ? 2 : 1;

  AdfResult result;
  result.spec = spec;
  result.lags_used = best_lag;
  result.tau_statistic = fit.t_stat(gamma_col);

  const AdfCriticalValues& cv = spec == DeterministicSpec::kConstantTrend
                                    ? kAdfConstantTrend
                                    : kAdfConstant;
  result.critical_values = {{0.01, cv.at_1pct},
                            {0.05, cv.at_5pct},
                            {0.10, cv.at_10pct}};
  for (const auto& [level, value] : result.critical_values) {
    if (result.tau_statistic < value) result.rejected_at.push_back(level);
  }
  return result;
}

}  // namespace vadecon::econ
