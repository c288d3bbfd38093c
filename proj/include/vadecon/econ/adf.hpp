#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

namespace vadecon::econ {

enum class DeterministicSpec { kConstant, kConstantTrend };

struct AdfResult {
  double tau_statistic = 0.0;
  int lags_used = 0;
  DeterministicSpec spec = DeterministicSpec::kConstant;
  // Significance level -> critical value, e.g. 0.05 -> -2.86154.
  std::map<double, double> critical_values;
  // Levels at which the unit root is rejected (tau below the critical
  // value); rejection at 1% implies rejection at 5% and 10%.
  std::vector<double> rejected_at;

  bool rejected(double level) const;
};

// Augmented Dickey-Fuller regression
//   dy_t = alpha (+ delta*t) + gamma*y_{t-1} + sum_i phi_i*dy_{t-i} + e_t
// with the lag order chosen by minimal AIC over 0..max_lags on a common
// estimation sample, then refit on the maximal sample for the chosen lag.
// Default max_lags follows Schwert: floor(12*(T/100)^0.25), clamped so the
// series stays long enough. tau is the t-statistic of gamma, judged against
// asymptotic critical values.
AdfResult adf_test(std::span<const double> xs, DeterministicSpec spec,
                   std::optional<int> max_lags = std::nullopt);

}  // namespace vadecon::econ
