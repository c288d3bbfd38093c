#pragma once

#include <array>

namespace vadecon::econ {

// Asymptotic Dickey-Fuller tau critical values, transcribed from
// MacKinnon (2010), "Critical Values for Cointegration Tests", QED working
// paper 1227, Table 2 (beta_inf column, one variable). Finite-sample
// response-surface corrections are intentionally not applied.
struct AdfCriticalValues {
  double at_1pct;
  double at_5pct;
  double at_10pct;
};

inline constexpr AdfCriticalValues kAdfConstant = {-3.43035, -2.86154,
                                                   -2.56677};
inline constexpr AdfCriticalValues kAdfConstantTrend = {-3.95877, -3.41049,
                                                        -3.12705};

inline constexpr std::array<double, 3> kAdfLevels = {0.01, 0.05, 0.10};

}  // namespace vadecon::econ
