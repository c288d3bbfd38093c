#pragma once

#include <optional>
#include <span>
#include <string>

namespace vadecon::econ {

// Sample Pearson correlation. The optional-valued overload drops pairs
// where either side is missing. Requires >= 3 complete pairs and
// non-constant inputs.
double pearson(std::span<const double> x, std::span<const double> y);
double pearson(std::span<const std::optional<double>> x,
               std::span<const std::optional<double>> y);

enum class PValueMethod {
  kAuto,    // exact when max(n1, n2) <= 8 and there are no ties
  kExact,   // full enumeration of the rank distribution (tie-free only)
  kNormal,  // normal approximation with tie and continuity corrections
};

struct TestResult {
  double statistic = 0.0;  // U for the first sample
  double p_value = 1.0;    // two-sided
  std::string method;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  bool exact = false;
};

// Mann-Whitney U rank test for two independent samples; midranks under
// ties. U_a + U_b = n1*n2 holds for every input.
TestResult mann_whitney_u(std::span<const double> a, std::span<const double> b,
                          PValueMethod method = PValueMethod::kAuto);

// Standard normal CDF.
double normal_cdf(double z);

}  // namespace vadecon::econ
