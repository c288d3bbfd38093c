#pragma once

#include <Eigen/Dense>
#include <vector>

namespace vadecon::econ {

struct OlsFit {
  std::vector<double> coefficients;
  std::vector<double> std_errors;
  std::vector<double> residuals;
  double ssr = 0.0;
  double r_squared = 0.0;
  int n = 0;  // observations
  int k = 0;  // parameters

  double t_stat(int j) const { return coefficients.at(static_cast<std::size_t>(j)) / std_errors.at(static_cast<std::size_t>(j)); }
};

// Least-squares fit via column-pivoted QR. The design is expected to carry
// its own intercept column. Requires rows >= cols + 1 and full column rank;
// rank deficiency raises NumericError.
OlsFit ols(const Eigen::MatrixXd& design, const Eigen::VectorXd& y);

// SSR of the least-squares projection, tolerant of rank-deficient designs
// (the projection onto the column space is still well defined). Used by the
// break search, where degenerate segments must cost, not throw.
double projection_ssr(const Eigen::MatrixXd& design, const Eigen::VectorXd& y);

}  // namespace vadecon::econ
