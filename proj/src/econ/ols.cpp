#include "vadecon/econ/ols.hpp"

#include <algorithm>
#include <cmath>

#include "vadecon/errors.hpp"

namespace vadecon::econ {

OlsFit ols(const Eigen::MatrixXd& design, const Eigen::VectorXd& y) {
  const auto n = design.rows();
  const auto k = design.cols();
  if (n != y.size()) {
    throw ValidationError("ols: design rows and response length differ");
  }
  if (n < k + 1) {
    throw DataError("ols: need at least cols+1 observations, got " +
                    std::to_string(n) + " rows for " + std::to_string(k) +
                    " parameters");
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < k) {
    throw NumericError("ols: design matrix is rank deficient (rank " +
                       std::to_string(qr.rank()) + " of " + std::to_string(k) +
                       ")");
  }

  Eigen::VectorXd beta = qr.solve(y);
  Eigen::VectorXd resid = y - design * beta;

  OlsFit fit;
  fit.n = static_cast<int>(n);
  fit.k = static_cast<int>(k);
  fit.coefficients.assign(beta.data(), beta.data() + k);
  fit.residuals.assign(resid.data(), resid.data() + n);
  fit.ssr = resid.squaredNorm();

  const double mean_y = y.mean();
  const double sst = (y.array() - mean_y).square().sum();
  // Constant response with a perfect fit counts as fully explained.
  fit.r_squared = sst > 0.0 ? std::clamp(1.0 - fit.ssr / sst, 0.0, 1.0) : 1.0;

  const double dof = static_cast<double>(n - k);
  const double sigma2 = dof > 0.0 ? fit.ssr / dof : 0.0;
  Eigen::MatrixXd xtx_inv = (design.transpose() * design)
                                .ldlt()
                                .solve(Eigen::MatrixXd::Identity(k, k));
  fit.std_errors.resize(static_cast<std::size_t>(k));
  for (Eigen::Index j = 0; j < k; ++j) {
    fit.std_errors[static_cast<std::size_t>(j)] =
        std::sqrt(std::max(0.0, sigma2 * xtx_inv(j, j)));
  }
  return fit;
}

double projection_ssr(const Eigen::MatrixXd& design, const Eigen::VectorXd& y) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  Eigen::VectorXd beta = qr.solve(y);
  return (y - design * beta).squaredNorm();
}

}  // namespace vadecon::econ
