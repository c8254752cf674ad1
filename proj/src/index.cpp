#include "sicheck/index.hpp"

#include "sicheck/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace sicheck {

Eigen::VectorXd fit_index_ols(const Dataset& data)
{
  const Eigen::Index n = data.n();
  const Eigen::Index p = data.p();
  if (data.x.rows() != n) {
    throw DimensionMismatch("fit_index_ols: covariate rows do not match responses");
  }
  if (p < 1) {
    throw InvalidArgument("fit_index_ols: at least one covariate is required");
  }
  if (n <= p + 1) {
    throw InsufficientData("fit_index_ols: need n > p + 1 observations, got n = " +
                           std::to_string(n) + ", p = " + std::to_string(p));
  }
  if (!data.x.allFinite() || !data.y.allFinite()) {
    throw InvalidArgument("fit_index_ols: non-finite data");
  }

  Eigen::MatrixXd design(n, p + 1);
  design.col(0).setOnes();
  design.rightCols(p) = data.x;

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < p + 1) {
    throw SingularDesign("fit_index_ols: design matrix with intercept has rank " +
                         std::to_string(qr.rank()) + " < " + std::to_string(p + 1));
  }
  const Eigen::VectorXd coef = qr.solve(data.y);
  Eigen::VectorXd slope = coef.tail(p);

  // Fitted variation relative to the response scale; catches constant y
  // whose slope is rounding noise.
  const Eigen::MatrixXd centered = data.x.rowwise() - data.x.colwise().mean();
  const double fitted = (centered * slope).norm();
  if (slope.norm() == 0.0 || !(fitted > 1e-10 * data.y.norm())) {
    throw DegenerateDirection("fit_index_ols: slope vector is zero, no direction to estimate");
  }

  slope /= slope.norm();
  for (Eigen::Index k = 0; k < p; ++k) {
    if (std::abs(slope(k)) > 1e-10) {
      if (slope(k) < 0.0) {
        slope = -slope;
      }
      break;
    }
  }
  return slope;
}

Eigen::VectorXd project(const Dataset& data, const Eigen::VectorXd& beta)
{
  if (beta.size() != data.p()) {
    throw DimensionMismatch("project: beta has dimension " + std::to_string(beta.size()) +
                            " but data has p = " + std::to_string(data.p()));
  }
  return data.x * beta;
}

Eigen::VectorXd rank_transform(const Eigen::VectorXd& t)
{
  const Eigen::Index n = t.size();
  if (n == 0) {
    throw InvalidArgument("rank_transform: empty input");
  }
  if (!t.allFinite()) {
    throw InvalidArgument("rank_transform: non-finite value");
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(),
            [&t](Eigen::Index a, Eigen::Index b) { return t(a) < t(b); });

  Eigen::VectorXd u(n);
  const double dn = static_cast<double>(n);
  std::size_t k = 0;
  while (k < order.size()) {
    // [k, end) is a block of tied values; all of them receive rank `end`.
    std::size_t end = k + 1;
    while (end < order.size() && t(order[end]) == t(order[k])) {
      ++end;
    }
    const double value = static_cast<double>(end) / dn;
    for (std::size_t m = k; m < end; ++m) {
      u(order[m]) = value;
    }
    k = end;
  }
  return u;
}

IndexFit make_index_fit(const Dataset& data, const Eigen::VectorXd& beta)
{
  IndexFit fit;
  fit.beta_hat = beta;
  fit.projections = project(data, beta);
  fit.ranks_u = rank_transform(fit.projections);
  return fit;
}

IndexFit fit_index(const Dataset& data)
{
  return make_index_fit(data, fit_index_ols(data));
}

} // namespace sicheck
