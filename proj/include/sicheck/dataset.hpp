#pragma once

#include <Eigen/Dense>

namespace sicheck {

//! Covariates (one row per observation) and responses.
struct Dataset
{
  Eigen::MatrixXd x;
  Eigen::VectorXd y;

  Eigen::Index n() const { return y.size(); }
  Eigen::Index p() const { return x.cols(); }
};

} // namespace sicheck
