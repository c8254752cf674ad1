#pragma once

#include "sicheck/dataset.hpp"

#include <Eigen/Dense>

namespace sicheck {

//! Estimated projection direction together with the projected values and
//! their normalized ranks.
struct IndexFit
{
  Eigen::VectorXd beta_hat;
  Eigen::VectorXd projections;
  Eigen::VectorXd ranks_u;
};

//! Least squares of y on (1, x); the slope vector is normalized to unit
//! length with its first component of magnitude above 1e-10 made positive.
//!
//! Throws InsufficientData when n <= p + 1, SingularDesign when (1, x) is
//! rank deficient and DegenerateDirection when the slope vanishes.
Eigen::VectorXd fit_index_ols(const Dataset& data);

//! x * beta, one entry per row.
Eigen::VectorXd project(const Dataset& data, const Eigen::VectorXd& beta);

//! Empirical distribution function evaluated at each entry:
//! #{j : t_j <= t_i} / n. Ties share the largest rank.
Eigen::VectorXd rank_transform(const Eigen::VectorXd& t);

//! Builds the full fit (projections and ranks) for a given direction.
//! `beta` is stored as given.
IndexFit make_index_fit(const Dataset& data, const Eigen::VectorXd& beta);

//! fit_index_ols followed by make_index_fit.
IndexFit fit_index(const Dataset& data);

} // namespace sicheck
