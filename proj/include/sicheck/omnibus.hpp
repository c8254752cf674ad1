#pragma once

#include "sicheck/dataset.hpp"
#include "sicheck/index.hpp"
#include "sicheck/smoother.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace sicheck {

//! Finite set of frequencies gamma over which the characteristic-function
//! process is maximized. Always contains 0 and is closed under negation.
struct GammaGrid
{
  std::vector<Eigen::VectorXd> points;
  double bound = 3.0;
  int per_axis = 7;
  //! "dense" (tensor grid) or "halton" (quasi-random symmetric points).
  std::string layout = "dense";
  //! Evaluate gamma^T z on covariates centered and scaled to unit variance.
  bool standardize = true;

  std::size_t size() const { return points.size(); }
};

inline constexpr std::size_t kMaxDenseGridPoints = 2401;
inline constexpr std::size_t kHaltonPairs = 1000;

//! Tensor grid of `per_axis` equispaced values in [-bound, bound] per
//! coordinate when it has at most 2401 points; otherwise the origin plus
//! 1000 Halton points and their negations.
GammaGrid make_gamma_grid(Eigen::Index p, double bound = 3.0, int per_axis = 7);

//! The origin plus the points whose first nonzero coordinate is positive.
//! Conjugate symmetry makes the sup over this half equal the full sup.
std::vector<Eigen::VectorXd> half_space(const std::vector<Eigen::VectorXd>& points);

//! Columns centered to mean zero and scaled to unit sample variance.
Eigen::MatrixXd standardize_columns(const Eigen::MatrixXd& x);

//! n^{-1/2} sum_j eps_j exp(i gamma^T x_j).
std::complex<double> cf_process(const Eigen::VectorXd& eps_hat, const Eigen::MatrixXd& x,
                                const Eigen::VectorXd& gamma);

//! max over the grid of |cf_process|. Uses the points as given; callers
//! apply standardization.
double sup_statistic(const Eigen::VectorXd& eps_hat, const Eigen::MatrixXd& x,
                     const std::vector<Eigen::VectorXd>& points);

//! W_j(gamma) - Wbar^{(j)}(gamma, U_j) for every observation (rows) and
//! grid point (columns).
Eigen::MatrixXcd centered_cf_weights(const Eigen::MatrixXd& x, const IndexFit& fit,
                                     const std::vector<Eigen::VectorXd>& points,
                                     const SmootherConfig& cfg);

//! sup over the columns of |n^{-1/2} sum_i e_i eps_i centered_(i, gamma)|.
double bootstrap_replicate(const Eigen::VectorXd& eps_hat, const Eigen::MatrixXcd& centered_w,
                           const Eigen::VectorXd& e);

struct BootstrapConfig
{
  int m = 1000;
  double alpha = 0.05;
  std::uint64_t seed = 271828;

  //! Throws ConfigError unless m >= 100, alpha in (0, 1) and m * alpha >= 1.
  void validate() const;
};

//! One-based position floor((1 - alpha) m) of the critical value among the
//! ascending bootstrap replicates.
int critical_order_statistic(int m, double alpha);

struct OmnibusReport
{
  double t_tilde = 0.0;
  double critical_value = 0.0;
  double p_value = 1.0;
  bool reject = false;
  double alpha = 0.05;
  int m = 0;
  std::uint64_t seed = 0;
  double h = 0.0;
  Eigen::Index n = 0;
  Eigen::VectorXd argmax_gamma;
  std::size_t grid_points = 0;
  double grid_bound = 0.0;
  int grid_per_axis = 0;
  std::string grid_layout;
  bool grid_standardized = true;
  Eigen::Index empty_windows = 0;
};

//! Sup statistic calibrated by m multiplier-bootstrap replicates with
//! standard normal multipliers. Identical inputs and seed give identical
//! reports.
OmnibusReport omnibus_test(const Dataset& data, const IndexFit& fit, const SmootherConfig& cfg,
                           const GammaGrid& grid, const BootstrapConfig& boot);

} // namespace sicheck
