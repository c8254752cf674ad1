#pragma once

#include "sicheck/dataset.hpp"
#include "sicheck/index.hpp"
#include "sicheck/smoother.hpp"
#include "sicheck/weights.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace sicheck {

//! n^{-1/2} sum_j eps_j w_j.
double score_statistic(const Eigen::VectorXd& eps_hat, const Eigen::VectorXd& w_values);

//! (1/n) sum_j eps_j^2 (w_j - wbar_j)^2, the plug-in variance of the score.
double variance_estimate(const Eigen::VectorXd& eps_hat, const Eigen::VectorXd& w_values,
                         const Eigen::VectorXd& w_smoothed);

//! Entry (a, b) is (1/n) sum_k eps_k^2 (s_ka - sbar_ka)(s_kb - sbar_kb).
Eigen::MatrixXd covariance_matrix(const Eigen::VectorXd& eps_hat, const Eigen::MatrixXd& s_values,
                                  const Eigen::MatrixXd& s_smoothed);

struct ScoreReport
{
  double t_hat = 0.0;
  double sigma_n2 = 0.0;
  double t_bar = 0.0;
  double critical_value = 0.0; // lambda_{1 - alpha/2}
  double p_value = 1.0;
  bool reject = false;
  double alpha = 0.05;
  double h = 0.0;
  Eigen::Index n = 0;
  std::string weight;
  Eigen::Index empty_windows = 0;
};

//! Normal calibration of an already computed score and variance. Throws
//! DegenerateVariance when sigma_n2 is not positive.
ScoreReport calibrate_score(double t_hat, double sigma_n2, double alpha);

//! Two-sided standardized score test with weight `w`.
ScoreReport standardized_test(const Dataset& data, const IndexFit& fit, const WeightSpec& w,
                              const SmootherConfig& cfg, double alpha);

struct MaximinReport
{
  Eigen::VectorXd t_vec;
  Eigen::MatrixXd sigma_mat;
  double statistic = 0.0;
  double c_alpha = 0.0;
  double p_value = 1.0;
  bool reject = false;
  double alpha = 0.05;
  double h = 0.0;
  Eigen::Index n = 0;
  std::vector<std::string> weights;
  Eigen::Index empty_windows = 0;

  Eigen::Index d() const { return t_vec.size(); }
};

//! Chi-square calibration of t^T sigma^{-1} t. `labels` name the weights for
//! error messages. Throws NearSingularCovariance when the condition number
//! of sigma exceeds 1e12.
MaximinReport calibrate_maximin(const Eigen::VectorXd& t_vec, const Eigen::MatrixXd& sigma,
                                double alpha, const std::vector<std::string>& labels = {});

//! Chi-square test on the vector of scores for the weight family `specs`.
//! A characteristic-function weight contributes its cosine and sine parts.
MaximinReport maximin_test(const Dataset& data, const IndexFit& fit,
                           const std::vector<WeightSpec>& specs, const SmootherConfig& cfg,
                           double alpha);

} // namespace sicheck
