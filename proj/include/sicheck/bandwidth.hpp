#pragma once

#include "sicheck/dataset.hpp"
#include "sicheck/index.hpp"
#include "sicheck/smoother.hpp"

#include <Eigen/Dense>

#include <vector>

namespace sicheck {

//! Weighted leave-one-out criterion
//!   sum_j (y_j - psi^{(j)}(U_j))^2 w_j^2,
//! smoothing with `base` at bandwidth h.
double mise(const Dataset& data, const IndexFit& fit, const Eigen::VectorXd& w_values, double h,
            const SmootherConfig& base = {});

//! Exponent applied to n when turning the criterion minimizer into the
//! test bandwidth: -1/3 + 1/5.
inline constexpr double kUndersmoothExponent = -1.0 / 3.0 + 1.0 / 5.0;

//! h1 * n^(-2/15).
double undersmooth(double h1, Eigen::Index n);

struct GridSpec
{
  double lo_factor = 0.5;
  double hi_factor = 3.0;
  int size = 30;
};

//! Log-spaced candidates in [lo * n^(-1/5), hi * n^(-1/5)].
std::vector<double> default_grid(Eigen::Index n, const GridSpec& spec = {});

struct BandwidthChoice
{
  double h1 = 0.0;
  double h_final = 0.0;
  std::vector<double> grid;
  std::vector<double> criterion;
};

//! Minimizes mise over `grid` (ties go to the smallest h) and undersmooths
//! the minimizer. Throws InvalidArgument for an empty or non-positive grid.
BandwidthChoice select_bandwidth(const Dataset& data, const IndexFit& fit,
                                 const Eigen::VectorXd& w_values, const std::vector<double>& grid,
                                 const SmootherConfig& base = {});

} // namespace sicheck
