#pragma once

#include "sicheck/dataset.hpp"
#include "sicheck/index.hpp"
#include "sicheck/kernel.hpp"

#include <Eigen/Dense>

#include <string>

namespace sicheck {

//! Treatment of the rank interval ends.
//!
//! `None` is the plain kernel sum scaled by 1 / ((n - 1) h). `Reflect` adds
//! the mirror images of every rank about both ends of the rank grid
//! (1 / (2n) and 1 + 1 / (2n)) and scales by lattice_mass(), the kernel mass
//! of an interior leave-one-out window on the grid k / n.
enum class Boundary
{
  None,
  Reflect,
};

const char* boundary_name(Boundary b);

//! Throws ConfigError for anything other than "none" or "reflect".
Boundary parse_boundary(const std::string& text);

//! Kernel, bandwidth and boundary rule shared by every leave-one-out estimate.
struct SmootherConfig
{
  KernelId kernel = KernelId::Quartic;
  double h = 0.5;
  Boundary boundary = Boundary::None;

  //! Throws InvalidArgument unless h is positive and finite.
  void validate() const;
};

//! sum over k != 0 of K(k / (n h)).
double lattice_mass(const SmootherConfig& cfg, Eigen::Index n);

//! Divisor applied to the kernel sum: (n - 1) h for Boundary::None,
//! lattice_mass(cfg, n) for Boundary::Reflect.
double normalizer(const SmootherConfig& cfg, Eigen::Index n);

//! Leave-one-out kernel average at a single point. With Boundary::None this is
//!
//!   1 / ((n - 1) h) * sum_{i != j} values_i K((u - u_ranks_i) / h)
//!
//! `j` is zero-based. An empty window yields 0.
double loo_smooth(const Eigen::VectorXd& values, const Eigen::VectorXd& u_ranks,
                  Eigen::Index j, double u, const SmootherConfig& cfg);

//! Leave-one-out fits of several value columns, each evaluated at its own
//! observation's rank. `empty_windows` counts the j whose window held no
//! other observation.
struct LooFit
{
  Eigen::MatrixXd fitted;
  Eigen::Index empty_windows = 0;
};

//! Computes the kernel table once and applies it to every column of
//! `values`; row j of the result is the leave-one-out estimate at
//! u_ranks(j).
LooFit loo_fit(const Eigen::MatrixXd& values, const Eigen::VectorXd& u_ranks,
               const SmootherConfig& cfg);

//! y_j minus its leave-one-out fit at the rank of observation j.
Eigen::VectorXd residuals(const Dataset& data, const IndexFit& fit, const SmootherConfig& cfg);

//! Same as residuals() but also reports the number of empty windows.
Eigen::VectorXd residuals(const Dataset& data, const IndexFit& fit, const SmootherConfig& cfg,
                          Eigen::Index& empty_windows);

//! Leave-one-out smooth of the weight values at each observation's rank.
Eigen::VectorXd smoothed_weights(const Eigen::VectorXd& w_values, const IndexFit& fit,
                                 const SmootherConfig& cfg);

} // namespace sicheck
