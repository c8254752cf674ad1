#include "sicheck/smoother.hpp"

#include "sicheck/errors.hpp"

#include <cmath>
#include <string>

namespace sicheck {

const char* boundary_name(Boundary b)
{
  switch (b) {
    case Boundary::None:
      return "none";
    case Boundary::Reflect:
      return "reflect";
  }
  return "unknown";
}

Boundary parse_boundary(const std::string& text)
{
  if (text == "none") {
    return Boundary::None;
  }
  if (text == "reflect") {
    return Boundary::Reflect;
  }
  throw ConfigError("unknown boundary rule '" + text + "' (expected none or reflect)");
}

void SmootherConfig::validate() const
{
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw InvalidArgument("smoother: bandwidth must be positive and finite, got " +
                          std::to_string(h));
  }
}

namespace {

void check_inputs(Eigen::Index n_values, const Eigen::VectorXd& u_ranks, const SmootherConfig& cfg)
{
  cfg.validate();
  if (n_values != u_ranks.size()) {
    throw DimensionMismatch("smoother: values and ranks differ in length");
  }
  if (u_ranks.size() < 2) {
    throw InsufficientData("smoother: leave-one-out smoothing needs n >= 2");
  }
}

// Ranks produced by rank_transform are k / n. Differences taken on the
// integer counts are exact, so reflected ranks give bit-identical kernel
// arguments.
class RankScale
{
public:
  RankScale(const Eigen::VectorXd& u_ranks, double h)
    : n_(static_cast<double>(u_ranks.size()))
    , h_(h)
  {
    on_grid_ = true;
    for (Eigen::Index i = 0; i < u_ranks.size() && on_grid_; ++i) {
      on_grid_ = is_grid(u_ranks(i));
    }
  }

  double argument(double u, double u_i) const
  {
    if (on_grid_ && is_grid(u)) {
      return (std::round(u * n_) - std::round(u_i * n_)) / (n_ * h_);
    }
    return (u - u_i) / h_;
  }

  // Distance from u to the mirror image of u_i about 1 / (2n).
  double lower_mirror(double u, double u_i) const
  {
    if (on_grid_ && is_grid(u)) {
      return (std::round(u * n_) + std::round(u_i * n_) - 1.0) / (n_ * h_);
    }
    return (u + u_i - 1.0 / n_) / h_;
  }

  // Distance from u to the mirror image of u_i about 1 + 1 / (2n).
  double upper_mirror(double u, double u_i) const
  {
    if (on_grid_ && is_grid(u)) {
      return (std::round(u * n_) + std::round(u_i * n_) - 2.0 * n_ - 1.0) / (n_ * h_);
    }
    return (u + u_i - 2.0 - 1.0 / n_) / h_;
  }

private:
  bool is_grid(double u) const
  {
    const double k = u * n_;
    return std::abs(k - std::round(k)) < 1e-9;
  }

  double n_;
  double h_;
  bool on_grid_ = false;
};

double window_kernel(const RankScale& scale, const SmootherConfig& cfg, double u, double u_i)
{
  double k = kernel_eval(cfg.kernel, scale.argument(u, u_i));
  if (cfg.boundary == Boundary::Reflect) {
    k += kernel_eval(cfg.kernel, scale.lower_mirror(u, u_i));
    k += kernel_eval(cfg.kernel, scale.upper_mirror(u, u_i));
  }
  return k;
}

} // namespace

double lattice_mass(const SmootherConfig& cfg, Eigen::Index n)
{
  cfg.validate();
  const double nh = static_cast<double>(n) * cfg.h;
  double mass = 0.0;
  for (Eigen::Index k = 1; static_cast<double>(k) < nh; ++k) {
    mass += 2.0 * kernel_eval(cfg.kernel, static_cast<double>(k) / nh);
  }
  return mass;
}

double normalizer(const SmootherConfig& cfg, Eigen::Index n)
{
  if (cfg.boundary == Boundary::None) {
    return static_cast<double>(n - 1) * cfg.h;
  }
  return lattice_mass(cfg, n);
}

double loo_smooth(const Eigen::VectorXd& values, const Eigen::VectorXd& u_ranks,
                  Eigen::Index j, double u, const SmootherConfig& cfg)
{
  check_inputs(values.size(), u_ranks, cfg);
  const Eigen::Index n = values.size();
  if (j < 0 || j >= n) {
    throw InvalidArgument("loo_smooth: index " + std::to_string(j) + " out of range");
  }
  const RankScale scale(u_ranks, cfg.h);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (i == j) {
      continue;
    }
    const double k = window_kernel(scale, cfg, u, u_ranks(i));
    if (k != 0.0) {
      sum += values(i) * k;
    }
  }
  const double scale_factor = normalizer(cfg, n);
  return scale_factor > 0.0 ? sum / scale_factor : 0.0;
}

LooFit loo_fit(const Eigen::MatrixXd& values, const Eigen::VectorXd& u_ranks,
               const SmootherConfig& cfg)
{
  check_inputs(values.rows(), u_ranks, cfg);
  const Eigen::Index n = u_ranks.size();

  const RankScale scale(u_ranks, cfg.h);
  Eigen::MatrixXd table = Eigen::MatrixXd::Zero(n, n);
  LooFit out;
  for (Eigen::Index j = 0; j < n; ++j) {
    bool any = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == j) {
        continue;
      }
      const double k = window_kernel(scale, cfg, u_ranks(j), u_ranks(i));
      table(j, i) = k;
      any = any || k != 0.0;
    }
    if (!any) {
      ++out.empty_windows;
    }
  }
  const double scale_factor = normalizer(cfg, n);
  if (scale_factor > 0.0) {
    out.fitted = (table * values) / scale_factor;
  } else {
    out.fitted = Eigen::MatrixXd::Zero(n, values.cols());
  }
  return out;
}

Eigen::VectorXd residuals(const Dataset& data, const IndexFit& fit, const SmootherConfig& cfg,
                          Eigen::Index& empty_windows)
{
  if (fit.ranks_u.size() != data.n()) {
    throw DimensionMismatch("residuals: index fit does not match the dataset");
  }
  LooFit smooth = loo_fit(data.y, fit.ranks_u, cfg);
  empty_windows = smooth.empty_windows;
  return data.y - smooth.fitted.col(0);
}

Eigen::VectorXd residuals(const Dataset& data, const IndexFit& fit, const SmootherConfig& cfg)
{
  Eigen::Index ignored = 0;
  return residuals(data, fit, cfg, ignored);
}

Eigen::VectorXd smoothed_weights(const Eigen::VectorXd& w_values, const IndexFit& fit,
                                 const SmootherConfig& cfg)
{
  return loo_fit(w_values, fit.ranks_u, cfg).fitted.col(0);
}

} // namespace sicheck
