#include "sicheck/bandwidth.hpp"

#include "sicheck/errors.hpp"
#include "sicheck/smoother.hpp"

#include <cmath>

namespace sicheck {

double mise(const Dataset& data, const IndexFit& fit, const Eigen::VectorXd& w_values, double h,
            const SmootherConfig& base)
{
  if (w_values.size() != data.n()) {
    throw DimensionMismatch("mise: weight values do not match the dataset");
  }
  SmootherConfig cfg = base;
  cfg.h = h;
  const Eigen::VectorXd eps = residuals(data, fit, cfg);
  return (eps.cwiseProduct(w_values)).squaredNorm();
}

double undersmooth(double h1, Eigen::Index n)
{
  return h1 * std::pow(static_cast<double>(n), kUndersmoothExponent);
}

std::vector<double> default_grid(Eigen::Index n, const GridSpec& spec)
{
  if (n < 1 || spec.size < 1 || !(spec.lo_factor > 0.0) || !(spec.hi_factor >= spec.lo_factor)) {
    throw InvalidArgument("default_grid: need n >= 1, size >= 1 and 0 < lo <= hi");
  }
  const double rate = std::pow(static_cast<double>(n), -0.2);
  const double lo = std::log(spec.lo_factor * rate);
  const double hi = std::log(spec.hi_factor * rate);
  std::vector<double> grid(static_cast<std::size_t>(spec.size));
  for (int k = 0; k < spec.size; ++k) {
    const double t = spec.size == 1 ? 0.0 : static_cast<double>(k) / (spec.size - 1);
    grid[static_cast<std::size_t>(k)] = std::exp(lo + t * (hi - lo));
  }
  return grid;
}

BandwidthChoice select_bandwidth(const Dataset& data, const IndexFit& fit,
                                 const Eigen::VectorXd& w_values, const std::vector<double>& grid,
                                 const SmootherConfig& base)
{
  if (grid.empty()) {
    throw InvalidArgument("select_bandwidth: empty bandwidth grid");
  }
  BandwidthChoice out;
  out.grid = grid;
  out.criterion.reserve(grid.size());
  double best_value = 0.0;
  double best_h = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double h = grid[k];
    if (!(h > 0.0) || !std::isfinite(h)) {
      throw InvalidArgument("select_bandwidth: grid entries must be positive and finite");
    }
    const double value = mise(data, fit, w_values, h, base);
    out.criterion.push_back(value);
    if (k == 0 || value < best_value || (value == best_value && h < best_h)) {
      best_value = value;
      best_h = h;
    }
  }
  out.h1 = best_h;
  out.h_final = undersmooth(best_h, data.n());
  return out;
}

} // namespace sicheck
