#include "sicheck/omnibus.hpp"

#include "sicheck/errors.hpp"
#include "sicheck/random.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sicheck {

namespace {

double radical_inverse(std::uint64_t k, std::uint64_t base)
{
  double result = 0.0;
  double scale = 1.0 / static_cast<double>(base);
  while (k > 0) {
    result += static_cast<double>(k % base) * scale;
    k /= base;
    scale /= static_cast<double>(base);
  }
  return result;
}

std::vector<std::uint64_t> first_primes(Eigen::Index count)
{
  std::vector<std::uint64_t> primes;
  for (std::uint64_t c = 2; static_cast<Eigen::Index>(primes.size()) < count; ++c) {
    bool prime = true;
    for (auto q : primes) {
      if (q * q > c) {
        break;
      }
      if (c % q == 0) {
        prime = false;
        break;
      }
    }
    if (prime) {
      primes.push_back(c);
    }
  }
  return primes;
}

bool in_positive_half(const Eigen::VectorXd& g)
{
  for (Eigen::Index k = 0; k < g.size(); ++k) {
    if (g(k) != 0.0) {
      return g(k) > 0.0;
    }
  }
  return true; // origin
}

} // namespace

GammaGrid make_gamma_grid(Eigen::Index p, double bound, int per_axis)
{
  if (p < 1) {
    throw InvalidArgument("gamma grid: dimension must be positive");
  }
  if (!(bound > 0.0) || !std::isfinite(bound)) {
    throw InvalidArgument("gamma grid: bound must be positive");
  }
  if (per_axis < 2) {
    throw InvalidArgument("gamma grid: need at least 2 points per axis");
  }
  GammaGrid grid;
  grid.bound = bound;
  grid.per_axis = per_axis;

  double dense = 1.0;
  for (Eigen::Index k = 0; k < p; ++k) {
    dense *= per_axis;
  }

  if (dense <= static_cast<double>(kMaxDenseGridPoints)) {
    grid.layout = "dense";
    std::vector<double> axis(static_cast<std::size_t>(per_axis));
    for (int k = 0; k < per_axis; ++k) {
      // Symmetric by construction: axis[k] == -axis[per_axis - 1 - k].
      const double t = static_cast<double>(2 * k - (per_axis - 1)) / (per_axis - 1);
      axis[static_cast<std::size_t>(k)] = bound * t;
    }
    std::vector<int> digit(static_cast<std::size_t>(p), 0);
    const auto total = static_cast<std::size_t>(dense);
    bool has_origin = false;
    for (std::size_t idx = 0; idx < total; ++idx) {
      Eigen::VectorXd g(p);
      for (Eigen::Index k = 0; k < p; ++k) {
        g(k) = axis[static_cast<std::size_t>(digit[static_cast<std::size_t>(k)])];
      }
      has_origin = has_origin || g.isZero(0.0);
      grid.points.push_back(std::move(g));
      for (std::size_t k = 0; k < digit.size(); ++k) {
        if (++digit[k] < per_axis) {
          break;
        }
        digit[k] = 0;
      }
    }
    if (!has_origin) {
      grid.points.push_back(Eigen::VectorXd::Zero(p));
    }
  } else {
    grid.layout = "halton";
    const auto primes = first_primes(p);
    grid.points.push_back(Eigen::VectorXd::Zero(p));
    for (std::uint64_t k = 1; k <= kHaltonPairs; ++k) {
      Eigen::VectorXd g(p);
      for (Eigen::Index c = 0; c < p; ++c) {
        g(c) = bound * (2.0 * radical_inverse(k, primes[static_cast<std::size_t>(c)]) - 1.0);
      }
      grid.points.push_back(g);
      grid.points.push_back(-g);
    }
  }
  return grid;
}

std::vector<Eigen::VectorXd> half_space(const std::vector<Eigen::VectorXd>& points)
{
  std::vector<Eigen::VectorXd> out;
  for (const auto& g : points) {
    if (in_positive_half(g)) {
      out.push_back(g);
    }
  }
  return out;
}

Eigen::MatrixXd standardize_columns(const Eigen::MatrixXd& x)
{
  Eigen::MatrixXd z = x.rowwise() - x.colwise().mean();
  const double denom = std::max<double>(1.0, static_cast<double>(x.rows() - 1));
  for (Eigen::Index c = 0; c < z.cols(); ++c) {
    const double sd = std::sqrt(z.col(c).squaredNorm() / denom);
    if (sd > 0.0) {
      z.col(c) /= sd;
    }
  }
  return z;
}

std::complex<double> cf_process(const Eigen::VectorXd& eps_hat, const Eigen::MatrixXd& x,
                                const Eigen::VectorXd& gamma)
{
  if (x.rows() != eps_hat.size()) {
    throw DimensionMismatch("cf_process: residuals and covariates differ in length");
  }
  if (gamma.size() != x.cols()) {
    throw DimensionMismatch("cf_process: gamma dimension does not match covariates");
  }
  if (eps_hat.size() == 0) {
    throw InsufficientData("cf_process: no observations");
  }
  const Eigen::VectorXd phase = x * gamma;
  double re = 0.0;
  double im = 0.0;
  for (Eigen::Index j = 0; j < phase.size(); ++j) {
    re += eps_hat(j) * std::cos(phase(j));
    im += eps_hat(j) * std::sin(phase(j));
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(eps_hat.size()));
  return {re * scale, im * scale};
}

double sup_statistic(const Eigen::VectorXd& eps_hat, const Eigen::MatrixXd& x,
                     const std::vector<Eigen::VectorXd>& points)
{
  if (points.empty()) {
    throw InvalidArgument("sup_statistic: empty gamma grid");
  }
  double best = 0.0;
  for (const auto& g : points) {
    best = std::max(best, std::abs(cf_process(eps_hat, x, g)));
  }
  return best;
}

Eigen::MatrixXcd centered_cf_weights(const Eigen::MatrixXd& x, const IndexFit& fit,
                                     const std::vector<Eigen::VectorXd>& points,
                                     const SmootherConfig& cfg)
{
  const Eigen::Index n = x.rows();
  const auto g = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd parts(n, 2 * g);
  for (Eigen::Index k = 0; k < g; ++k) {
    const auto& gamma = points[static_cast<std::size_t>(k)];
    if (gamma.size() != x.cols()) {
      throw DimensionMismatch("centered_cf_weights: gamma dimension does not match covariates");
    }
    const Eigen::VectorXd phase = x * gamma;
    parts.col(2 * k) = phase.array().cos().matrix();
    parts.col(2 * k + 1) = phase.array().sin().matrix();
  }
  const Eigen::MatrixXd centered = parts - loo_fit(parts, fit.ranks_u, cfg).fitted;
  Eigen::MatrixXcd out(n, g);
  for (Eigen::Index k = 0; k < g; ++k) {
    out.col(k).real() = centered.col(2 * k);
    out.col(k).imag() = centered.col(2 * k + 1);
  }
  return out;
}

double bootstrap_replicate(const Eigen::VectorXd& eps_hat, const Eigen::MatrixXcd& centered_w,
                           const Eigen::VectorXd& e)
{
  if (eps_hat.size() != centered_w.rows() || e.size() != eps_hat.size()) {
    throw DimensionMismatch("bootstrap_replicate: shapes are not conformable");
  }
  const Eigen::VectorXd coef = e.cwiseProduct(eps_hat);
  const Eigen::VectorXcd values = centered_w.transpose() * coef.cast<std::complex<double>>();
  const double scale = 1.0 / std::sqrt(static_cast<double>(eps_hat.size()));
  return values.size() == 0 ? 0.0 : values.cwiseAbs().maxCoeff() * scale;
}

void BootstrapConfig::validate() const
{
  if (m < 100) {
    throw ConfigError("bootstrap: need m >= 100 replicates, got " + std::to_string(m));
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ConfigError("bootstrap: alpha must lie in (0, 1)");
  }
  if (static_cast<double>(m) * alpha < 1.0) {
    throw ConfigError("bootstrap: m * alpha must be at least 1");
  }
}

int critical_order_statistic(int m, double alpha)
{
  // The tolerance absorbs representation error, e.g. (1 - 0.05) * 1000.
  const int k = static_cast<int>(std::floor((1.0 - alpha) * m + 1e-9));
  return std::clamp(k, 1, m);
}

OmnibusReport omnibus_test(const Dataset& data, const IndexFit& fit, const SmootherConfig& cfg,
                           const GammaGrid& grid, const BootstrapConfig& boot)
{
  boot.validate();
  cfg.validate();
  if (grid.points.empty()) {
    throw InvalidArgument("omnibus_test: empty gamma grid");
  }
  const Eigen::MatrixXd z = grid.standardize ? standardize_columns(data.x) : data.x;

  Eigen::Index empty_windows = 0;
  const Eigen::VectorXd eps = residuals(data, fit, cfg, empty_windows);
  const auto points = half_space(grid.points);

  OmnibusReport r;
  r.argmax_gamma = points.front();
  for (const auto& g : points) {
    const double v = std::abs(cf_process(eps, z, g));
    if (v > r.t_tilde) {
      r.t_tilde = v;
      r.argmax_gamma = g;
    }
  }

  const Eigen::MatrixXcd centered = centered_cf_weights(z, fit, points, cfg);
  std::vector<double> replicates(static_cast<std::size_t>(boot.m));
  Eigen::VectorXd e(data.n());
  for (int b = 0; b < boot.m; ++b) {
    Rng rng(derive_seed(boot.seed, static_cast<std::uint64_t>(b), kStreamBootstrap));
    for (Eigen::Index i = 0; i < e.size(); ++i) {
      e(i) = rng.normal();
    }
    replicates[static_cast<std::size_t>(b)] = bootstrap_replicate(eps, centered, e);
  }

  const auto exceed = std::count_if(replicates.begin(), replicates.end(),
                                    [&r](double v) { return v >= r.t_tilde; });
  std::sort(replicates.begin(), replicates.end());
  const int k = critical_order_statistic(boot.m, boot.alpha);

  r.critical_value = replicates[static_cast<std::size_t>(k - 1)];
  r.reject = r.t_tilde >= r.critical_value;
  r.p_value = static_cast<double>(1 + exceed) / static_cast<double>(boot.m + 1);
  r.alpha = boot.alpha;
  r.m = boot.m;
  r.seed = boot.seed;
  r.h = cfg.h;
  r.n = data.n();
  r.grid_points = grid.points.size();
  r.grid_bound = grid.bound;
  r.grid_per_axis = grid.per_axis;
  r.grid_layout = grid.layout;
  r.grid_standardized = grid.standardize;
  r.empty_windows = empty_windows;
  return r;
}

} // namespace sicheck
