#include <doctest.h>

#include "oracles.hpp"
#include "sicheck/errors.hpp"
#include "sicheck/index.hpp"
#include "sicheck/omnibus.hpp"
#include "sicheck/random.hpp"

#include <cmath>
#include <set>

using namespace sicheck;

namespace {

Dataset sample(Eigen::Index n, std::uint64_t seed)
{
  Rng rng(seed);
  Dataset d;
  d.x.resize(n, 2);
  d.y.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    d.x(i, 0) = rng.normal();
    d.x(i, 1) = 2.0 * rng.normal() + 1.0;
    const double t = d.x(i, 0) - 0.5 * d.x(i, 1);
    d.y(i) = std::sin(t) + 0.5 * rng.normal();
  }
  return d;
}

const SmootherConfig kCfg{KernelId::Quartic, 0.2, Boundary::Reflect};

} // namespace

TEST_CASE("cf_process examples")
{
  const Eigen::Vector3d eps(0.5, -1.0, 2.0);
  Eigen::MatrixXd x(3, 2);
  x << 0.1, 0.2, -1.0, 0.5, 2.0, -0.3;
  const std::complex<double> at0 = cf_process(eps, x, Eigen::Vector2d::Zero());
  CHECK(at0.real() == doctest::Approx(1.5 / std::sqrt(3.0)));
  CHECK(at0.imag() == 0.0);

  const Eigen::Vector2d g(0.7, -1.3);
  const std::complex<double> plus = cf_process(eps, x, g);
  const std::complex<double> minus = cf_process(eps, x, -g);
  CHECK(plus.real() == doctest::Approx(minus.real()).epsilon(1e-15));
  CHECK(plus.imag() == doctest::Approx(-minus.imag()).epsilon(1e-15));
  CHECK(std::abs(plus - oracle::cf(eps, x, g)) < 1e-14);

  Eigen::MatrixXd one(1, 2);
  one << 0.37, -2.2;
  CHECK(std::abs(cf_process(Eigen::VectorXd::Ones(1), one, g)) == doctest::Approx(1.0).epsilon(1e-15));

  CHECK_THROWS_AS(cf_process(eps, x, Eigen::Vector3d::Ones()), DimensionMismatch);
  CHECK_THROWS_AS(cf_process(Eigen::Vector2d::Ones(), x, g), DimensionMismatch);
}

TEST_CASE("sup statistic")
{
  const Dataset d = sample(30, 1);
  const Eigen::VectorXd eps = d.y;
  const GammaGrid grid = make_gamma_grid(2);
  CHECK(sup_statistic(Eigen::VectorXd::Zero(30), d.x, grid.points) == 0.0);
  CHECK(sup_statistic(eps, d.x, {Eigen::Vector2d::Zero()}) ==
        doctest::Approx(std::abs(eps.sum()) / std::sqrt(30.0)));

  std::vector<Eigen::VectorXd> negated;
  for (const auto& g : grid.points) {
    negated.push_back(-g);
  }
  const double full = sup_statistic(eps, d.x, grid.points);
  CHECK(full == doctest::Approx(sup_statistic(eps, d.x, negated)).epsilon(1e-14));
  CHECK(full == doctest::Approx(sup_statistic(eps, d.x, half_space(grid.points))).epsilon(1e-14));

  const double bound = eps.cwiseAbs().sum() / std::sqrt(30.0);
  for (const auto& g : grid.points) {
    CHECK(std::abs(cf_process(eps, d.x, g)) <= bound + 1e-12);
  }
  CHECK_THROWS_AS(sup_statistic(eps, d.x, {}), InvalidArgument);
}

TEST_CASE("gamma grid layouts")
{
  for (Eigen::Index p = 1; p <= 6; ++p) {
    const GammaGrid grid = make_gamma_grid(p);
    std::set<std::vector<double>> seen;
    bool origin = false;
    for (const auto& g : grid.points) {
      REQUIRE(g.size() == p);
      seen.insert(std::vector<double>(g.data(), g.data() + g.size()));
      origin = origin || g.isZero(0.0);
      CHECK(g.cwiseAbs().maxCoeff() <= 3.0);
    }
    CHECK(origin);
    for (const auto& g : grid.points) {
      const Eigen::VectorXd neg = -g;
      CHECK(seen.count(std::vector<double>(neg.data(), neg.data() + neg.size())) == 1);
    }
    if (p <= 4) {
      CHECK(grid.layout == "dense");
      CHECK(grid.size() == static_cast<std::size_t>(std::pow(7, p)));
    } else {
      CHECK(grid.layout == "halton");
      CHECK(grid.size() == 2001);
    }
  }
  // An even count per axis has no zero coordinate; the origin is added.
  CHECK(make_gamma_grid(2, 1.0, 4).size() == 17);
  CHECK(half_space(make_gamma_grid(2).points).size() == 25);
  CHECK_THROWS_AS(make_gamma_grid(2, 0.0, 7), InvalidArgument);
  CHECK_THROWS_AS(make_gamma_grid(2, 3.0, 1), InvalidArgument);
  CHECK_THROWS_AS(make_gamma_grid(0), InvalidArgument);
}

TEST_CASE("covariate standardization")
{
  const Dataset d = sample(40, 2);
  const Eigen::MatrixXd z = standardize_columns(d.x);
  for (Eigen::Index c = 0; c < z.cols(); ++c) {
    CHECK(std::abs(z.col(c).mean()) < 1e-14);
    CHECK(z.col(c).squaredNorm() / 39.0 == doctest::Approx(1.0).epsilon(1e-13));
  }
  Eigen::MatrixXd constant = Eigen::MatrixXd::Ones(5, 1);
  CHECK(standardize_columns(constant).isZero());
}

TEST_CASE("bootstrap replicate examples")
{
  Eigen::MatrixXcd c(2, 1);
  c << std::complex<double>(0.5, 0.5), std::complex<double>(-1.0, 0.0);
  const Eigen::Vector2d eps(1.0, 2.0);
  CHECK(bootstrap_replicate(eps, c, Eigen::Vector2d(1.0, -1.0)) ==
        doctest::Approx(std::sqrt(3.25)).epsilon(1e-15));
  CHECK(bootstrap_replicate(eps, c, Eigen::Vector2d::Zero()) == 0.0);
  CHECK(bootstrap_replicate(Eigen::Vector2d::Zero(), c, Eigen::Vector2d(1.0, 3.0)) == 0.0);
  CHECK_THROWS_AS(bootstrap_replicate(eps, c, Eigen::Vector3d::Ones()), DimensionMismatch);
}

TEST_CASE("centered cf weights subtract the leave-one-out smooth")
{
  const Dataset d = sample(12, 3);
  const IndexFit fit = fit_index(d);
  const std::vector<Eigen::VectorXd> points{Eigen::Vector2d(0.5, -1.0), Eigen::Vector2d(2.0, 0.0)};
  const Eigen::MatrixXcd c = centered_cf_weights(d.x, fit, points, kCfg);
  const Eigen::VectorXd u = oracle::ranks(fit.projections);
  for (std::size_t k = 0; k < points.size(); ++k) {
    const Eigen::VectorXd phase = d.x * points[k];
    const Eigen::VectorXd cs = phase.array().cos().matrix();
    const Eigen::VectorXd sn = phase.array().sin().matrix();
    const Eigen::VectorXd re = cs - oracle::loo_all(cs, u, kCfg.h, true);
    const Eigen::VectorXd im = sn - oracle::loo_all(sn, u, kCfg.h, true);
    for (Eigen::Index j = 0; j < d.n(); ++j) {
      CHECK(c(j, static_cast<Eigen::Index>(k)).real() == doctest::Approx(re(j)).epsilon(1e-12));
      CHECK(c(j, static_cast<Eigen::Index>(k)).imag() == doctest::Approx(im(j)).epsilon(1e-12));
    }
  }
}

TEST_CASE("critical value rule")
{
  CHECK(critical_order_statistic(1000, 0.05) == 950);
  CHECK(critical_order_statistic(500, 0.05) == 475);
  CHECK(critical_order_statistic(999, 0.05) == 949);
  CHECK(critical_order_statistic(100, 0.01) == 99);
  CHECK_THROWS_AS((BootstrapConfig{99, 0.05, 1}.validate()), ConfigError);
  CHECK_THROWS_AS((BootstrapConfig{100, 0.005, 1}.validate()), ConfigError);
  CHECK_THROWS_AS((BootstrapConfig{100, 1.0, 1}.validate()), ConfigError);
  CHECK_NOTHROW((BootstrapConfig{100, 0.01, 1}.validate()));
}

TEST_CASE("omnibus test report")
{
  const Dataset d = sample(40, 4);
  const IndexFit fit = fit_index(d);
  const GammaGrid grid = make_gamma_grid(2);
  const BootstrapConfig boot{200, 0.05, 77};
  const OmnibusReport a = omnibus_test(d, fit, kCfg, grid, boot);
  const OmnibusReport b = omnibus_test(d, fit, kCfg, grid, boot);
  CHECK(a.t_tilde == b.t_tilde);
  CHECK(a.critical_value == b.critical_value);
  CHECK(a.p_value == b.p_value);
  CHECK(a.argmax_gamma == b.argmax_gamma);

  const Eigen::VectorXd eps = residuals(d, fit, kCfg);
  CHECK(a.t_tilde ==
        doctest::Approx(sup_statistic(eps, standardize_columns(d.x), grid.points)).epsilon(1e-14));
  CHECK(a.p_value > 0.0);
  CHECK(a.p_value <= 1.0);
  CHECK(a.reject == (a.t_tilde >= a.critical_value));
  CHECK(a.grid_points == 49);
  CHECK(a.grid_layout == "dense");
  CHECK(a.m == 200);
  CHECK(a.seed == 77);

  const OmnibusReport other = omnibus_test(d, fit, kCfg, grid, BootstrapConfig{200, 0.05, 78});
  CHECK(other.t_tilde == a.t_tilde);
  CHECK(other.critical_value != a.critical_value);

  CHECK_THROWS_AS(omnibus_test(d, fit, kCfg, grid, BootstrapConfig{50, 0.05, 1}), ConfigError);
  GammaGrid empty = grid;
  empty.points.clear();
  CHECK_THROWS_AS(omnibus_test(d, fit, kCfg, empty, boot), InvalidArgument);
}

TEST_CASE("p-value counts replicates at or above the statistic")
{
  const Dataset d = sample(30, 5);
  const IndexFit fit = fit_index(d);
  const GammaGrid grid = make_gamma_grid(2, 2.0, 5);
  const BootstrapConfig boot{150, 0.1, 9};
  const OmnibusReport r = omnibus_test(d, fit, kCfg, grid, boot);

  const Eigen::VectorXd eps = residuals(d, fit, kCfg);
  const auto points = half_space(grid.points);
  const Eigen::MatrixXcd c = centered_cf_weights(standardize_columns(d.x), fit, points, kCfg);
  int exceed = 0;
  std::vector<double> reps;
  for (int b = 0; b < boot.m; ++b) {
    Rng rng(derive_seed(boot.seed, static_cast<std::uint64_t>(b), kStreamBootstrap));
    Eigen::VectorXd e(d.n());
    for (Eigen::Index i = 0; i < e.size(); ++i) {
      e(i) = rng.normal();
    }
    reps.push_back(bootstrap_replicate(eps, c, e));
    exceed += reps.back() >= r.t_tilde ? 1 : 0;
  }
  std::sort(reps.begin(), reps.end());
  CHECK(r.p_value == static_cast<double>(1 + exceed) / 151.0);
  CHECK(r.critical_value == reps[134]);
}

TEST_CASE("bootstrap replicates are centered")
{
  const Dataset d = sample(50, 6);
  const IndexFit fit = fit_index(d);
  const Eigen::VectorXd eps = residuals(d, fit, kCfg);
  const std::vector<Eigen::VectorXd> point{Eigen::Vector2d(1.0, -0.5)};
  const Eigen::MatrixXcd c = centered_cf_weights(standardize_columns(d.x), fit, point, kCfg);
  const int m = 2000;
  std::complex<double> sum = 0.0;
  double sum_sq = 0.0;
  Rng rng(10);
  for (int b = 0; b < m; ++b) {
    Eigen::VectorXd e(d.n());
    for (Eigen::Index i = 0; i < e.size(); ++i) {
      e(i) = rng.normal();
    }
    const std::complex<double> v =
      (c.col(0).transpose() * e.cwiseProduct(eps).cast<std::complex<double>>())(0) /
      std::sqrt(static_cast<double>(d.n()));
    sum += v;
    sum_sq += std::norm(v);
  }
  const std::complex<double> mean = sum / static_cast<double>(m);
  const double sd = std::sqrt(sum_sq / m - std::norm(mean));
  CHECK(std::abs(mean) < 3.0 * sd / std::sqrt(static_cast<double>(m)));
}
