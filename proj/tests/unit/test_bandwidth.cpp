#include <doctest.h>

#include "oracles.hpp"
#include "sicheck/bandwidth.hpp"
#include "sicheck/errors.hpp"
#include "sicheck/random.hpp"

#include <algorithm>
#include <cmath>
#include <random>

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
    d.x(i, 1) = rng.normal();
    const double t = (d.x(i, 0) - d.x(i, 1)) / std::sqrt(2.0);
    d.y(i) = std::sin(2.0 * t) + 0.3 * rng.normal();
  }
  return d;
}

} // namespace

TEST_CASE("undersmoothing exponent and factor")
{
  CHECK(kUndersmoothExponent == doctest::Approx(-2.0 / 15.0).epsilon(1e-15));
  CHECK(undersmooth(0.37, 1) == 0.37);
  CHECK(undersmooth(0.5, 100) == doctest::Approx(0.2706).epsilon(1e-4));
  CHECK(undersmooth(0.5, 100) == doctest::Approx(0.5 * std::exp(-2.0 / 15.0 * std::log(100.0))));
  for (Eigen::Index n : {2, 10, 50, 1000}) {
    CHECK(undersmooth(0.4, n) < 0.4);
  }
}

TEST_CASE("default grid is log-spaced around n^(-1/5)")
{
  const auto grid = default_grid(50);
  REQUIRE(grid.size() == 30);
  const double rate = std::pow(50.0, -0.2);
  CHECK(grid.front() == doctest::Approx(0.5 * rate));
  CHECK(grid.back() == doctest::Approx(3.0 * rate));
  for (std::size_t k = 2; k < grid.size(); ++k) {
    CHECK(grid[k] / grid[k - 1] == doctest::Approx(grid[1] / grid[0]));
  }
  CHECK(default_grid(50, GridSpec{1.0, 1.0, 1}) == std::vector<double>{rate});
  CHECK_THROWS_AS(default_grid(50, GridSpec{0.0, 1.0, 5}), InvalidArgument);
  CHECK_THROWS_AS(default_grid(50, GridSpec{2.0, 1.0, 5}), InvalidArgument);
  CHECK_THROWS_AS(default_grid(50, GridSpec{0.5, 1.0, 0}), InvalidArgument);
}

TEST_CASE("mise matches the weighted residual sum of squares")
{
  CHECK(mise(sample(20, 1), make_index_fit(sample(20, 1), Eigen::Vector2d(1, 0)),
             Eigen::VectorXd::Zero(20), 0.3) == 0.0);

  Dataset zero = sample(20, 2);
  zero.y.setZero();
  CHECK(mise(zero, make_index_fit(zero, Eigen::Vector2d(1, 0)), Eigen::VectorXd::Ones(20), 0.3) ==
        0.0);

  // n = 3 instance with hand-checked residuals.
  Dataset d;
  d.x.resize(3, 1);
  d.x << 1, 2, 3;
  d.y = Eigen::Vector3d(1, 2, 3);
  const IndexFit fit = make_index_fit(d, Eigen::VectorXd::Ones(1));
  const Eigen::Vector3d w(1.0, 2.0, -1.0);
  const Eigen::Vector3d eps(10799.0 / 13824, 10799.0 / 6912, 38447.0 / 13824);
  const double want = (eps.array() * w.array()).square().sum();
  CHECK(mise(d, fit, w, 0.4) == doctest::Approx(want).epsilon(1e-14));

  const Dataset s = sample(15, 3);
  const IndexFit sf = make_index_fit(s, Eigen::Vector2d(0.6, -0.8));
  const Eigen::VectorXd sw = s.x.cwiseAbs().rowwise().sum();
  for (bool reflect : {false, true}) {
    SmootherConfig base;
    base.boundary = reflect ? Boundary::Reflect : Boundary::None;
    const Eigen::VectorXd r = oracle::residuals(s.y, oracle::ranks(sf.projections), 0.35, reflect);
    CHECK(mise(s, sf, sw, 0.35, base) ==
          doctest::Approx((r.array() * sw.array()).square().sum()).epsilon(1e-12));
  }
  CHECK_THROWS_AS(mise(s, sf, Eigen::VectorXd::Ones(3), 0.3), DimensionMismatch);
}

TEST_CASE("mise varies continuously in h")
{
  const Dataset d = sample(60, 4);
  const IndexFit fit = make_index_fit(d, Eigen::Vector2d(1, -1).normalized());
  const Eigen::VectorXd w = d.x.cwiseAbs().rowwise().sum();
  for (Boundary b : {Boundary::None, Boundary::Reflect}) {
    SmootherConfig base;
    base.boundary = b;
    for (double h = 0.1; h < 1.0; h += 0.05) {
      const double a = mise(d, fit, w, h, base);
      const double c = mise(d, fit, w, h + 1e-4, base);
      CHECK(std::abs(a - c) < 1e-2 * std::max(1.0, a));
    }
  }
}

TEST_CASE("select_bandwidth picks the grid minimizer")
{
  const Dataset d = sample(50, 5);
  const IndexFit fit = make_index_fit(d, Eigen::Vector2d(1, -1).normalized());
  const Eigen::VectorXd w = d.x.cwiseAbs().rowwise().sum();
  SmootherConfig base;
  base.boundary = Boundary::Reflect;
  const auto grid = default_grid(d.n());
  const BandwidthChoice choice = select_bandwidth(d, fit, w, grid, base);
  REQUIRE(choice.criterion.size() == grid.size());
  const auto best = std::min_element(choice.criterion.begin(), choice.criterion.end());
  CHECK(choice.h1 == grid[static_cast<std::size_t>(best - choice.criterion.begin())]);
  CHECK(choice.h_final == doctest::Approx(undersmooth(choice.h1, d.n())));
  CHECK(choice.h_final < choice.h1);

  auto shuffled = grid;
  std::mt19937 gen(7);
  std::shuffle(shuffled.begin(), shuffled.end(), gen);
  CHECK(select_bandwidth(d, fit, w, shuffled, base).h1 == choice.h1);

  CHECK_THROWS_AS(select_bandwidth(d, fit, w, {}), InvalidArgument);
  CHECK_THROWS_AS(select_bandwidth(d, fit, w, {0.2, -0.1}), InvalidArgument);
}

TEST_CASE("select_bandwidth breaks ties toward the smaller bandwidth")
{
  // With zero weights the criterion is identically zero.
  const Dataset d = sample(20, 6);
  const IndexFit fit = make_index_fit(d, Eigen::Vector2d(1, 0));
  const BandwidthChoice c = select_bandwidth(d, fit, Eigen::VectorXd::Zero(20), {0.5, 0.2, 0.9});
  CHECK(c.h1 == 0.2);
}
