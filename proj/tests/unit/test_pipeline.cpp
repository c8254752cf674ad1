#include <doctest.h>

#include "sicheck/errors.hpp"
#include "sicheck/pipeline.hpp"
#include "sicheck/report.hpp"
#include "sicheck/simulate.hpp"
#include "sicheck/version.hpp"

using namespace sicheck;

namespace {

Dataset null_data(Eigen::Index n, std::uint64_t seed)
{
  Scenario s;
  s.n = n;
  s.seed = seed;
  return generate_replicate(s, 0);
}

} // namespace

TEST_CASE("score check with selected bandwidth")
{
  const Dataset d = null_data(50, 3);
  TestConfig cfg;
  const CheckResult r = run_check(d, cfg);
  REQUIRE(r.bandwidth.has_value());
  CHECK(r.h == r.bandwidth->h_final);
  CHECK(r.bandwidth->grid.size() == 30);
  const auto& score = std::get<ScoreReport>(r.outcome);
  CHECK(score.h == r.h);
  CHECK(score.weight == "sumabs");
  CHECK(r.statistic() == score.t_bar);
  CHECK(r.p_value() == score.p_value);
  CHECK(r.reject() == score.reject);

  const SmootherConfig smoother{KernelId::Quartic, r.h, Boundary::Reflect};
  const ScoreReport direct = standardized_test(d, fit_index(d), WeightSpec::sum_abs(), smoother, 0.05);
  CHECK(direct.t_bar == score.t_bar);
}

TEST_CASE("maximin and omnibus checks with a fixed bandwidth")
{
  const Dataset d = null_data(40, 4);
  TestConfig cfg;
  cfg.fixed_h = 0.35;
  cfg.kind = TestKind::Maximin;
  cfg.weights = {WeightSpec::sum_abs(), WeightSpec::sum_squares()};
  const CheckResult m = run_check(d, cfg);
  CHECK_FALSE(m.bandwidth.has_value());
  CHECK(m.h == 0.35);
  CHECK(std::get<MaximinReport>(m.outcome).d() == 2);
  CHECK(calibration_label(m.outcome) == "chi-square(2)");

  cfg.kind = TestKind::Omnibus;
  cfg.weights.clear();
  cfg.boot_m = 200;
  cfg.boot_seed = 5;
  const CheckResult o = run_check(d, cfg);
  const auto& omni = std::get<OmnibusReport>(o.outcome);
  CHECK(omni.m == 200);
  CHECK(omni.seed == 5);
  CHECK(omni.grid_points == 49);
  CHECK(calibration_label(o.outcome) == "bootstrap-200");
  CHECK(bandwidth_weight(cfg).label() == "sumsq");
}

TEST_CASE("configuration errors")
{
  const Dataset d = null_data(30, 5);
  TestConfig cfg;
  cfg.alpha = 1.5;
  CHECK_THROWS_AS(run_check(d, cfg), ConfigError);
  cfg.alpha = 0.05;
  cfg.fixed_h = -0.2;
  CHECK_THROWS_AS(run_check(d, cfg), ConfigError);
  cfg.fixed_h.reset();
  cfg.weights.clear();
  CHECK_THROWS_AS(run_check(d, cfg), ConfigError);
  cfg.weights = {WeightSpec::char_fn(Eigen::Vector2d(1, 0))};
  CHECK_THROWS_AS(run_check(d, cfg), ConfigError);
  cfg.kind = TestKind::Omnibus;
  cfg.boot_m = 10;
  CHECK_THROWS_AS(run_check(d, cfg), ConfigError);
  CHECK_THROWS_AS(parse_test_kind("wald"), ConfigError);
}

TEST_CASE("report contents")
{
  const Dataset d = null_data(30, 6);
  TestConfig cfg;
  cfg.weights = {WeightSpec::sum_squares()};
  const CheckResult r = run_check(d, cfg);
  const auto report = check_report(r, cfg, {{"source", "unit"}});
  CHECK(report["version"] == kVersion);
  CHECK(report["n"] == 30);
  CHECK(report["p"] == 2);
  CHECK(report["calibration"] == "normal");
  CHECK(report["config"]["boundary"] == "reflect");
  CHECK(report["config"]["h"] == "auto");
  CHECK(report["config"]["weights"][0] == "sumsq");
  CHECK(report["bandwidth"]["mise_weight"] == "sumsq");
  CHECK(report["h"] == r.h);
  CHECK(report["input"]["source"] == "unit");
  CHECK(report["index"]["beta_hat"].size() == 2);
  CHECK(report.contains("p_value"));

  cfg.kind = TestKind::Omnibus;
  cfg.boot_m = 100;
  cfg.boot_seed = 42;
  cfg.fixed_h = 0.4;
  cfg.boundary = Boundary::None;
  const auto omni = check_report(run_check(d, cfg), cfg, {});
  CHECK(omni["config"]["seed"] == 42);
  CHECK(omni["config"]["h"] == 0.4);
  CHECK(omni["config"]["boundary"] == "none");
  CHECK(omni["bootstrap"]["seed"] == 42);
  CHECK(omni["calibration"] == "bootstrap-100");
  CHECK(omni["bandwidth"]["method"] == "fixed");
}
