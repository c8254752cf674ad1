#include "sicheck/pipeline.hpp"

#include "sicheck/errors.hpp"

#include <cmath>

namespace sicheck {

const char* test_kind_name(TestKind kind)
{
  switch (kind) {
    case TestKind::Score:
      return "score";
    case TestKind::Maximin:
      return "maximin";
    case TestKind::Omnibus:
      return "omnibus";
  }
  return "unknown";
}

TestKind parse_test_kind(const std::string& text)
{
  if (text == "score") {
    return TestKind::Score;
  }
  if (text == "maximin") {
    return TestKind::Maximin;
  }
  if (text == "omnibus") {
    return TestKind::Omnibus;
  }
  throw ConfigError("unknown test '" + text + "' (expected score, maximin or omnibus)");
}

void TestConfig::validate() const
{
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ConfigError("alpha must lie in (0, 1), got " + std::to_string(alpha));
  }
  if (fixed_h && (!(*fixed_h > 0.0) || !std::isfinite(*fixed_h))) {
    throw ConfigError("fixed bandwidth must be positive");
  }
  if (kind != TestKind::Omnibus && weights.empty()) {
    throw ConfigError(std::string(test_kind_name(kind)) + " test needs at least one weight");
  }
  if (kind == TestKind::Score && weights.front().is_complex()) {
    throw ConfigError("score test needs a real-valued weight; use maximin for cf weights");
  }
  if (kind == TestKind::Omnibus) {
    BootstrapConfig{boot_m, alpha, boot_seed}.validate();
    if (!(gamma_bound > 0.0) || gamma_per_axis < 2) {
      throw ConfigError("gamma grid needs bound > 0 and at least 2 points per axis");
    }
  }
  if (bandwidth_grid.size < 1 || !(bandwidth_grid.lo_factor > 0.0) ||
      bandwidth_grid.hi_factor < bandwidth_grid.lo_factor) {
    throw ConfigError("bandwidth grid needs size >= 1 and 0 < lo <= hi");
  }
}

WeightSpec bandwidth_weight(const TestConfig& cfg)
{
  for (const auto& w : cfg.weights) {
    if (!w.is_complex()) {
      return w;
    }
  }
  return WeightSpec::sum_squares();
}

bool CheckResult::reject() const
{
  return std::visit([](const auto& r) { return r.reject; }, outcome);
}

double CheckResult::p_value() const
{
  return std::visit([](const auto& r) { return r.p_value; }, outcome);
}

double CheckResult::statistic() const
{
  if (const auto* s = std::get_if<ScoreReport>(&outcome)) {
    return s->t_bar;
  }
  if (const auto* m = std::get_if<MaximinReport>(&outcome)) {
    return m->statistic;
  }
  return std::get<OmnibusReport>(outcome).t_tilde;
}

CheckResult run_check(const Dataset& data, const TestConfig& cfg)
{
  cfg.validate();
  CheckResult result;
  result.fit = fit_index(data);

  const SmootherConfig base{KernelId::Quartic, 0.5, cfg.boundary};
  if (cfg.fixed_h) {
    result.h = *cfg.fixed_h;
  } else {
    const Eigen::VectorXd w = evaluate_weight(bandwidth_weight(cfg), data.x);
    result.bandwidth = select_bandwidth(data, result.fit, w,
                                        default_grid(data.n(), cfg.bandwidth_grid), base);
    result.h = result.bandwidth->h_final;
  }
  const SmootherConfig smoother{KernelId::Quartic, result.h, cfg.boundary};

  switch (cfg.kind) {
    case TestKind::Score:
      result.outcome =
        standardized_test(data, result.fit, cfg.weights.front(), smoother, cfg.alpha);
      break;
    case TestKind::Maximin:
      result.outcome = maximin_test(data, result.fit, cfg.weights, smoother, cfg.alpha);
      break;
    case TestKind::Omnibus: {
      const GammaGrid grid = make_gamma_grid(data.p(), cfg.gamma_bound, cfg.gamma_per_axis);
      result.outcome = omnibus_test(data, result.fit, smoother, grid,
                                    BootstrapConfig{cfg.boot_m, cfg.alpha, cfg.boot_seed});
      break;
    }
  }
  return result;
}

} // namespace sicheck
