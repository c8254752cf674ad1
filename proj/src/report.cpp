#include "sicheck/report.hpp"

#include "sicheck/version.hpp"

#include <vector>

namespace sicheck {

namespace {

using nlohmann::json;

json vec(const Eigen::VectorXd& v)
{
  return json(std::vector<double>(v.data(), v.data() + v.size()));
}

json mat(const Eigen::MatrixXd& m)
{
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    rows.push_back(vec(m.row(i).transpose()));
  }
  return rows;
}

} // namespace

json to_json(const ScoreReport& r)
{
  return json{
    {"test", "score"},
    {"statistic", r.t_bar},
    {"t_hat", r.t_hat},
    {"sigma_n2", r.sigma_n2},
    {"critical_value", r.critical_value},
    {"p_value", r.p_value},
    {"alpha", r.alpha},
    {"reject", r.reject},
    {"h", r.h},
    {"n", r.n},
    {"d", 1},
    {"weight_kinds", json::array({r.weight})},
    {"calibration", "normal"},
    {"diagnostics", {{"empty_windows", r.empty_windows}}},
  };
}

json to_json(const MaximinReport& r)
{
  return json{
    {"test", "maximin"},
    {"statistic", r.statistic},
    {"t_vec", vec(r.t_vec)},
    {"sigma_mat", mat(r.sigma_mat)},
    {"c_alpha", r.c_alpha},
    {"p_value", r.p_value},
    {"alpha", r.alpha},
    {"reject", r.reject},
    {"h", r.h},
    {"n", r.n},
    {"d", r.d()},
    {"weight_kinds", r.weights},
    {"calibration", "chi-square(" + std::to_string(r.d()) + ")"},
    {"diagnostics", {{"empty_windows", r.empty_windows}}},
  };
}

json to_json(const OmnibusReport& r)
{
  return json{
    {"test", "omnibus"},
    {"statistic", r.t_tilde},
    {"critical_value", r.critical_value},
    {"p_value", r.p_value},
    {"alpha", r.alpha},
    {"reject", r.reject},
    {"h", r.h},
    {"n", r.n},
    {"d", r.grid_points},
    {"weight_kinds", json::array({"cf"})},
    {"calibration", "bootstrap-" + std::to_string(r.m)},
    {"bootstrap", {{"m", r.m}, {"seed", r.seed}, {"multipliers", "standard-normal"}}},
    {"grid",
     {{"points", r.grid_points},
      {"bound", r.grid_bound},
      {"per_axis", r.grid_per_axis},
      {"layout", r.grid_layout},
      {"standardized_covariates", r.grid_standardized},
      {"argmax_gamma", vec(r.argmax_gamma)}}},
    {"diagnostics", {{"empty_windows", r.empty_windows}}},
  };
}

json to_json(const TestConfig& cfg)
{
  json weights = json::array();
  for (const auto& w : cfg.weights) {
    weights.push_back(w.label());
  }
  json out{
    {"test", test_kind_name(cfg.kind)},
    {"weights", weights},
    {"alpha", cfg.alpha},
    {"h", cfg.fixed_h ? json(*cfg.fixed_h) : json("auto")},
    {"bandwidth_grid",
     {{"lo_factor", cfg.bandwidth_grid.lo_factor},
      {"hi_factor", cfg.bandwidth_grid.hi_factor},
      {"size", cfg.bandwidth_grid.size}}},
    {"kernel", "quartic"},
    {"boundary", boundary_name(cfg.boundary)},
  };
  if (cfg.kind == TestKind::Omnibus) {
    out["grid_bound"] = cfg.gamma_bound;
    out["grid_per_axis"] = cfg.gamma_per_axis;
    out["boot_m"] = cfg.boot_m;
    out["seed"] = cfg.boot_seed;
  }
  return out;
}

std::string calibration_label(const TestOutcome& outcome)
{
  if (std::holds_alternative<ScoreReport>(outcome)) {
    return "normal";
  }
  if (const auto* m = std::get_if<MaximinReport>(&outcome)) {
    return "chi-square(" + std::to_string(m->d()) + ")";
  }
  return "bootstrap-" + std::to_string(std::get<OmnibusReport>(outcome).m);
}

json check_report(const CheckResult& result, const TestConfig& cfg, const json& input)
{
  json out = std::visit([](const auto& r) { return to_json(r); }, result.outcome);
  out["version"] = kVersion;
  out["input"] = input;
  out["p"] = result.fit.beta_hat.size();
  out["config"] = to_json(cfg);
  out["index"] = {{"estimator", "ols"}, {"beta_hat", vec(result.fit.beta_hat)}};
  if (result.bandwidth) {
    out["bandwidth"] = {
      {"method", "mise-undersmoothed"},
      {"h1", result.bandwidth->h1},
      {"h_final", result.bandwidth->h_final},
      {"grid_min", result.bandwidth->grid.front()},
      {"grid_max", result.bandwidth->grid.back()},
      {"grid_size", result.bandwidth->grid.size()},
      {"mise_weight", bandwidth_weight(cfg).label()},
    };
  } else {
    out["bandwidth"] = {{"method", "fixed"}, {"h_final", result.h}};
  }
  return out;
}

} // namespace sicheck
