#include "sicheck/simulate.hpp"

#include <cmath>
#include <sstream>

namespace sicheck {

const char* model_name(Model model)
{
  switch (model) {
    case Model::Continuous:
      return "continuous";
    case Model::Binary:
      return "binary";
    case Model::Interaction:
      return "interaction";
    case Model::Xltz:
      return "xltz";
  }
  return "unknown";
}

Model parse_model(const std::string& text)
{
  if (text == "continuous") {
    return Model::Continuous;
  }
  if (text == "binary") {
    return Model::Binary;
  }
  if (text == "interaction") {
    return Model::Interaction;
  }
  if (text == "xltz") {
    return Model::Xltz;
  }
  throw ConfigError("unknown model '" + text +
                    "' (expected continuous, binary, interaction or xltz)");
}

Eigen::VectorXd default_beta(Eigen::Index p)
{
  Eigen::VectorXd beta(p);
  for (Eigen::Index k = 0; k < p; ++k) {
    beta(k) = (k % 2 == 0) ? 1.0 : -1.0;
  }
  return beta / std::sqrt(static_cast<double>(p));
}

void Scenario::validate() const
{
  if (n < 1 || p < 1) {
    throw ConfigError("scenario: n and p must be positive");
  }
  if (beta.size() != 0 && beta.size() != p) {
    throw ConfigError("scenario: beta has dimension " + std::to_string(beta.size()) +
                      " but p = " + std::to_string(p));
  }
  if (model == Model::Interaction && p != 3) {
    throw ConfigError("scenario: the interaction model requires p = 3");
  }
  if (model == Model::Xltz && p != 2) {
    throw ConfigError("scenario: the xltz model requires p = 2");
  }
  if (!(sigma_eps >= 0.0) || !std::isfinite(sigma_eps)) {
    throw ConfigError("scenario: sigma_eps must be nonnegative");
  }
  if (!std::isfinite(c) || !std::isfinite(c2) || !std::isfinite(c3)) {
    throw ConfigError("scenario: non-finite deviation coefficient");
  }
}

Eigen::VectorXd Scenario::resolved_beta() const
{
  return beta.size() == 0 ? default_beta(p) : beta;
}

Design Scenario::resolved_design() const
{
  if (design != Design::ModelDefault) {
    return design;
  }
  return model == Model::Xltz ? Design::Uniform : Design::Normal;
}

const char* design_name(Design design)
{
  switch (design) {
    case Design::ModelDefault:
      return "default";
    case Design::Normal:
      return "normal";
    case Design::Uniform:
      return "uniform";
  }
  return "unknown";
}

Design parse_design(const std::string& text)
{
  if (text == "default") {
    return Design::ModelDefault;
  }
  if (text == "normal") {
    return Design::Normal;
  }
  if (text == "uniform") {
    return Design::Uniform;
  }
  throw ConfigError("unknown design '" + text + "' (expected default, normal or uniform)");
}

double continuous_mean(const Eigen::VectorXd& x, const Eigen::VectorXd& beta, double c)
{
  const double t = beta.dot(x);
  return t * t * t + c * x.cwiseAbs().sum();
}

double binary_probability(const Eigen::VectorXd& x, const Eigen::VectorXd& beta, double c)
{
  const double eta = -beta.dot(x) + c * x.cwiseAbs().sum();
  // Logistic written to avoid overflow for large |eta|.
  if (eta >= 0.0) {
    return 1.0 / (1.0 + std::exp(-eta));
  }
  const double e = std::exp(eta);
  return e / (1.0 + e);
}

double interaction_mean(const Eigen::VectorXd& x, const Eigen::VectorXd& beta, double c1,
                        double c2, double c3)
{
  const double t = beta.dot(x);
  return t * t * t + c1 * std::abs(x(0) * x(1)) + c2 * std::abs(x(0) * x(2)) +
         c3 * std::abs(x(1) * x(2));
}

double xltz_mean(const Eigen::VectorXd& x, double c)
{
  const double s = x(0) + x(1);
  return s + 4.0 * std::exp(-s * s) + c * std::sqrt(x(0) * x(0) + x(1) * x(1));
}

namespace {

Eigen::MatrixXd draw_covariates(const Scenario& scn, Rng& rng, const detail::GeneratorHooks& hooks)
{
  if (hooks.fixed_x != nullptr) {
    if (hooks.fixed_x->rows() != scn.n || hooks.fixed_x->cols() != scn.p) {
      throw DimensionMismatch("generator hook: fixed covariates have the wrong shape");
    }
    return *hooks.fixed_x;
  }
  const bool uniform = scn.resolved_design() == Design::Uniform;
  const double half_width = std::sqrt(3.0);
  Eigen::MatrixXd x(scn.n, scn.p);
  for (Eigen::Index i = 0; i < scn.n; ++i) {
    for (Eigen::Index k = 0; k < scn.p; ++k) {
      x(i, k) = uniform ? half_width * (2.0 * rng.uniform() - 1.0) : rng.normal();
    }
  }
  return x;
}

template <typename Mean>
Dataset additive_model(const Scenario& scn, Rng& rng, const detail::GeneratorHooks& hooks,
                       double noise_sd, Mean mean)
{
  Dataset d;
  d.x = draw_covariates(scn, rng, hooks);
  d.y.resize(scn.n);
  for (Eigen::Index i = 0; i < scn.n; ++i) {
    d.y(i) = mean(Eigen::VectorXd(d.x.row(i).transpose()));
  }
  if (!hooks.zero_noise) {
    for (Eigen::Index i = 0; i < scn.n; ++i) {
      d.y(i) += noise_sd * rng.normal();
    }
  }
  return d;
}

void expect_model(const Scenario& scn, Model model)
{
  scn.validate();
  if (scn.model != model) {
    throw ConfigError(std::string("generator for model '") + model_name(model) +
                      "' called with scenario model '" + model_name(scn.model) + "'");
  }
}

} // namespace

Dataset gen_continuous(const Scenario& scn, Rng& rng, const detail::GeneratorHooks& hooks)
{
  expect_model(scn, Model::Continuous);
  const Eigen::VectorXd beta = scn.resolved_beta();
  return additive_model(scn, rng, hooks, 1.0,
                        [&](const Eigen::VectorXd& x) { return continuous_mean(x, beta, scn.c); });
}

Dataset gen_binary(const Scenario& scn, Rng& rng, const detail::GeneratorHooks& hooks)
{
  expect_model(scn, Model::Binary);
  const Eigen::VectorXd beta = scn.resolved_beta();
  Dataset d;
  d.x = draw_covariates(scn, rng, hooks);
  d.y.resize(scn.n);
  for (Eigen::Index i = 0; i < scn.n; ++i) {
    const double prob = binary_probability(d.x.row(i).transpose(), beta, scn.c);
    d.y(i) = rng.uniform() < prob ? 1.0 : 0.0;
  }
  return d;
}

Dataset gen_interaction(const Scenario& scn, Rng& rng, const detail::GeneratorHooks& hooks)
{
  expect_model(scn, Model::Interaction);
  const Eigen::VectorXd beta = scn.resolved_beta();
  return additive_model(scn, rng, hooks, 1.0, [&](const Eigen::VectorXd& x) {
    return interaction_mean(x, beta, scn.c, scn.c2, scn.c3);
  });
}

Dataset gen_xltz(const Scenario& scn, Rng& rng, const detail::GeneratorHooks& hooks)
{
  expect_model(scn, Model::Xltz);
  return additive_model(scn, rng, hooks, scn.sigma_eps,
                        [&](const Eigen::VectorXd& x) { return xltz_mean(x, scn.c); });
}

Dataset generate(const Scenario& scn, Rng& rng)
{
  switch (scn.model) {
    case Model::Continuous:
      return gen_continuous(scn, rng);
    case Model::Binary:
      return gen_binary(scn, rng);
    case Model::Interaction:
      return gen_interaction(scn, rng);
    case Model::Xltz:
      return gen_xltz(scn, rng);
  }
  throw ConfigError("unknown model");
}

Dataset generate_replicate(const Scenario& scn, std::uint64_t r)
{
  Rng rng(derive_seed(scn.seed, r, kStreamData));
  return generate(scn, rng);
}

MCResult summarize_rejections(const std::vector<char>& rejected)
{
  MCResult out;
  out.replications = static_cast<int>(rejected.size());
  for (char v : rejected) {
    out.rejections += v != 0 ? 1 : 0;
  }
  if (out.replications > 0) {
    const double reps = out.replications;
    out.rejection_rate = out.rejections / reps;
    out.mc_stderr = std::sqrt(out.rejection_rate * (1.0 - out.rejection_rate) / reps);
  }
  return out;
}

MCResult monte_carlo(const Scenario& scn, const ReplicateTest& test, int reps, int threads)
{
  if (reps < 1) {
    throw ConfigError("monte_carlo: need at least one replication");
  }
  scn.validate();
  try {
    const auto rejected = parallel_replicates<char>(reps, threads, [&](int r) -> char {
      const auto idx = static_cast<std::uint64_t>(r);
      return test(generate_replicate(scn, idx), idx) ? 1 : 0;
    });
    return summarize_rejections(rejected);
  } catch (const Error& e) {
    std::ostringstream os;
    os << "scenario model=" << model_name(scn.model) << " n=" << scn.n << " p=" << scn.p
       << " c=" << scn.c << " seed=" << scn.seed << ": " << e.what();
    throw Error(os.str());
  }
}

MCResult monte_carlo(const Scenario& scn, const TestConfig& test, int reps, int threads)
{
  test.validate();
  return monte_carlo(
    scn,
    [&](const Dataset& data, std::uint64_t r) {
      TestConfig cfg = test;
      cfg.boot_seed = derive_seed(scn.seed, r, kStreamBootstrap);
      return run_check(data, cfg).reject();
    },
    reps, threads);
}

} // namespace sicheck
