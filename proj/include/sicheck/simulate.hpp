#pragma once

#include "sicheck/dataset.hpp"
#include "sicheck/errors.hpp"
#include "sicheck/pipeline.hpp"
#include "sicheck/random.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace sicheck {

enum class Model
{
  Continuous,  //!< (beta^T x)^3 + c sum|x_l| + N(0, 1)
  Binary,      //!< Bernoulli, logit of -beta^T x + c sum|x_l|
  Interaction, //!< (beta^T x)^3 + c1|x1 x2| + c2|x1 x3| + c3|x2 x3| + N(0, 1)
  Xltz,        //!< x1 + x2 + 4 exp(-(x1 + x2)^2) + c |x| + N(0, sigma^2)
};

const char* model_name(Model model);
Model parse_model(const std::string& text);

//! Covariate law. Normal is N(0, I_p); Uniform draws each coordinate from
//! U(-sqrt(3), sqrt(3)), which also has unit variance. ModelDefault picks
//! Uniform for Xltz and Normal otherwise.
enum class Design
{
  ModelDefault,
  Normal,
  Uniform,
};

const char* design_name(Design design);
Design parse_design(const std::string& text);

struct Scenario
{
  Model model = Model::Continuous;
  Eigen::Index n = 50;
  Eigen::Index p = 2;
  Eigen::VectorXd beta; // empty: default_beta(p)
  double c = 0.0;       // c1 for the interaction model
  double c2 = 0.0;
  double c3 = 0.0;
  double sigma_eps = 1.0; // Xltz only
  Design design = Design::ModelDefault;
  std::uint64_t seed = 1;

  //! Throws ConfigError for inconsistent settings (e.g. Interaction with
  //! p != 3).
  void validate() const;
  Eigen::VectorXd resolved_beta() const;
  Design resolved_design() const;
};

//! (1, -1, 1, ...) / sqrt(p).
Eigen::VectorXd default_beta(Eigen::Index p);

//! Regression functions, exposed for checking generators.
double continuous_mean(const Eigen::VectorXd& x, const Eigen::VectorXd& beta, double c);
double binary_probability(const Eigen::VectorXd& x, const Eigen::VectorXd& beta, double c);
double interaction_mean(const Eigen::VectorXd& x, const Eigen::VectorXd& beta, double c1,
                        double c2, double c3);
double xltz_mean(const Eigen::VectorXd& x, double c);

namespace detail {

//! Deterministic overrides for unit tests; the CLI never sets these.
struct GeneratorHooks
{
  bool zero_noise = false;
  const Eigen::MatrixXd* fixed_x = nullptr;
};

} // namespace detail

Dataset gen_continuous(const Scenario& scn, Rng& rng, const detail::GeneratorHooks& hooks = {});
Dataset gen_binary(const Scenario& scn, Rng& rng, const detail::GeneratorHooks& hooks = {});
Dataset gen_interaction(const Scenario& scn, Rng& rng, const detail::GeneratorHooks& hooks = {});
Dataset gen_xltz(const Scenario& scn, Rng& rng, const detail::GeneratorHooks& hooks = {});

//! Dispatches on scn.model.
Dataset generate(const Scenario& scn, Rng& rng);

//! Dataset for replicate `r`, drawn from stream derive_seed(seed, r).
Dataset generate_replicate(const Scenario& scn, std::uint64_t r);

//! Calls fn(r) for r in [0, reps) on up to `threads` workers and returns
//! the results in replicate order. The first failing replicate (lowest
//! index) is rethrown as Error with its index in the message.
template <typename T>
std::vector<T> parallel_replicates(int reps, int threads, const std::function<T(int)>& fn);

struct MCResult
{
  int replications = 0;
  int rejections = 0;
  double rejection_rate = 0.0;
  double mc_stderr = 0.0;
};

//! Rejection rate and binomial standard error sqrt(r (1 - r) / reps).
MCResult summarize_rejections(const std::vector<char>& rejected);

//! Decision for one replicate: (dataset, replicate index) -> reject?
using ReplicateTest = std::function<bool(const Dataset&, std::uint64_t)>;

MCResult monte_carlo(const Scenario& scn, const ReplicateTest& test, int reps, int threads = 1);

//! Full pipeline per replicate; the bootstrap seed of replicate r is
//! derive_seed(scn.seed, r, kStreamBootstrap).
MCResult monte_carlo(const Scenario& scn, const TestConfig& test, int reps, int threads = 1);

// ---------------------------------------------------------------------------

template <typename T>
std::vector<T> parallel_replicates(int reps, int threads, const std::function<T(int)>& fn)
{
  if (reps < 0) {
    throw InvalidArgument("parallel_replicates: negative replicate count");
  }
  std::vector<T> out(static_cast<std::size_t>(reps));
  std::atomic<int> next{0};
  std::mutex mutex;
  int failed_index = reps;
  std::exception_ptr failure;

  auto worker = [&] {
    for (int r = next++; r < reps; r = next++) {
      try {
        out[static_cast<std::size_t>(r)] = fn(r);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mutex);
        if (r < failed_index) {
          failed_index = r;
          failure = std::current_exception();
        }
      }
    }
  };

  const int count = std::max(1, std::min(threads, reps));
  if (count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(count));
    for (int t = 0; t < count; ++t) {
      pool.emplace_back(worker);
    }
    for (auto& th : pool) {
      th.join();
    }
  }

  if (failure) {
    try {
      std::rethrow_exception(failure);
    } catch (const std::exception& e) {
      throw Error("replicate " + std::to_string(failed_index) + ": " + e.what());
    }
  }
  return out;
}

} // namespace sicheck
