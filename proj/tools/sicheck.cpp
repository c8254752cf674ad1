// Command-line front end: `check` runs one test on a CSV file or a
// simulated scenario, `simulate` runs a batch of Monte Carlo studies.

#include "sicheck/batch.hpp"
#include "sicheck/csv.hpp"
#include "sicheck/errors.hpp"
#include "sicheck/pipeline.hpp"
#include "sicheck/report.hpp"
#include "sicheck/simulate.hpp"
#include "sicheck/version.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace {

struct CheckOptions
{
  std::string input;
  std::string scenario;
  std::string test = "score";
  std::vector<std::string> weights;
  double alpha = 0.05;
  std::string h = "auto";
  double grid_bound = 3.0;
  int grid_per_axis = 7;
  int boot_m = 1000;
  std::uint64_t seed = 271828;
  double bw_lo = 0.5;
  double bw_hi = 3.0;
  int bw_size = 30;
  std::string boundary = "reflect";
  std::string out;
};

struct SimulateOptions
{
  std::string batch;
  std::string out;
  int threads = 1;
};

sicheck::TestConfig build_test_config(const CheckOptions& o, Eigen::Index p)
{
  using namespace sicheck;
  TestConfig cfg;
  cfg.kind = parse_test_kind(o.test);
  cfg.alpha = o.alpha;
  if (o.h != "auto") {
    try {
      std::size_t used = 0;
      cfg.fixed_h = std::stod(o.h, &used);
      if (used != o.h.size()) {
        throw std::invalid_argument(o.h);
      }
    } catch (const std::exception&) {
      throw ConfigError("--h must be 'auto' or a positive number, got '" + o.h + "'");
    }
  }
  cfg.gamma_bound = o.grid_bound;
  cfg.gamma_per_axis = o.grid_per_axis;
  cfg.boot_m = o.boot_m;
  cfg.boot_seed = o.seed;
  cfg.bandwidth_grid = GridSpec{o.bw_lo, o.bw_hi, o.bw_size};
  cfg.boundary = parse_boundary(o.boundary);
  cfg.weights.clear();
  for (const auto& w : o.weights) {
    if (w == "cf") {
      if (cfg.kind != TestKind::Omnibus) {
        throw ConfigError("--weight cf selects the omnibus family and requires --test omnibus; "
                          "use cf:g1,... for a single frequency");
      }
      continue;
    }
    cfg.weights.push_back(parse_weight(w, p));
  }
  if (cfg.weights.empty() && cfg.kind != TestKind::Omnibus) {
    cfg.weights.push_back(WeightSpec::sum_abs());
  }
  cfg.validate();
  return cfg;
}

int run_check_command(const CheckOptions& o)
{
  using namespace sicheck;
  if (o.input.empty() == o.scenario.empty()) {
    throw ConfigError("check needs exactly one of --input or --scenario");
  }
  if (!(o.alpha > 0.0 && o.alpha < 1.0)) {
    throw ConfigError("--alpha must lie in (0, 1), got " + std::to_string(o.alpha));
  }

  Dataset data;
  nlohmann::json input;
  if (!o.input.empty()) {
    data = load_dataset(o.input);
    input = {{"path", o.input}};
  } else {
    const BatchEntry entry = parse_batch_line(o.scenario, 1);
    data = generate_replicate(entry.scenario, 0);
    input = {{"scenario", o.scenario},
             {"model", model_name(entry.scenario.model)},
             {"seed", entry.scenario.seed},
             {"replicate", 0}};
  }

  const TestConfig cfg = build_test_config(o, data.p());
  const CheckResult result = run_check(data, cfg);
  const nlohmann::json report = check_report(result, cfg, input);

  if (!o.out.empty()) {
    std::ofstream out(o.out);
    if (!out) {
      throw DataError("cannot write '" + o.out + "'");
    }
    out << report.dump(2) << "\n";
  } else {
    std::cout << report.dump(2) << "\n";
  }
  std::cerr << test_kind_name(cfg.kind) << " test: statistic=" << result.statistic()
            << " p_value=" << result.p_value() << " calibration="
            << calibration_label(result.outcome) << " h=" << result.h
            << " reject=" << (result.reject() ? "true" : "false") << " (alpha=" << cfg.alpha
            << ")\n";
  return 0;
}

int run_simulate_command(const SimulateOptions& o)
{
  using namespace sicheck;
  std::ifstream batch(o.batch);
  if (!batch) {
    throw DataError("cannot open batch file '" + o.batch + "'");
  }
  if (o.threads < 1) {
    throw ConfigError("--threads must be at least 1");
  }
  if (o.out.empty()) {
    run_simulation(batch, std::cout, o.threads);
    return 0;
  }
  std::ofstream out(o.out);
  if (!out) {
    throw DataError("cannot write '" + o.out + "'");
  }
  run_simulation(batch, out, o.threads);
  return 0;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Goodness-of-fit checks for single-index regression models"};
  app.set_version_flag("--version", sicheck::kVersion);
  app.require_subcommand(1);

  CheckOptions check;
  auto* cmd_check = app.add_subcommand("check", "Test one dataset");
  // Frees "--h" for the bandwidth.
  cmd_check->set_help_flag("--help", "Print this help message and exit");
  cmd_check->add_option("--input", check.input, "CSV file with a 'y' column");
  cmd_check->add_option("--scenario", check.scenario,
                        "Simulated data instead of a file, e.g. \"model=continuous n=50 seed=1\"");
  cmd_check->add_option("--test", check.test, "score | maximin | omnibus")
    ->check(CLI::IsMember({"score", "maximin", "omnibus"}));
  cmd_check->add_option("--weight", check.weights,
                        "sumabs | sumsq | interaction | absprod:A:B | cf:g1,... | cf "
                        "(repeat for maximin)");
  cmd_check->add_option("--alpha", check.alpha, "Significance level");
  cmd_check->add_option("--h", check.h, "Bandwidth: auto or a fixed value");
  cmd_check->add_option("--grid-bound", check.grid_bound, "Omnibus gamma box half-width");
  cmd_check->add_option("--grid-per-axis", check.grid_per_axis, "Omnibus gamma points per axis");
  cmd_check->add_option("--boot-m", check.boot_m, "Bootstrap replicates");
  cmd_check->add_option("--seed", check.seed, "Bootstrap seed");
  cmd_check->add_option("--bw-lo", check.bw_lo, "Bandwidth grid lower factor of n^-1/5");
  cmd_check->add_option("--bw-hi", check.bw_hi, "Bandwidth grid upper factor of n^-1/5");
  cmd_check->add_option("--bw-size", check.bw_size, "Bandwidth grid size");
  cmd_check->add_option("--boundary", check.boundary, "Smoother boundary rule: reflect or none");
  cmd_check->add_option("--out", check.out, "Report path (JSON); stdout if omitted");

  SimulateOptions sim;
  auto* cmd_sim = app.add_subcommand("simulate", "Run a batch of Monte Carlo size/power studies");
  cmd_sim->add_option("--batch", sim.batch, "Batch file, one key=value job per line")->required();
  cmd_sim->add_option("--out", sim.out, "CSV output; stdout if omitted");
  cmd_sim->add_option("--threads", sim.threads, "Worker threads")
    ->default_val(std::max(1u, std::thread::hardware_concurrency()));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_check) {
      return run_check_command(check);
    }
    return run_simulate_command(sim);
  } catch (const sicheck::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
