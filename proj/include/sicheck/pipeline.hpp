#pragma once

#include "sicheck/bandwidth.hpp"
#include "sicheck/dataset.hpp"
#include "sicheck/index.hpp"
#include "sicheck/omnibus.hpp"
#include "sicheck/score_test.hpp"
#include "sicheck/weights.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace sicheck {

enum class TestKind
{
  Score,
  Maximin,
  Omnibus,
};

const char* test_kind_name(TestKind kind);
TestKind parse_test_kind(const std::string& text);

//! Everything needed to run one test on one dataset.
struct TestConfig
{
  TestKind kind = TestKind::Score;
  //! Score: the first entry. Maximin: the whole family. Omnibus: the first
  //! real-valued entry drives bandwidth selection (sum of squares if none).
  std::vector<WeightSpec> weights{WeightSpec::sum_abs()};
  double alpha = 0.05;
  //! Fixed bandwidth; empty selects it from the data.
  std::optional<double> fixed_h;
  GridSpec bandwidth_grid;
  Boundary boundary = Boundary::Reflect;
  double gamma_bound = 3.0;
  int gamma_per_axis = 7;
  int boot_m = 1000;
  std::uint64_t boot_seed = 271828;

  //! Throws ConfigError for out-of-range settings.
  void validate() const;
};

//! Weight whose squares scale the bandwidth criterion for this test.
WeightSpec bandwidth_weight(const TestConfig& cfg);

using TestOutcome = std::variant<ScoreReport, MaximinReport, OmnibusReport>;

struct CheckResult
{
  IndexFit fit;
  std::optional<BandwidthChoice> bandwidth; // set when h was selected
  double h = 0.0;
  TestOutcome outcome;

  bool reject() const;
  double p_value() const;
  double statistic() const;
};

//! Index fit, bandwidth, residuals and the requested test.
CheckResult run_check(const Dataset& data, const TestConfig& cfg);

} // namespace sicheck
