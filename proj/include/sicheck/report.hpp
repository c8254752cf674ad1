#pragma once

#include "sicheck/pipeline.hpp"

#include <json.hpp>

#include <string>

namespace sicheck {

nlohmann::json to_json(const ScoreReport& r);
nlohmann::json to_json(const MaximinReport& r);
nlohmann::json to_json(const OmnibusReport& r);

//! Resolved test configuration, enough to rerun the check.
nlohmann::json to_json(const TestConfig& cfg);

//! Full report: version, input description, n, p, the resolved config,
//! index fit, bandwidth provenance and the test outcome with its
//! calibration method.
nlohmann::json check_report(const CheckResult& result, const TestConfig& cfg,
                            const nlohmann::json& input);

//! "normal", "chi-square(d)" or "bootstrap-m".
std::string calibration_label(const TestOutcome& outcome);

} // namespace sicheck
