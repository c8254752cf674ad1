#pragma once

#include "sicheck/pipeline.hpp"
#include "sicheck/simulate.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace sicheck {

//! One simulation job: a scenario, a test and a replication count.
struct BatchEntry
{
  int line = 0;
  Scenario scenario;
  TestConfig test;
  int reps = 1000;
};

//! Parses whitespace-separated key=value tokens, e.g.
//!
//!   model=continuous n=50 p=2 c=0 test=score weight=sumabs reps=500 seed=7
//!
//! Keys: model, n, p, c, c1, c2, c3, sigma, beta (comma list), seed, reps,
//! test, weight (repeatable), alpha, h (auto or a value), boot_m,
//! grid_bound, grid_per_axis, bw_lo, bw_hi, bw_size, boundary (none or
//! reflect), design (default, normal or uniform). Throws ConfigError
//! naming `line` on malformed input.
BatchEntry parse_batch_line(const std::string& text, int line = 1);

//! Every non-blank line not starting with '#' is one entry.
std::vector<BatchEntry> parse_batch(std::istream& in);

//! Header of the simulation CSV.
std::string simulation_csv_header();

//! One CSV row for an entry and its result.
std::string simulation_csv_row(const BatchEntry& entry, const MCResult& result);

//! Runs every entry and writes header plus one row per entry. Output does
//! not depend on `threads`.
void run_simulation(std::istream& batch, std::ostream& csv, int threads = 1);

} // namespace sicheck
