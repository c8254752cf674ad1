#include "sicheck/batch.hpp"

#include "sicheck/errors.hpp"

#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace sicheck {

namespace {

std::string fail_prefix(int line)
{
  return "batch line " + std::to_string(line) + ": ";
}

double to_double(const std::string& key, const std::string& value, int line)
{
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used == value.size()) {
      return v;
    }
  } catch (const std::exception&) {
  }
  throw ConfigError(fail_prefix(line) + key + "='" + value + "' is not a number");
}

long long to_integer(const std::string& key, const std::string& value, int line)
{
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used == value.size()) {
      return v;
    }
  } catch (const std::exception&) {
  }
  throw ConfigError(fail_prefix(line) + key + "='" + value + "' is not an integer");
}

std::uint64_t to_seed(const std::string& value, int line)
{
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(value, &used);
    if (used == value.size() && value.front() != '-') {
      return v;
    }
  } catch (const std::exception&) {
  }
  throw ConfigError(fail_prefix(line) + "seed='" + value + "' is not an unsigned integer");
}

std::string format_number(double v)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string csv_field(const std::string& s)
{
  return s.find(',') == std::string::npos ? s : "\"" + s + "\"";
}

} // namespace

BatchEntry parse_batch_line(const std::string& text, int line)
{
  BatchEntry entry;
  entry.line = line;
  std::vector<std::string> weights;
  std::string test = "score";
  std::istringstream is(text);
  std::string token;
  bool beta_given = false;
  bool p_given = false;
  std::vector<double> beta;

  while (is >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == token.size()) {
      throw ConfigError(fail_prefix(line) + "expected key=value, got '" + token + "'");
    }
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    Scenario& s = entry.scenario;
    TestConfig& t = entry.test;

    try {
      if (key == "model") {
        s.model = parse_model(value);
      } else if (key == "n") {
        s.n = to_integer(key, value, line);
      } else if (key == "p") {
        s.p = to_integer(key, value, line);
        p_given = true;
      } else if (key == "c" || key == "c1") {
        s.c = to_double(key, value, line);
      } else if (key == "c2") {
        s.c2 = to_double(key, value, line);
      } else if (key == "c3") {
        s.c3 = to_double(key, value, line);
      } else if (key == "sigma") {
        s.sigma_eps = to_double(key, value, line);
      } else if (key == "beta") {
        beta_given = true;
        std::istringstream bs(value);
        std::string item;
        while (std::getline(bs, item, ',')) {
          beta.push_back(to_double(key, item, line));
        }
      } else if (key == "seed") {
        s.seed = to_seed(value, line);
      } else if (key == "reps") {
        entry.reps = static_cast<int>(to_integer(key, value, line));
      } else if (key == "test") {
        test = value;
      } else if (key == "weight") {
        weights.push_back(value);
      } else if (key == "alpha") {
        t.alpha = to_double(key, value, line);
      } else if (key == "h") {
        if (value == "auto") {
          t.fixed_h.reset();
        } else {
          t.fixed_h = to_double(key, value, line);
        }
      } else if (key == "boot_m") {
        t.boot_m = static_cast<int>(to_integer(key, value, line));
      } else if (key == "grid_bound") {
        t.gamma_bound = to_double(key, value, line);
      } else if (key == "grid_per_axis") {
        t.gamma_per_axis = static_cast<int>(to_integer(key, value, line));
      } else if (key == "boundary") {
        t.boundary = parse_boundary(value);
      } else if (key == "design") {
        s.design = parse_design(value);
      } else if (key == "bw_lo") {
        t.bandwidth_grid.lo_factor = to_double(key, value, line);
      } else if (key == "bw_hi") {
        t.bandwidth_grid.hi_factor = to_double(key, value, line);
      } else if (key == "bw_size") {
        t.bandwidth_grid.size = static_cast<int>(to_integer(key, value, line));
      } else {
        throw ConfigError("unknown key '" + key + "'");
      }
    } catch (const ConfigError& e) {
      const std::string msg = e.what();
      if (msg.rfind("batch line", 0) == 0) {
        throw;
      }
      throw ConfigError(fail_prefix(line) + msg);
    }
  }

  try {
    if (entry.scenario.model == Model::Interaction && !p_given) {
      entry.scenario.p = 3;
    }
    if (beta_given) {
      entry.scenario.beta = Eigen::Map<Eigen::VectorXd>(beta.data(),
                                                        static_cast<Eigen::Index>(beta.size()));
    }
    entry.scenario.validate();
    entry.test.kind = parse_test_kind(test);
    entry.test.weights.clear();
    for (const auto& w : weights) {
      if (w == "cf") {
        if (entry.test.kind != TestKind::Omnibus) {
          throw ConfigError("weight 'cf' names the omnibus family; use cf:g1,... for a single "
                            "frequency");
        }
        continue;
      }
      entry.test.weights.push_back(parse_weight(w, entry.scenario.p));
    }
    if (entry.test.weights.empty() && entry.test.kind != TestKind::Omnibus) {
      entry.test.weights.push_back(WeightSpec::sum_abs());
    }
    if (entry.reps < 1) {
      throw ConfigError("reps must be at least 1");
    }
    entry.test.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(fail_prefix(line) + e.what());
  }
  return entry;
}

std::vector<BatchEntry> parse_batch(std::istream& in)
{
  std::vector<BatchEntry> entries;
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string::npos || text[first] == '#') {
      continue;
    }
    entries.push_back(parse_batch_line(text, line));
  }
  return entries;
}

std::string simulation_csv_header()
{
  return "line,model,n,p,c,c2,c3,sigma_eps,design,seed,test,weights,alpha,h,boundary,boot_m,reps,"
         "rejections,rejection_rate,mc_stderr";
}

std::string simulation_csv_row(const BatchEntry& entry, const MCResult& result)
{
  const Scenario& s = entry.scenario;
  const TestConfig& t = entry.test;
  std::string weights;
  if (t.kind == TestKind::Omnibus) {
    weights = "cf";
  } else {
    for (std::size_t k = 0; k < t.weights.size(); ++k) {
      weights += (k ? ";" : "") + t.weights[k].label();
    }
  }
  std::ostringstream os;
  os << entry.line << "," << model_name(s.model) << "," << s.n << "," << s.p << ","
     << format_number(s.c) << "," << format_number(s.c2) << "," << format_number(s.c3) << ","
     << format_number(s.sigma_eps) << "," << design_name(s.resolved_design()) << "," << s.seed
     << "," << test_kind_name(t.kind) << ","
     << csv_field(weights) << "," << format_number(t.alpha) << ","
     << (t.fixed_h ? format_number(*t.fixed_h) : std::string("auto")) << ","
     << boundary_name(t.boundary) << ","
     << (t.kind == TestKind::Omnibus ? std::to_string(t.boot_m) : std::string("")) << ","
     << result.replications << "," << result.rejections << ","
     << format_number(result.rejection_rate) << "," << format_number(result.mc_stderr);
  return os.str();
}

void run_simulation(std::istream& batch, std::ostream& csv, int threads)
{
  const auto entries = parse_batch(batch);
  csv << simulation_csv_header() << "\n";
  for (const auto& entry : entries) {
    MCResult result;
    try {
      result = monte_carlo(entry.scenario, entry.test, entry.reps, threads);
    } catch (const Error& e) {
      throw Error(fail_prefix(entry.line) + e.what());
    }
    csv << simulation_csv_row(entry, result) << "\n";
    csv.flush();
  }
}

} // namespace sicheck
