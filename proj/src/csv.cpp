#include "sicheck/csv.hpp"

#include "sicheck/errors.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <vector>

namespace sicheck {

namespace {

std::string trim(const std::string& s)
{
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string unquote(const std::string& s)
{
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

std::vector<std::string> split_fields(const std::string& line)
{
  std::vector<std::string> fields;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) {
    fields.push_back(unquote(trim(field)));
  }
  if (!line.empty() && line.back() == ',') {
    fields.emplace_back();
  }
  return fields;
}

bool parse_double(const std::string& text, double& value)
{
  if (text.empty()) {
    return false;
  }
  errno = 0;
  char* end = nullptr;
  value = std::strtod(text.c_str(), &end);
  return end == text.c_str() + text.size() && errno != ERANGE && std::isfinite(value);
}

} // namespace

Dataset parse_dataset_csv(std::istream& in, const std::string& source)
{
  std::string line;
  int line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) {
      header = split_fields(line);
      break;
    }
  }
  if (header.empty()) {
    throw DataError(source + ": empty file, expected a header row");
  }

  int y_col = -1;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == "y") {
      if (y_col >= 0) {
        throw DataError(source + ": header has more than one 'y' column");
      }
      y_col = static_cast<int>(c);
    }
  }
  if (y_col < 0) {
    throw DataError(source + ": header has no column named 'y'");
  }
  if (header.size() < 2) {
    throw DataError(source + ": need at least one covariate column besides 'y'");
  }

  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) {
      continue;
    }
    const auto fields = split_fields(line);
    if (fields.size() != header.size()) {
      throw DataError(source + ": line " + std::to_string(line_no) + " has " +
                      std::to_string(fields.size()) + " fields, header has " +
                      std::to_string(header.size()));
    }
    std::vector<double> row(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (!parse_double(fields[c], row[c])) {
        throw DataError(source + ": line " + std::to_string(line_no) + ", column '" + header[c] +
                        "': '" + fields[c] + "' is not a finite number");
      }
    }
    rows.push_back(std::move(row));
  }

  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto p = static_cast<Eigen::Index>(header.size()) - 1;
  Dataset d;
  d.x.resize(n, p);
  d.y.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index k = 0;
    for (std::size_t c = 0; c < header.size(); ++c) {
      const double v = rows[static_cast<std::size_t>(i)][c];
      if (static_cast<int>(c) == y_col) {
        d.y(i) = v;
      } else {
        d.x(i, k++) = v;
      }
    }
  }
  return d;
}

Dataset load_dataset(const std::string& path)
{
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open '" + path + "'");
  }
  Dataset d = parse_dataset_csv(in, path);
  if (d.n() < kMinObservations) {
    throw InsufficientData(path + ": " + std::to_string(d.n()) + " rows; at least " +
                           std::to_string(kMinObservations) +
                           " are needed for the index fit and smoothing");
  }
  return d;
}

void write_dataset_csv(std::ostream& out, const Dataset& data)
{
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  for (Eigen::Index k = 0; k < data.p(); ++k) {
    out << "x" << k + 1 << ",";
  }
  out << "y\n";
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    for (Eigen::Index k = 0; k < data.p(); ++k) {
      out << data.x(i, k) << ",";
    }
    out << data.y(i) << "\n";
  }
  out.precision(old_precision);
}

} // namespace sicheck
