#include "sicheck/weights.hpp"

#include "sicheck/errors.hpp"

#include <cmath>
#include <sstream>

namespace sicheck {

WeightSpec WeightSpec::sum_abs()
{
  return WeightSpec{};
}

WeightSpec WeightSpec::sum_squares()
{
  WeightSpec w;
  w.kind = Kind::SumSquares;
  return w;
}

WeightSpec WeightSpec::abs_product(Eigen::Index a, Eigen::Index b)
{
  WeightSpec w;
  w.kind = Kind::AbsProduct;
  w.a = a;
  w.b = b;
  return w;
}

WeightSpec WeightSpec::char_fn(Eigen::VectorXd gamma)
{
  WeightSpec w;
  w.kind = Kind::CharFn;
  w.gamma = std::move(gamma);
  return w;
}

WeightSpec WeightSpec::pointwise(Eigen::VectorXd values)
{
  WeightSpec w;
  w.kind = Kind::Pointwise;
  w.values = std::move(values);
  return w;
}

WeightSpec WeightSpec::linear_combo(std::vector<WeightTerm> terms)
{
  WeightSpec w;
  w.kind = Kind::LinearCombo;
  w.terms = std::move(terms);
  return w;
}

WeightSpec WeightSpec::interaction(Eigen::Index p)
{
  std::vector<WeightTerm> terms;
  for (Eigen::Index a = 0; a < p; ++a) {
    for (Eigen::Index b = a + 1; b < p; ++b) {
      terms.push_back({1.0, abs_product(a, b)});
    }
  }
  WeightSpec w = linear_combo(std::move(terms));
  return w;
}

std::string WeightSpec::label() const
{
  std::ostringstream os;
  switch (kind) {
    case Kind::SumAbs:
      return "sumabs";
    case Kind::SumSquares:
      return "sumsq";
    case Kind::AbsProduct:
      os << "absprod:" << a + 1 << ":" << b + 1;
      return os.str();
    case Kind::CharFn:
      os << "cf:";
      for (Eigen::Index k = 0; k < gamma.size(); ++k) {
        os << (k ? "," : "") << gamma(k);
      }
      return os.str();
    case Kind::Pointwise:
      return "pointwise";
    case Kind::LinearCombo:
      os << "combo(";
      for (std::size_t k = 0; k < terms.size(); ++k) {
        os << (k ? "+" : "") << terms[k].coeff << "*" << terms[k].spec.label();
      }
      os << ")";
      return os.str();
  }
  return "unknown";
}

Eigen::VectorXd evaluate_weight(const WeightSpec& spec, const Eigen::MatrixXd& x)
{
  using Kind = WeightSpec::Kind;
  const Eigen::Index n = x.rows();
  Eigen::VectorXd out;
  switch (spec.kind) {
    case Kind::SumAbs:
      out = x.cwiseAbs().rowwise().sum();
      break;
    case Kind::SumSquares:
      out = x.cwiseAbs2().rowwise().sum();
      break;
    case Kind::AbsProduct:
      if (spec.a < 0 || spec.b < 0 || spec.a >= x.cols() || spec.b >= x.cols()) {
        throw DimensionMismatch("weight absprod: column index out of range for p = " +
                                std::to_string(x.cols()));
      }
      out = x.col(spec.a).cwiseProduct(x.col(spec.b)).cwiseAbs();
      break;
    case Kind::CharFn:
      throw InvalidArgument("weight " + spec.label() +
                            " is complex valued; use real_components or evaluate_char_fn");
    case Kind::Pointwise:
      if (spec.values.size() != n) {
        throw DimensionMismatch("pointwise weight has " + std::to_string(spec.values.size()) +
                                " values for " + std::to_string(n) + " observations");
      }
      out = spec.values;
      break;
    case Kind::LinearCombo:
      if (spec.terms.empty()) {
        throw InvalidArgument("linear combination weight has no terms");
      }
      out = Eigen::VectorXd::Zero(n);
      for (const auto& term : spec.terms) {
        out += term.coeff * evaluate_weight(term.spec, x);
      }
      break;
  }
  if (!out.allFinite()) {
    throw InvalidArgument("weight " + spec.label() + " produced non-finite values");
  }
  return out;
}

Eigen::VectorXcd evaluate_char_fn(const Eigen::VectorXd& gamma, const Eigen::MatrixXd& x)
{
  if (gamma.size() != x.cols()) {
    throw DimensionMismatch("characteristic-function weight: gamma has dimension " +
                            std::to_string(gamma.size()) + ", covariates have " +
                            std::to_string(x.cols()));
  }
  const Eigen::VectorXd phase = x * gamma;
  Eigen::VectorXcd out(phase.size());
  for (Eigen::Index j = 0; j < phase.size(); ++j) {
    out(j) = {std::cos(phase(j)), std::sin(phase(j))};
  }
  return out;
}

std::vector<Eigen::VectorXd> real_components(const WeightSpec& spec, const Eigen::MatrixXd& x)
{
  if (spec.kind == WeightSpec::Kind::CharFn) {
    const Eigen::VectorXcd w = evaluate_char_fn(spec.gamma, x);
    return {w.real(), w.imag()};
  }
  return {evaluate_weight(spec, x)};
}

WeightSpec parse_weight(const std::string& text, Eigen::Index p)
{
  if (text == "sumabs") {
    return WeightSpec::sum_abs();
  }
  if (text == "sumsq") {
    return WeightSpec::sum_squares();
  }
  if (text == "interaction") {
    if (p < 2) {
      throw ConfigError("weight 'interaction' needs p >= 2");
    }
    return WeightSpec::interaction(p);
  }
  if (text.rfind("absprod:", 0) == 0) {
    int a = 0;
    int b = 0;
    char sep = 0;
    std::istringstream is(text.substr(8));
    if (!(is >> a >> sep >> b) || sep != ':' || !is.eof() || a < 1 || b < 1 || a > p || b > p) {
      throw ConfigError("bad weight '" + text + "': expected absprod:A:B with 1 <= A, B <= " +
                        std::to_string(p));
    }
    return WeightSpec::abs_product(a - 1, b - 1);
  }
  if (text.rfind("cf:", 0) == 0) {
    std::vector<double> coords;
    std::istringstream is(text.substr(3));
    std::string item;
    while (std::getline(is, item, ',')) {
      try {
        std::size_t used = 0;
        coords.push_back(std::stod(item, &used));
        if (used != item.size()) {
          throw std::invalid_argument(item);
        }
      } catch (const std::exception&) {
        throw ConfigError("bad weight '" + text + "': '" + item + "' is not a number");
      }
    }
    if (static_cast<Eigen::Index>(coords.size()) != p) {
      throw ConfigError("bad weight '" + text + "': gamma needs " + std::to_string(p) +
                        " coordinates");
    }
    return WeightSpec::char_fn(Eigen::Map<Eigen::VectorXd>(coords.data(), p));
  }
  throw ConfigError("unknown weight '" + text +
                    "' (expected sumabs, sumsq, interaction, absprod:A:B or cf:g1,...)");
}

} // namespace sicheck
