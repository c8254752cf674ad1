#include "sicheck/distributions.hpp"

#include "sicheck/errors.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

#include <cmath>
#include <string>

namespace sicheck {

namespace {

void check_probability(double p, const char* what)
{
  if (!(p > 0.0 && p < 1.0)) {
    throw InvalidArgument(std::string(what) + ": probability must lie in (0, 1)");
  }
}

boost::math::chi_squared chi2(double df)
{
  if (!(df > 0.0) || !std::isfinite(df)) {
    throw InvalidArgument("chi-square: degrees of freedom must be positive");
  }
  return boost::math::chi_squared(df);
}

} // namespace

double normal_cdf(double x)
{
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double normal_sf(double x)
{
  return 0.5 * std::erfc(x / std::sqrt(2.0));
}

double normal_quantile(double p)
{
  check_probability(p, "normal_quantile");
  return boost::math::quantile(boost::math::normal(), p);
}

double chi2_cdf(double x, double df)
{
  const auto dist = chi2(df);
  if (x <= 0.0) {
    return 0.0;
  }
  if (std::isinf(x)) {
    return 1.0;
  }
  return boost::math::cdf(dist, x);
}

double chi2_sf(double x, double df)
{
  const auto dist = chi2(df);
  if (x <= 0.0) {
    return 1.0;
  }
  if (std::isinf(x)) {
    return 0.0;
  }
  return boost::math::cdf(boost::math::complement(dist, x));
}

double chi2_quantile(double p, double df)
{
  check_probability(p, "chi2_quantile");
  return boost::math::quantile(chi2(df), p);
}

} // namespace sicheck
