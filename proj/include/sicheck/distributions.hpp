#pragma once

namespace sicheck {

//! Standard normal distribution function.
double normal_cdf(double x);

//! Upper tail 1 - normal_cdf(x), accurate for large x.
double normal_sf(double x);

//! Standard normal quantile for p in (0, 1).
double normal_quantile(double p);

//! Chi-square distribution function with `df` degrees of freedom.
double chi2_cdf(double x, double df);

//! Chi-square upper tail probability.
double chi2_sf(double x, double df);

//! Chi-square quantile for p in (0, 1).
double chi2_quantile(double p, double df);

} // namespace sicheck
