#pragma once

#include <span>
#include <vector>

namespace docest {

double expit(double x);
double logit(double p);

// Standard normal CDF and its logarithm. log_norm_cdf stays finite down to
// arguments around -1e9 (asymptotic expansion below x = -37, where erfc
// underflows).
double norm_cdf(double x);
double log_norm_cdf(double x);

double lbeta(double a, double b);

// Regularized incomplete beta I_x(a, b) by Lentz continued fraction.
double betainc(double a, double b, double x);

double digamma(double x);
double trigamma(double x);

double mean(std::span<const double> v);
double variance(std::span<const double> v);  // population form, divisor n

// Quantile of a sorted sample with linear interpolation (R type 7).
double quantile_sorted(std::span<const double> sorted, double q);

}  // namespace docest
