#include "docest/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "docest/errors.hpp"

namespace docest {

double expit(double x) {
  if (x >= 0.0) {
    const double e = std::exp(-x);
    return 1.0 / (1.0 + e);
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double logit(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("logit: argument must lie in (0, 1)");
  return std::log(p / (1.0 - p));
}

double norm_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

double log_norm_cdf(double x) {
  if (x > 8.0) {
    // 1 - Phi(x) is tiny; log(1 - q) ~ -q keeps full relative accuracy.
    return -std::exp(log_norm_cdf(-x));
  }
  if (x >= -37.0) {
    return std::log(0.5 * std::erfc(-x * M_SQRT1_2));
  }
  // Asymptotic expansion of Mills' ratio, relative error < 1e-12 for z > 37.
  const double z = -x;
  const double z2 = z * z;
  const double t =
      (((105.0 / z2 - 15.0) / z2 + 3.0) / z2 - 1.0) / z2;
  return -0.5 * z2 - 0.5 * std::log(2.0 * M_PI) - std::log(z) + std::log1p(t);
}

double lbeta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

namespace {

// Continued fraction for the incomplete beta (Lentz's algorithm).
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw NumericalError("betainc: continued fraction did not converge");
}

}  // namespace

double betainc(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::invalid_argument("betainc: a and b must be positive");
  if (!(x >= 0.0 && x <= 1.0))
    throw std::invalid_argument("betainc: x must lie in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double lnfront =
      a * std::log(x) + b * std::log1p(-x) - lbeta(a, b);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return std::exp(lnfront) * betacf(a, b, x) / a;
  }
  return 1.0 - std::exp(b * std::log1p(-x) + a * std::log(x) - lbeta(a, b)) *
                   betacf(b, a, 1.0 - x) / b;
}

double digamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("digamma: x must be > 0");
  double result = 0.0;
  while (x < 10.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // ln x - 1/(2x) - sum B_2n / (2n x^(2n))
  double series = inv2 * (1.0 / 12.0 -
                  inv2 * (1.0 / 120.0 -
                  inv2 * (1.0 / 252.0 -
                  inv2 * (1.0 / 240.0 -
                  inv2 * (1.0 / 132.0 -
                  inv2 * (691.0 / 32760.0))))));
  return result + std::log(x) - 0.5 * inv - series;
}

double trigamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("trigamma: x must be > 0");
  double result = 0.0;
  while (x < 10.0) {
    result += 1.0 / (x * x);
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double series = 1.0 +
                  inv * (0.5 +
                  inv * (1.0 / 6.0 -
                  inv2 * (1.0 / 30.0 -
                  inv2 * (1.0 / 42.0 -
                  inv2 * (1.0 / 30.0 -
                  inv2 * (5.0 / 66.0))))));
  return result + inv * series;
}

double mean(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("mean: empty sample");
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double variance(std::span<const double> v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size());
}

double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw std::invalid_argument("quantile: empty sample");
  if (!(q >= 0.0 && q <= 1.0))
    throw std::invalid_argument("quantile: q must lie in [0, 1]");
  const size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double h = q * static_cast<double>(n - 1);
  const size_t lo = static_cast<size_t>(std::floor(h));
  if (lo + 1 >= n) return sorted[n - 1];
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace docest
