#pragma once

// Test-only oracles, independent of the library implementation paths they
// check: closed-form CDFs/densities via Boost.Math, a Kolmogorov-Smirnov
// test, and fixed-order Gauss-Legendre quadrature.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/gamma.hpp>
#include <boost/math/distributions/inverse_gamma.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

namespace oracles {

inline double normal_cdf(double x) { return boost::math::cdf(boost::math::normal(), x); }
inline double normal_pdf(double x) { return boost::math::pdf(boost::math::normal(), x); }

inline double gamma_cdf(double x, double shape, double rate) {
  return boost::math::cdf(boost::math::gamma_distribution<>(shape, 1.0 / rate), x);
}

inline double inv_gamma_cdf(double x, double shape, double rate) {
  return boost::math::cdf(boost::math::inverse_gamma_distribution<>(shape, rate), x);
}

inline double beta_cdf(double x, double a, double b) {
  return boost::math::cdf(boost::math::beta_distribution<>(a, b), x);
}

inline double student_t_cdf(double x, double dof) {
  return boost::math::cdf(boost::math::students_t(dof), x);
}

// Inverse Gaussian CDF, mean mu and shape lambda.
inline double inv_gaussian_cdf(double x, double mu, double lambda) {
  if (x <= 0.0) return 0.0;
  const double a = std::sqrt(lambda / x);
  return normal_cdf(a * (x / mu - 1.0)) +
         std::exp(2.0 * lambda / mu) * normal_cdf(-a * (x / mu + 1.0));
}

inline double inv_gaussian_pdf(double x, double mu, double lambda) {
  return std::sqrt(lambda / (2.0 * M_PI * x * x * x)) *
         std::exp(-lambda * (x - mu) * (x - mu) / (2.0 * mu * mu * x));
}

// Closed-form CRPS of a N(mu, sigma^2) predictive density at y
// (Gneiting & Raftery 2007).
inline double normal_crps(double mu, double sigma, double y) {
  const double z = (y - mu) / sigma;
  return sigma * (z * (2.0 * normal_cdf(z) - 1.0) + 2.0 * normal_pdf(z) -
                  1.0 / std::sqrt(M_PI));
}

// Asymptotic Kolmogorov p-value for the statistic d at sample size n.
inline double ks_pvalue(double d, std::size_t n) {
  const double sn = std::sqrt(static_cast<double>(n));
  const double t = (sn + 0.12 + 0.11 / sn) * d;
  double p = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    p += sign * 2.0 * std::exp(-2.0 * k * k * t * t);
    sign = -sign;
  }
  return std::clamp(p, 0.0, 1.0);
}

// One-sample KS test of draws against cdf; returns the p-value.
inline double ks_test(std::vector<double> draws, const std::function<double(double)>& cdf) {
  std::sort(draws.begin(), draws.end());
  const std::size_t n = draws.size();
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = cdf(draws[i]);
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
  }
  return ks_pvalue(d, n);
}

// Composite Gauss-Legendre quadrature of f over [a, b] with `panels`
// subintervals of a 20-point rule each.
double integrate(const std::function<double(double)>& f, double a, double b,
                 int panels = 64);

}  // namespace oracles
