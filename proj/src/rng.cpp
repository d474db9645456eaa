#include "bmidas/rng.hpp"

#include <cmath>
#include <stdexcept>

#include "bmidas/errors.hpp"

namespace bmidas {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
  // Spread (seed, stream) over the full engine state so that nearby
  // streams do not produce correlated sequences.
  std::uint64_t s = seed ^ (0xda3e39cb94b95bdbULL * (stream + 1));
  std::seed_seq seq{static_cast<unsigned>(splitmix64(s)),
                    static_cast<unsigned>(splitmix64(s) >> 32),
                    static_cast<unsigned>(splitmix64(s)),
                    static_cast<unsigned>(splitmix64(s) >> 32),
                    static_cast<unsigned>(splitmix64(s)),
                    static_cast<unsigned>(splitmix64(s) >> 32),
                    static_cast<unsigned>(splitmix64(s)),
                    static_cast<unsigned>(splitmix64(s) >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

RngHandle::RngHandle(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(make_engine(seed, stream)) {}

double RngHandle::uniform() {
  // 53-bit mantissa; reject 0 so that log(u) is always finite.
  for (;;) {
    double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    if (u > 0.0) return u;
  }
}

double RngHandle::normal() {
  // Marsaglia polar method; the spare deviate is discarded to keep the
  // handle stateless between calls.
  for (;;) {
    double u = 2.0 * uniform() - 1.0;
    double v = 2.0 * uniform() - 1.0;
    double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) {
      return u * std::sqrt(-2.0 * std::log(s) / s);
    }
  }
}

double RngHandle::gamma(double shape, double rate) {
  if (!(shape > 0.0) || !(rate > 0.0)) {
    throw std::domain_error("gamma: shape and rate must be positive");
  }
  // Marsaglia-Tsang (2000). Shapes below one are boosted to shape+1 and
  // corrected by u^{1/shape}.
  double boost = 1.0;
  double a = shape;
  if (a < 1.0) {
    boost = std::pow(uniform(), 1.0 / a);
    a += 1.0;
  }
  const double d = a - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) {
      return boost * d * v / rate;
    }
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
      return boost * d * v / rate;
    }
  }
}

double RngHandle::inv_gamma(double shape, double rate) {
  return 1.0 / gamma(shape, rate);
}

double RngHandle::inv_gaussian(double mean, double shape) {
  if (!(mean > 0.0) || !(shape > 0.0)) {
    throw std::domain_error("inv_gaussian: mean and shape must be positive");
  }
  // Michael, Schucany & Haas (1976).
  const double nu = normal();
  const double y = nu * nu;
  const double x = mean + mean * mean * y / (2.0 * shape) -
                   mean / (2.0 * shape) *
                       std::sqrt(4.0 * mean * shape * y + mean * mean * y * y);
  const double u = uniform();
  if (u <= mean / (mean + x)) return x;
  return mean * mean / x;
}

double RngHandle::beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::domain_error("beta: parameters must be positive");
  }
  const double x = gamma(a, 1.0);
  const double y = gamma(b, 1.0);
  return x / (x + y);
}

Eigen::VectorXd RngHandle::mvn(const Eigen::VectorXd& mean,
                               const Eigen::MatrixXd& chol_lower) {
  if (!chol_lower.allFinite()) {
    throw NumericalError("mvn: non-finite covariance factor");
  }
  Eigen::VectorXd z(mean.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = normal();
  return mean + chol_lower * z;
}

}  // namespace bmidas
