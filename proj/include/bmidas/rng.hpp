#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace bmidas {

// Random-number handle for one chain or one Monte Carlo replication.
//
// A handle is identified by (seed, stream): the same pair always yields a
// bit-identical draw sequence, and distinct streams under the same seed are
// independent for practical purposes (the engine is seeded by mixing both
// words through splitmix64). A handle must not be shared across threads;
// give each chain/replication its own.
//
// All distribution samplers are implemented here rather than delegated to
// std::<random> distributions, whose draw paths differ across standard
// library implementations:
//   - gamma:            Marsaglia-Tsang squeeze, with the power boost for
//                       shape < 1 (shapes (g_j+1)/2 can be as low as 1)
//   - inverse Gaussian: Michael-Schucany-Haas transform
//   - beta:             ratio of two gammas
//   - normal:           Marsaglia polar method
class RngHandle {
 public:
  explicit RngHandle(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  // Uniform on the open interval (0, 1).
  double uniform();
  // Standard normal.
  double normal();

  // Gamma(shape, rate), density  x^{shape-1} e^{-rate x} rate^shape / Gamma(shape).
  double gamma(double shape, double rate);
  // Inverse gamma: 1/X with X ~ Gamma(shape, rate); mean rate/(shape-1) for shape > 1.
  double inv_gamma(double shape, double rate);
  // Inverse Gaussian with E[X] = mean and Var[X] = mean^3 / shape.
  double inv_gaussian(double mean, double shape);
  // Beta(a, b) on (0, 1).
  double beta(double a, double b);

  // mean + chol_lower * z with z a standard normal vector.
  Eigen::VectorXd mvn(const Eigen::VectorXd& mean, const Eigen::MatrixXd& chol_lower);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

}  // namespace bmidas
