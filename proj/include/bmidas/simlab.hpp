#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "bmidas/design.hpp"
#include "bmidas/forecast.hpp"
#include "bmidas/gibbs.hpp"
#include "bmidas/inference.hpp"
#include "bmidas/rng.hpp"

namespace bmidas {

enum class WeightScheme { fast_decay, slow_decay, near_flat };

// Normalized exponential-Almon lag weights w_c proportional to
// exp(a1 c + a2 c^2), c = 0..C-1, summing to one. The presets reproduce
// the three qualitative shapes used in the experiments: fast decay
// (near zero after four lags), slow decay, and near-flat.
Eigen::VectorXd weight_scheme(WeightScheme kind, int C);

// Mixed-frequency DGP: high-frequency AR(1) predictors with Toeplitz
// cross-correlated innovations feed a distributed-lag regression whose
// noise variance is set from the realized signal variance.
struct DgpConfig {
  int K = 30;
  int m = 3;
  int C = 24;
  int T = 200;        // in-sample periods
  int extra_rows = 1; // held-out periods appended after T
  WeightScheme scheme = WeightScheme::fast_decay;
  double rho = 0.9;
  double mu = 0.1;
  double sigma_eps = 0.50;  // innovation cross-correlation base
  Eigen::VectorXd beta_true; // empty -> default sparse vector
  double alpha = 0.5;
  double noise_to_signal = 0.20;
  std::uint64_t seed = 0;

  // Variant used by the numerical illustration: i.i.d. standard normal
  // regressors and a fixed error standard deviation.
  bool x_iid_normal = false;
  std::optional<double> fixed_sigma;

  void validate() const;
  Eigen::VectorXd resolved_beta() const;
};

// Default sparse slope vector (0, 0.3, 0.5, 0, 0.3, 0.5, 0, 0, 0.8, 0, ...)
// padded with zeros to length K.
Eigen::VectorXd default_beta_true(int K);

struct SimulatedDataset {
  MixedFreqPanel panel;  // T + extra_rows periods, h = 0
  Eigen::VectorXd beta_true;
  double sigma_used = 0.0;
  Eigen::VectorXd weights_used;
};

SimulatedDataset generate_dataset(const DgpConfig& cfg, RngHandle& rng);

// Fit/selection/forecast settings for one Monte Carlo cell.
struct McSettings {
  Model model = Model::agl_ss;
  Grouping grouping = Grouping::by_predictor;
  int p = 3;
  int r = 2;
  Hyperparams hp;
  SaConfig sa;
  Schedule schedule{20000, 10000, 10};
  double ci_level = 0.95;
  int R = 50;
  int workers = 1;
};

struct McResult {
  MetricsReport metrics;
  ForecastScores scores;
  Eigen::VectorXd selection_rate;  // per predictor
  double avg_sigma = 0.0;
  int failures = 0;
  // Per-replication detail (successful replications only; order preserved).
  std::vector<std::vector<int>> selections;
  std::vector<double> forecast_points;
  std::vector<double> forecast_realized;
};

// Runs R replications: generate, fit, select, forecast the held-out
// period, score. Replication i uses rng stream i under cfg.seed, so a
// longer run reproduces a shorter one's replications exactly. Failed
// replications are counted, not fatal.
McResult run_monte_carlo(const DgpConfig& cfg, const McSettings& settings);

}  // namespace bmidas
