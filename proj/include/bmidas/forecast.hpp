#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bmidas/gibbs.hpp"

namespace bmidas {

// Predictive draws for one target date, on the original response scale.
struct ForecastRecord {
  long target_index = 0;
  double horizon = 0.0;  // low-frequency units
  Eigen::VectorXd draws;
  double point = 0.0;  // arithmetic mean of draws
  std::optional<double> realized;
};

// One posterior predictive draw per retained Gibbs draw:
//   y^(s) = z' theta^(s) + zu' theta_u^(s) + sigma^(s) eps + y_mean.
// z_new / zu_new must already be standardized with the fit-time statistics
// (see standardize_row). Sampling across all retained draws marginalizes
// over the penalty trajectory rather than conditioning on a point estimate.
Eigen::VectorXd predictive_draws(const PosteriorDraws& draws,
                                 const Eigen::VectorXd& z_new,
                                 const Eigen::VectorXd& zu_new,
                                 RngHandle& rng);

ForecastRecord make_forecast_record(const PosteriorDraws& draws,
                                    const Eigen::VectorXd& z_new,
                                    const Eigen::VectorXd& zu_new,
                                    long target_index, double horizon,
                                    std::optional<double> realized,
                                    RngHandle& rng);

// Sample CRPS estimator
//   (1/S) sum_s |x_s - y| - (1/(2 S^2)) sum_s sum_t |x_s - x_t|,
// with the pairwise term computed from the sorted sample in O(S log S).
double crps(Eigen::VectorXd draws, double realized);

// Log predictive score: log of a Gaussian kernel density estimate at the
// realized value, Silverman bandwidth 1.06 sd S^{-1/5}. Constant draws
// (zero bandwidth) yield +/-infinity sentinels.
double log_score(const Eigen::VectorXd& draws, double realized);

// One-sided p-value of the Diebold-Mariano-West test on the loss
// differential d_t = loss_a_t - loss_b_t: Newey-West long-run variance
// with horizon_steps - 1 lags when horizon_steps > 1, the
// Harvey-Leybourne-Newbold small-sample correction, and Student-t
// critical values with n - 1 degrees of freedom. Small values indicate
// that b predicts better than a. A constant nonzero differential is
// degenerate and returns 1.
double dmw_pvalue(const Eigen::VectorXd& loss_a, const Eigen::VectorXd& loss_b,
                  int horizon_steps);

double student_t_cdf(double x, double dof);

struct ForecastScores {
  double rmsfe = 0.0;
  double avg_log_score = 0.0;
  double avg_crps = 0.0;
  int n = 0;
};

// Scores the records that carry a realized value.
ForecastScores score_forecasts(const std::vector<ForecastRecord>& records);

// RMSFE and CRPS as ratios to a benchmark, log score as a differential.
struct RelativeScores {
  double rmsfe_ratio = 0.0;
  double crps_ratio = 0.0;
  double ls_differential = 0.0;
};
RelativeScores relative_scores(const ForecastScores& model,
                               const ForecastScores& benchmark);

enum class DmwLoss { squared_error, crps, neg_log_score };

// Per-date loss series for the DMW test.
Eigen::VectorXd loss_series(const std::vector<ForecastRecord>& records, DmwLoss loss);

}  // namespace bmidas
