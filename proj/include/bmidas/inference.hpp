#pragma once

#include <vector>

#include <Eigen/Dense>

#include "bmidas/design.hpp"

namespace bmidas {

enum class SelectionCriterion { credible_interval, posterior_median };

struct SelectionReport {
  std::vector<int> included;  // 0/1 per predictor
  SelectionCriterion criterion = SelectionCriterion::credible_interval;
  double level = 0.0;             // credible-interval criterion only
  Eigen::VectorXd inclusion_prob;  // posterior-median criterion only, mean of gamma
};

// Equal-tailed credible-interval rule: predictor k stays in the active set
// iff the (level) interval of its slope posterior excludes zero.
SelectionReport select_credible_interval(const Eigen::MatrixXd& beta_draws, double level);

// Posterior-median rule for spike-and-slab draws: a group is inactive when
// more than half of its draws are exactly zero.
SelectionReport select_posterior_median(const Eigen::MatrixXd& theta_draws,
                                        const std::vector<GroupRange>& groups);

// Interpolated equal-tailed sample quantile (R type 7).
double sample_quantile(Eigen::VectorXd values, double prob);

Eigen::VectorXd coordinatewise_median(const Eigen::MatrixXd& draws);

struct MetricsReport {
  double mse = 0.0, var = 0.0, bias2 = 0.0;
  double mse_active = 0.0, mse_inactive = 0.0;
  double tpr = 0.0, fpr = 0.0, mcc = 0.0;
};

// Monte Carlo estimation and selection quality over R replications:
//   VAR   = (1/RKS) sum_i sum_k sum_s (beta_hat - mean_i,k)^2
//   BIAS2 = (1/RK)  sum_i sum_k (mean_i,k - beta_k)^2
//   MSE   = (1/RKS) sum_i sum_k sum_s (beta_hat - beta_k)^2 = VAR + BIAS2
// with the active/inactive split over the true support, and pooled
// TPR/FPR/MCC from the per-replication selections. MCC is 0 when any
// factor of its denominator vanishes.
MetricsReport compute_metrics(const std::vector<Eigen::MatrixXd>& beta_draws,
                              const Eigen::VectorXd& beta_true,
                              const std::vector<std::vector<int>>& selections);

}  // namespace bmidas
