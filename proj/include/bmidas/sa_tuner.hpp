#pragma once

#include <vector>

#include <Eigen/Dense>

#include "bmidas/rng.hpp"

namespace bmidas {

// Constants of the truncation-on-random-boundaries stabilization.
struct SaConfig {
  double q = 0.8;        // step size 1/s^q, q in (0.5, 1)
  double e_bar = 3.0;    // increment bound start value
  double alpha_e = 0.1;  // increment bound decay exponent
  double c_bound = 5.0;  // hard lower wall for omega
  double omega_init = 0.0;
};

// State of the stochastic-approximation recursion over omega = log(lambda_j)
// per group, with the squared penalties lambda_j^2 = exp(2 omega_j).
struct SaState {
  Eigen::VectorXd omega;
  long kappa = 0;  // index of the active truncation set == restarts so far
  long nu = 0;     // iterations since the last restart
  long step = 0;   // index into the step-size sequence
};

SaState make_sa_state(int n_groups, const SaConfig& cfg);

// Step size a^(s) = 1/s^q for s >= 1.
double sa_step_size(long s, double q);

// Increment bound e^(s) = e_bar + (1 - e_bar)(1 - s^{-alpha_e}); decreases
// from e_bar toward 1. Unbounded at s = 0 (no constraint on the first step).
double sa_increment_bound(long s, const SaConfig& cfg);

// Active compact set [K_l, K_u] for truncation index kappa.
double sa_lower_bound(long kappa, const SaConfig& cfg);
double sa_upper_bound(long kappa);

// One update of omega from the current sweep's tau^2 draw:
//   candidate_j = omega_j + a^(step+1) [ (g_j + 1) - exp(2 omega_j) tau2_j ].
// ACCEPT when every component stays in the active compact set and the
// largest move is within the increment bound; then kappa is unchanged and
// nu, step advance. Otherwise RESTART: each violating component is re-drawn
// uniformly between its previous value and the boundary it crossed,
// well-behaved components keep their candidate, kappa counts the rejection,
// nu resets, and the return value tells the chain to re-draw its parameters
// from their priors.
//
// Returns true when a restart occurred.
bool sa_update(SaState& sa, const Eigen::VectorXd& tau2_new,
               const std::vector<int>& group_sizes, const SaConfig& cfg,
               RngHandle& rng);

// Squared group penalties lambda_j^2 = exp(2 omega_j).
Eigen::VectorXd lambda_sq_of_omega(const Eigen::VectorXd& omega);

}  // namespace bmidas
