#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "bmidas/design.hpp"
#include "bmidas/rng.hpp"
#include "bmidas/sa_tuner.hpp"

namespace bmidas {

enum class Model { agl, agl_ss };

enum class TuningMode { full_bayes, stochastic_approximation };

// Prior constants. Defaults: vague Inv-Gamma for sigma^2 with a1 > 1 as
// the theory requires; the Beta prior for pi0 uses c = kappa_bar G^v with
// kappa_bar = v = 1 + 1/G and d = 1, recomputed from the group count at
// fit time unless overridden.
struct Hyperparams {
  double a1 = 2.0;
  double b1 = 1.0;
  double a2 = 1.0;   // Gamma prior for lambda_j^2, full-Bayes tuning only
  double b2 = 0.1;
  std::optional<double> c;  // Beta(c, d) prior for pi0; default from G
  double d = 1.0;
  TuningMode tuning = TuningMode::stochastic_approximation;
  // Holds pi0 fixed (no Beta update). With the value 0 the spike branch is
  // disabled entirely and the SS sweep consumes the same random-number
  // stream as the plain AGL sweep.
  std::optional<double> fixed_pi0;

  static double default_c(int n_groups);
  double resolved_c(int n_groups) const;
  void validate() const;
};

struct Schedule {
  long iterations = 0;  // S
  long burn_in = 0;
  long thin = 1;

  long n_draws() const { return (iterations - burn_in) / thin; }
  void validate() const;
};

// One Gibbs iterate.
struct ChainState {
  Eigen::VectorXd theta;    // g_tilde, grouped
  Eigen::VectorXd theta_u;  // unpenalized block
  Eigen::VectorXd tau2;     // G
  double sigma2 = 1.0;
  Eigen::VectorXd lambda2;  // squared group penalties
  double pi0 = 0.5;
  std::vector<std::uint8_t> gamma;  // SS inclusion, gamma_j = 1 iff theta_j != 0
  SaState sa;
};

// Thinned post-burn-in states plus everything needed to interpret them
// out of context: grouping, frozen standardization statistics, and the
// restart bookkeeping of the stochastic approximation.
struct PosteriorDraws {
  Model model = Model::agl;
  Eigen::MatrixXd theta;    // n x g_tilde
  Eigen::MatrixXd theta_u;  // n x n_unpenalized
  Eigen::MatrixXd tau2;     // n x G
  Eigen::VectorXd sigma2;   // n
  Eigen::MatrixXd lambda2;  // n x G
  Eigen::VectorXd pi0;      // n (SS only)
  Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic> gamma;  // n x G (SS only)

  std::vector<GroupRange> groups;
  Eigen::VectorXd col_means, col_sds;
  Eigen::VectorXd unpen_means, unpen_sds;
  double y_mean = 0.0;
  int n_predictors = 0;

  long sa_restarts = 0;
  // Full-length omega trajectory (iterations x G), recorded on request.
  Eigen::MatrixXd omega_path;

  long n_draws() const { return theta.rows(); }
};

// Block Gibbs sampler for the adaptive group lasso regression, with or
// without the spike-and-slab point mass. Construction precomputes the
// per-group Gram blocks; sweep() advances a state by one full update
// cycle (theta blocks in index order, unpenalized block, tau^2, sigma^2,
// penalties, pi0).
class GibbsSampler {
 public:
  GibbsSampler(const DesignMatrix& design, Model model, Hyperparams hp,
               SaConfig sa_cfg = {});

  ChainState initial_state() const;

  // One sweep. Throws NumericalError on a failed factorization or
  // non-finite state.
  void sweep(ChainState& state, RngHandle& rng) const;

  // Runs the full schedule from the standard initial state.
  PosteriorDraws run(const Schedule& schedule, RngHandle& rng,
                     bool record_omega_path = false) const;

  const DesignMatrix& design() const { return design_; }
  Model model() const { return model_; }
  const Hyperparams& hyperparams() const { return hp_; }
  double beta_prior_c() const { return c_; }

 private:
  void update_theta_group_agl(int j, ChainState& state, Eigen::VectorXd& resid,
                              RngHandle& rng) const;
  void update_theta_group_ss(int j, ChainState& state, Eigen::VectorXd& resid,
                             RngHandle& rng) const;
  void update_unpenalized(ChainState& state, Eigen::VectorXd& resid,
                          RngHandle& rng) const;
  void update_tau2(ChainState& state, RngHandle& rng) const;
  void update_sigma2(ChainState& state, const Eigen::VectorXd& resid,
                     RngHandle& rng) const;
  void update_penalties(ChainState& state, RngHandle& rng) const;
  void redraw_from_priors(ChainState& state, RngHandle& rng) const;

  const DesignMatrix design_;
  Model model_;
  Hyperparams hp_;
  SaConfig sa_cfg_;
  double c_;  // resolved Beta prior shape
  std::vector<Eigen::MatrixXd> gram_;  // Z_j' Z_j per group
  Eigen::MatrixXd gram_u_;             // Zu' Zu
};

}  // namespace bmidas
