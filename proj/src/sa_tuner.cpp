#include "bmidas/sa_tuner.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bmidas/errors.hpp"

namespace bmidas {

SaState make_sa_state(int n_groups, const SaConfig& cfg) {
  if (!(cfg.q > 0.5 && cfg.q < 1.0)) {
    throw ConfigError("sa: step exponent q must lie in (0.5, 1)");
  }
  if (!(cfg.c_bound > 0.0)) {
    throw ConfigError("sa: c_bound must be positive");
  }
  SaState sa;
  sa.omega = Eigen::VectorXd::Constant(n_groups, cfg.omega_init);
  return sa;
}

double sa_step_size(long s, double q) { return 1.0 / std::pow(static_cast<double>(s), q); }

double sa_increment_bound(long s, const SaConfig& cfg) {
  if (s <= 0) return std::numeric_limits<double>::infinity();
  return cfg.e_bar +
         (1.0 - cfg.e_bar) * (1.0 - std::pow(static_cast<double>(s), -cfg.alpha_e));
}

double sa_lower_bound(long kappa, const SaConfig& cfg) {
  return std::max(-static_cast<double>(kappa) - 1.0, -cfg.c_bound);
}

double sa_upper_bound(long kappa) { return static_cast<double>(kappa) + 1.0; }

bool sa_update(SaState& sa, const Eigen::VectorXd& tau2_new,
               const std::vector<int>& group_sizes, const SaConfig& cfg,
               RngHandle& rng) {
  const int G = static_cast<int>(sa.omega.size());
  if (tau2_new.size() != G || static_cast<int>(group_sizes.size()) != G) {
    throw ConfigError("sa_update: size mismatch");
  }

  const double a = sa_step_size(sa.step + 1, cfg.q);
  const double e = sa_increment_bound(sa.step, cfg);
  const double lo = sa_lower_bound(sa.kappa, cfg);
  const double hi = sa_upper_bound(sa.kappa);

  Eigen::VectorXd cand(G);
  bool ok = true;
  for (int j = 0; j < G; ++j) {
    const double h = (group_sizes[j] + 1) - std::exp(2.0 * sa.omega[j]) * tau2_new[j];
    cand[j] = sa.omega[j] + a * h;
    if (!(cand[j] >= lo && cand[j] <= hi) || !(std::abs(cand[j] - sa.omega[j]) <= e)) {
      ok = false;
    }
  }

  if (ok) {
    sa.omega = cand;
    sa.nu += 1;
    sa.step += 1;
    return false;
  }

  // Restart: re-project each violating component between its previous value
  // and the boundary it crossed. The effective admissible interval for a
  // move is [max(lo, omega_j - e), min(hi, omega_j + e)].
  for (int j = 0; j < G; ++j) {
    const double up = std::isfinite(e) ? std::min(hi, sa.omega[j] + e) : hi;
    const double dn = std::isfinite(e) ? std::max(lo, sa.omega[j] - e) : lo;
    if (cand[j] > up) {
      sa.omega[j] = sa.omega[j] + (up - sa.omega[j]) * rng.uniform();
    } else if (cand[j] < dn) {
      sa.omega[j] = sa.omega[j] + (dn - sa.omega[j]) * rng.uniform();
    } else {
      sa.omega[j] = cand[j];
    }
  }
  sa.kappa += 1;
  sa.nu = 0;
  sa.step += 1;

  const double lo2 = sa_lower_bound(sa.kappa, cfg);
  const double hi2 = sa_upper_bound(sa.kappa);
  for (int j = 0; j < G; ++j) {
    assert(sa.omega[j] >= lo2 && sa.omega[j] <= hi2);
    (void)lo2;
    (void)hi2;
  }
  return true;
}

Eigen::VectorXd lambda_sq_of_omega(const Eigen::VectorXd& omega) {
  return (2.0 * omega.array()).exp();
}

}  // namespace bmidas
