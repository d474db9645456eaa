#include "bmidas/gibbs.hpp"

#include <cmath>
#include <string>

#include "bmidas/errors.hpp"

namespace bmidas {

namespace {

double stable_sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

double Hyperparams::default_c(int n_groups) {
  // c = kappa_bar G^v, kappa_bar = v = 1 + 1/G, d = 1.
  const double G = static_cast<double>(n_groups);
  const double v = 1.0 + 1.0 / G;
  return v * std::pow(G, v);
}

double Hyperparams::resolved_c(int n_groups) const {
  return c ? *c : default_c(n_groups);
}

void Hyperparams::validate() const {
  if (!(a1 > 1.0)) throw ConfigError("hyperparams: a1 must be > 1");
  if (!(b1 > 0.0)) throw ConfigError("hyperparams: b1 must be > 0");
  if (tuning == TuningMode::full_bayes && (!(a2 > 0.0) || !(b2 > 0.0))) {
    throw ConfigError("hyperparams: a2, b2 must be > 0 in full-Bayes tuning");
  }
  if (c && !(*c > 0.0)) throw ConfigError("hyperparams: c must be > 0");
  if (!(d > 0.0)) throw ConfigError("hyperparams: d must be > 0");
  if (fixed_pi0 && !(*fixed_pi0 >= 0.0 && *fixed_pi0 <= 1.0)) {
    throw ConfigError("hyperparams: fixed pi0 must lie in [0, 1]");
  }
}

void Schedule::validate() const {
  if (iterations <= 0) throw ConfigError("schedule: iterations must be positive");
  if (burn_in < 0 || burn_in >= iterations) {
    throw ConfigError("schedule: burn-in must lie in [0, iterations)");
  }
  if (thin < 1) throw ConfigError("schedule: thin must be >= 1");
}

GibbsSampler::GibbsSampler(const DesignMatrix& design, Model model,
                           Hyperparams hp, SaConfig sa_cfg)
    : design_(design), model_(model), hp_(hp), sa_cfg_(sa_cfg),
      c_(hp.resolved_c(design.G())) {
  hp_.validate();
  gram_.reserve(design_.groups.size());
  for (const auto& grp : design_.groups) {
    const auto Zj = design_.Z.middleCols(grp.start, grp.size);
    gram_.push_back(Zj.transpose() * Zj);
  }
  if (design_.n_unpenalized() > 0) {
    gram_u_ = design_.Zu.transpose() * design_.Zu;
  }
}

ChainState GibbsSampler::initial_state() const {
  ChainState st;
  st.theta = Eigen::VectorXd::Zero(design_.g_tilde());
  st.theta_u = Eigen::VectorXd::Zero(design_.n_unpenalized());
  st.tau2 = Eigen::VectorXd::Ones(design_.G());
  st.sigma2 = std::max(design_.y.squaredNorm() / (design_.T() - 1), 1e-12);
  st.lambda2 = Eigen::VectorXd::Ones(design_.G());
  st.pi0 = hp_.fixed_pi0.value_or(0.5);
  st.gamma.assign(design_.G(), 0);
  st.sa = make_sa_state(design_.G(), sa_cfg_);
  return st;
}

void GibbsSampler::update_theta_group_agl(int j, ChainState& state,
                                          Eigen::VectorXd& resid,
                                          RngHandle& rng) const {
  const auto& grp = design_.groups[j];
  const auto Zj = design_.Z.middleCols(grp.start, grp.size);
  auto theta_j = state.theta.segment(grp.start, grp.size);

  if (!(state.tau2[j] > 0.0) || !std::isfinite(state.tau2[j])) {
    throw NumericalError("theta update: invalid tau2 in group " + std::to_string(j + 1));
  }
  Eigen::MatrixXd A = gram_[j];
  A.diagonal().array() += 1.0 / state.tau2[j];
  const Eigen::VectorXd c = Zj.transpose() * resid + gram_[j] * theta_j;

  Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() != Eigen::Success || llt.rcond() < 1e-14) {
    throw NumericalError("theta update: ill-conditioned system in group " +
                         std::to_string(j + 1));
  }
  const Eigen::VectorXd mean = llt.solve(c);
  Eigen::VectorXd z(grp.size);
  for (int i = 0; i < grp.size; ++i) z[i] = rng.normal();
  const Eigen::VectorXd draw =
      mean + std::sqrt(state.sigma2) * llt.matrixU().solve(z);
  if (!draw.allFinite()) {
    throw NumericalError("theta update: non-finite draw in group " + std::to_string(j + 1));
  }
  resid.noalias() += Zj * (theta_j - draw);
  theta_j = draw;
}

void GibbsSampler::update_theta_group_ss(int j, ChainState& state,
                                         Eigen::VectorXd& resid,
                                         RngHandle& rng) const {
  // Degenerate mixture weights short-circuit without consuming randomness;
  // with pi0 == 0 the sweep is stream-identical to the plain AGL sweep.
  if (state.pi0 <= 0.0) {
    update_theta_group_agl(j, state, resid, rng);
    state.gamma[j] = 1;
    return;
  }

  const auto& grp = design_.groups[j];
  const auto Zj = design_.Z.middleCols(grp.start, grp.size);
  auto theta_j = state.theta.segment(grp.start, grp.size);

  if (state.pi0 >= 1.0) {
    resid.noalias() += Zj * theta_j;
    theta_j.setZero();
    state.gamma[j] = 0;
    return;
  }

  if (!(state.tau2[j] > 0.0) || !std::isfinite(state.tau2[j])) {
    throw NumericalError("theta update: invalid tau2 in group " + std::to_string(j + 1));
  }
  Eigen::MatrixXd A = gram_[j];
  A.diagonal().array() += 1.0 / state.tau2[j];
  const Eigen::VectorXd c = Zj.transpose() * resid + gram_[j] * theta_j;

  Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() != Eigen::Success || llt.rcond() < 1e-14) {
    throw NumericalError("theta update: ill-conditioned system in group " +
                         std::to_string(j + 1));
  }
  const Eigen::VectorXd mean = llt.solve(c);

  // pi_1j = pi0 / (pi0 + (1-pi0) w_j) with
  // log w_j = -(g_j/2) log tau2_j - 1/2 log|A_j| + c'A^{-1}c / (2 sigma^2),
  // evaluated in log space; the exp term overflows routinely otherwise.
  double logdet = 0.0;
  for (int i = 0; i < grp.size; ++i) {
    logdet += 2.0 * std::log(llt.matrixL()(i, i));
  }
  const double quad = c.dot(mean);
  const double log_w = -0.5 * grp.size * std::log(state.tau2[j]) - 0.5 * logdet +
                       quad / (2.0 * state.sigma2);
  const double log_odds_spike =
      std::log(state.pi0) - std::log1p(-state.pi0) - log_w;
  const double pi1 = stable_sigmoid(log_odds_spike);

  if (rng.uniform() < pi1) {
    resid.noalias() += Zj * theta_j;
    theta_j.setZero();
    state.gamma[j] = 0;
    return;
  }
  Eigen::VectorXd z(grp.size);
  for (int i = 0; i < grp.size; ++i) z[i] = rng.normal();
  const Eigen::VectorXd draw =
      mean + std::sqrt(state.sigma2) * llt.matrixU().solve(z);
  if (!draw.allFinite()) {
    throw NumericalError("theta update: non-finite draw in group " + std::to_string(j + 1));
  }
  resid.noalias() += Zj * (theta_j - draw);
  theta_j = draw;
  state.gamma[j] = 1;
}

void GibbsSampler::update_unpenalized(ChainState& state, Eigen::VectorXd& resid,
                                      RngHandle& rng) const {
  const int nu = design_.n_unpenalized();
  if (nu == 0) return;
  const Eigen::VectorXd c =
      design_.Zu.transpose() * resid + gram_u_ * state.theta_u;
  Eigen::LLT<Eigen::MatrixXd> llt(gram_u_);
  if (llt.info() != Eigen::Success || llt.rcond() < 1e-12) {
    throw NumericalError("unpenalized update: Zu'Zu is singular or near-singular");
  }
  const Eigen::VectorXd mean = llt.solve(c);
  Eigen::VectorXd z(nu);
  for (int i = 0; i < nu; ++i) z[i] = rng.normal();
  const Eigen::VectorXd draw =
      mean + std::sqrt(state.sigma2) * llt.matrixU().solve(z);
  if (!draw.allFinite()) {
    throw NumericalError("unpenalized update: non-finite draw (collinear covariates?)");
  }
  resid.noalias() += design_.Zu * (state.theta_u - draw);
  state.theta_u = draw;
}

void GibbsSampler::update_tau2(ChainState& state, RngHandle& rng) const {
  for (int j = 0; j < design_.G(); ++j) {
    const auto& grp = design_.groups[j];
    const double norm = state.theta.segment(grp.start, grp.size).norm();
    const double lam2 = state.lambda2[j];
    const double lam = std::sqrt(lam2);
    if (norm > 0.0) {
      const double mean = lam * std::sqrt(state.sigma2) / norm;
      state.tau2[j] = 1.0 / rng.inv_gaussian(mean, lam2);
    } else {
      // Limit case: with theta_j at the origin the Inv-Gaussian mean is
      // undefined and tau2_j reverts to its prior.
      state.tau2[j] = rng.gamma(0.5 * (grp.size + 1), 0.5 * lam2);
    }
  }
}

void GibbsSampler::update_sigma2(ChainState& state, const Eigen::VectorXd& resid,
                                 RngHandle& rng) const {
  double dim;
  if (model_ == Model::agl_ss) {
    long Gt = 0;
    for (int j = 0; j < design_.G(); ++j) {
      if (state.gamma[j]) Gt += design_.groups[j].size;
    }
    dim = static_cast<double>(Gt);
  } else {
    dim = static_cast<double>(design_.g_tilde());
  }
  const double shape = 0.5 * (design_.T() + dim - 1.0) + hp_.a1;
  double penalty = 0.0;
  for (int j = 0; j < design_.G(); ++j) {
    const auto& grp = design_.groups[j];
    penalty += state.theta.segment(grp.start, grp.size).squaredNorm() / state.tau2[j];
  }
  const double rate = 0.5 * resid.squaredNorm() + 0.5 * penalty + hp_.b1;
  if (!std::isfinite(rate)) {
    throw NumericalError("sigma2 update: non-finite posterior rate");
  }
  state.sigma2 = rng.inv_gamma(shape, rate);
  if (!(state.sigma2 > 0.0) || !std::isfinite(state.sigma2)) {
    throw NumericalError("sigma2 update: non-finite draw");
  }
}

void GibbsSampler::redraw_from_priors(ChainState& state, RngHandle& rng) const {
  // Re-initialization after an SA truncation: phi | omega-tilde from the
  // priors. theta has no proper unconditional draw and restarts at its
  // prior mode, zero.
  state.lambda2 = lambda_sq_of_omega(state.sa.omega);
  state.theta.setZero();
  state.theta_u.setZero();
  for (int j = 0; j < design_.G(); ++j) {
    state.gamma[j] = 0;
    state.tau2[j] =
        rng.gamma(0.5 * (design_.groups[j].size + 1), 0.5 * state.lambda2[j]);
  }
  state.sigma2 = rng.inv_gamma(hp_.a1, hp_.b1);
  if (model_ == Model::agl_ss && !hp_.fixed_pi0) {
    state.pi0 = rng.beta(c_, hp_.d);
  }
}

void GibbsSampler::update_penalties(ChainState& state, RngHandle& rng) const {
  if (hp_.tuning == TuningMode::full_bayes) {
    for (int j = 0; j < design_.G(); ++j) {
      state.lambda2[j] = rng.gamma(0.5 * (design_.groups[j].size + 1) + hp_.a2,
                                   0.5 * state.tau2[j] + hp_.b2);
    }
    return;
  }
  std::vector<int> sizes(design_.G());
  for (int j = 0; j < design_.G(); ++j) sizes[j] = design_.groups[j].size;
  const bool restarted = sa_update(state.sa, state.tau2, sizes, sa_cfg_, rng);
  if (restarted) {
    redraw_from_priors(state, rng);
  } else {
    state.lambda2 = lambda_sq_of_omega(state.sa.omega);
  }
}

void GibbsSampler::sweep(ChainState& state, RngHandle& rng) const {
  Eigen::VectorXd resid = design_.y - design_.Z * state.theta;
  if (design_.n_unpenalized() > 0) resid.noalias() -= design_.Zu * state.theta_u;

  for (int j = 0; j < design_.G(); ++j) {
    if (model_ == Model::agl_ss) {
      update_theta_group_ss(j, state, resid, rng);
    } else {
      update_theta_group_agl(j, state, resid, rng);
    }
  }
  update_unpenalized(state, resid, rng);
  update_tau2(state, rng);
  update_sigma2(state, resid, rng);
  update_penalties(state, rng);
  if (model_ == Model::agl_ss && !hp_.fixed_pi0) {
    long n_in = 0;
    for (int j = 0; j < design_.G(); ++j) n_in += state.gamma[j];
    state.pi0 = rng.beta(static_cast<double>(design_.G() - n_in) + c_,
                         static_cast<double>(n_in) + hp_.d);
  }
}

PosteriorDraws GibbsSampler::run(const Schedule& schedule, RngHandle& rng,
                                 bool record_omega_path) const {
  schedule.validate();
  const long n = schedule.n_draws();
  const int G = design_.G();
  const bool ss = model_ == Model::agl_ss;

  PosteriorDraws out;
  out.model = model_;
  out.theta.resize(n, design_.g_tilde());
  out.theta_u.resize(n, design_.n_unpenalized());
  out.tau2.resize(n, G);
  out.sigma2.resize(n);
  out.lambda2.resize(n, G);
  if (ss) {
    out.pi0.resize(n);
    out.gamma.resize(n, G);
  }
  out.groups = design_.groups;
  out.col_means = design_.col_means;
  out.col_sds = design_.col_sds;
  out.unpen_means = design_.unpen_means;
  out.unpen_sds = design_.unpen_sds;
  out.y_mean = design_.y_mean;
  out.n_predictors = design_.n_predictors;
  if (record_omega_path) out.omega_path.resize(schedule.iterations, G);

  ChainState state = initial_state();
  long stored = 0;
  for (long s = 1; s <= schedule.iterations; ++s) {
    try {
      sweep(state, rng);
    } catch (const NumericalError& e) {
      throw NumericalError("iteration " + std::to_string(s) + ": " + e.what());
    }
    if (record_omega_path) out.omega_path.row(s - 1) = state.sa.omega;
    if (s > schedule.burn_in && (s - schedule.burn_in) % schedule.thin == 0) {
      out.theta.row(stored) = state.theta;
      out.theta_u.row(stored) = state.theta_u;
      out.tau2.row(stored) = state.tau2;
      out.sigma2[stored] = state.sigma2;
      out.lambda2.row(stored) = state.lambda2;
      if (ss) {
        out.pi0[stored] = state.pi0;
        for (int j = 0; j < G; ++j) out.gamma(stored, j) = state.gamma[j];
      }
      ++stored;
    }
  }
  out.sa_restarts = state.sa.kappa;
  return out;
}

}  // namespace bmidas
