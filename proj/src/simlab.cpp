#include "bmidas/simlab.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "bmidas/errors.hpp"

namespace bmidas {

Eigen::VectorXd weight_scheme(WeightScheme kind, int C) {
  if (C < 2) throw ConfigError("weight_scheme: C must be >= 2");
  double a1 = 0.0;
  switch (kind) {
    case WeightScheme::fast_decay: a1 = -0.60; break;
    case WeightScheme::slow_decay: a1 = -0.12; break;
    case WeightScheme::near_flat: a1 = -0.008; break;
  }
  Eigen::VectorXd w(C);
  for (int c = 0; c < C; ++c) w[c] = std::exp(a1 * c);
  return w / w.sum();
}

Eigen::VectorXd default_beta_true(int K) {
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(K);
  const double head[9] = {0.0, 0.3, 0.5, 0.0, 0.3, 0.5, 0.0, 0.0, 0.8};
  for (int k = 0; k < K && k < 9; ++k) beta[k] = head[k];
  return beta;
}

void DgpConfig::validate() const {
  if (K < 1 || m < 1 || C < 2 || T < 2 || extra_rows < 0) {
    throw ConfigError("dgp: invalid dimensions");
  }
  if (!(std::abs(rho) < 1.0)) throw ConfigError("dgp: |rho| must be < 1");
  if (!(sigma_eps > 0.0 && sigma_eps < 1.0)) {
    throw ConfigError("dgp: sigma_eps must lie in (0, 1)");
  }
  if (!x_iid_normal && !(noise_to_signal > 0.0) && !fixed_sigma) {
    throw ConfigError("dgp: noise_to_signal must be positive");
  }
  if (beta_true.size() != 0 && beta_true.size() != K) {
    throw ConfigError("dgp: beta_true must have length K");
  }
}

Eigen::VectorXd DgpConfig::resolved_beta() const {
  return beta_true.size() ? beta_true : default_beta_true(K);
}

SimulatedDataset generate_dataset(const DgpConfig& cfg, RngHandle& rng) {
  cfg.validate();
  const int T_total = cfg.T + cfg.extra_rows;
  const int head = std::max(0, cfg.C - cfg.m);
  const int n_hf = head + cfg.m * T_total;
  const int burn = 200;

  SimulatedDataset ds;
  ds.beta_true = cfg.resolved_beta();
  ds.weights_used = weight_scheme(cfg.scheme, cfg.C);

  Eigen::MatrixXd x(cfg.K, n_hf);
  if (cfg.x_iid_normal) {
    for (int n = 0; n < n_hf; ++n) {
      for (int k = 0; k < cfg.K; ++k) x(k, n) = rng.normal();
    }
  } else {
    // Innovation covariance: Toeplitz with entries sigma_eps^{|k-k'|};
    // positive definite for sigma_eps in (0,1), assert via Cholesky.
    Eigen::MatrixXd cov(cfg.K, cfg.K);
    for (int a = 0; a < cfg.K; ++a) {
      for (int b = 0; b < cfg.K; ++b) {
        cov(a, b) = std::pow(cfg.sigma_eps, std::abs(a - b));
      }
    }
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success) {
      throw NumericalError("dgp: innovation covariance is not positive definite");
    }
    const Eigen::MatrixXd L = llt.matrixL();
    Eigen::VectorXd state = Eigen::VectorXd::Constant(cfg.K, cfg.mu / (1.0 - cfg.rho));
    Eigen::VectorXd z(cfg.K);
    for (int n = -burn; n < n_hf; ++n) {
      for (int k = 0; k < cfg.K; ++k) z[k] = rng.normal();
      state = (cfg.mu + cfg.rho * state.array()).matrix() + L * z;
      if (n >= 0) x.col(n) = state;
    }
  }

  // Distributed-lag signal at h = 0: the lag-0 observation of period t is
  // the last high-frequency observation inside t.
  Eigen::VectorXd signal(T_total);
  for (int t = 0; t < T_total; ++t) {
    const int j0 = head + (t + 1) * cfg.m - 1;
    double acc = 0.0;
    for (int k = 0; k < cfg.K; ++k) {
      if (ds.beta_true[k] == 0.0) continue;
      double s = 0.0;
      for (int c = 0; c < cfg.C; ++c) s += ds.weights_used[c] * x(k, j0 - c);
      acc += ds.beta_true[k] * s;
    }
    signal[t] = acc;
  }

  double sigma;
  if (cfg.fixed_sigma) {
    sigma = *cfg.fixed_sigma;
  } else {
    const double var_signal =
        (signal.array() - signal.mean()).square().sum() / (T_total - 1);
    if (!(var_signal > 0.0)) {
      throw ConfigError("dgp: degenerate signal (all slope coefficients zero?)");
    }
    sigma = std::sqrt(cfg.noise_to_signal * var_signal);
  }
  ds.sigma_used = sigma;

  Eigen::VectorXd y(T_total);
  for (int t = 0; t < T_total; ++t) {
    y[t] = cfg.alpha + signal[t] + sigma * rng.normal();
  }

  ds.panel.y = y;
  ds.panel.x = x;
  ds.panel.m = cfg.m;
  ds.panel.C = cfg.C;
  ds.panel.h_steps = 0;
  ds.panel.tail = 0;
  ds.panel.validate();
  return ds;
}

namespace {

struct RepResult {
  bool ok = false;
  std::vector<int> selection;
  Eigen::MatrixXd beta_draws;
  double forecast_point = 0.0;
  double realized = 0.0;
  double sigma_used = 0.0;
  ForecastRecord record;
};

RepResult run_replication(const DgpConfig& cfg, const McSettings& st, int rep) {
  RepResult res;
  RngHandle rng(cfg.seed, static_cast<std::uint64_t>(rep));
  SimulatedDataset ds = generate_dataset(cfg, rng);
  res.sigma_used = ds.sigma_used;

  const MixedFreqPanel train =
      cfg.extra_rows > 0 ? truncated(ds.panel, cfg.T) : ds.panel;
  const AlmonBasis basis = almon_basis(st.p, cfg.C, st.r);
  DesignOptions opts;
  opts.grouping = st.grouping;
  const DesignMatrix design = build_design(train, basis, nullptr, opts);

  GibbsSampler sampler(design, st.model, st.hp, st.sa);
  const PosteriorDraws draws = sampler.run(st.schedule, rng);

  res.beta_draws =
      recover_slopes(draws.theta, draws.col_sds, basis, cfg.K);
  if (st.model == Model::agl_ss) {
    // Posterior-median rule needs exact zeros; with by-predictor grouping
    // the groups are the predictors.
    const SelectionReport rep_sel =
        select_posterior_median(draws.theta, draws.groups);
    if (st.grouping == Grouping::by_predictor) {
      res.selection = rep_sel.included;
    } else {
      // Singleton groups: a predictor is included when any of its
      // coefficient groups is.
      const int g = basis.free_params();
      res.selection.assign(cfg.K, 0);
      for (int k = 0; k < cfg.K; ++k) {
        for (int i = 0; i < g; ++i) {
          if (rep_sel.included[k * g + i]) res.selection[k] = 1;
        }
      }
    }
  } else {
    res.selection = select_credible_interval(res.beta_draws, st.ci_level).included;
  }

  if (cfg.extra_rows > 0) {
    const Eigen::VectorXd z_raw = z_row_raw(ds.panel, basis, cfg.T);
    const Eigen::VectorXd z_std = standardize_row(design, z_raw);
    res.record = make_forecast_record(draws, z_std, Eigen::VectorXd(), cfg.T,
                                      0.0, ds.panel.y[cfg.T], rng);
    res.forecast_point = res.record.point;
    res.realized = ds.panel.y[cfg.T];
  }
  res.ok = true;
  return res;
}

}  // namespace

McResult run_monte_carlo(const DgpConfig& cfg, const McSettings& st) {
  if (st.R < 1) throw ConfigError("montecarlo: R must be >= 1");
  std::vector<RepResult> results(st.R);
  std::atomic<int> next{0};
  std::mutex err_mutex;
  std::vector<std::string> errors;

  auto worker = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= st.R) return;
      try {
        results[i] = run_replication(cfg, st, i);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(err_mutex);
        errors.push_back("replication " + std::to_string(i) + ": " + e.what());
      }
    }
  };

  const int n_workers = std::max(1, std::min(st.workers, st.R));
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  McResult out;
  const Eigen::VectorXd beta_true = cfg.resolved_beta();
  std::vector<Eigen::MatrixXd> beta_draws;
  std::vector<ForecastRecord> records;
  double sigma_acc = 0.0;
  out.selection_rate = Eigen::VectorXd::Zero(cfg.K);
  for (auto& r : results) {
    if (!r.ok) continue;
    beta_draws.push_back(std::move(r.beta_draws));
    out.selections.push_back(r.selection);
    for (int k = 0; k < cfg.K; ++k) out.selection_rate[k] += r.selection[k];
    sigma_acc += r.sigma_used;
    if (cfg.extra_rows > 0) {
      records.push_back(std::move(r.record));
      out.forecast_points.push_back(r.forecast_point);
      out.forecast_realized.push_back(r.realized);
    }
  }
  out.failures = st.R - static_cast<int>(beta_draws.size());
  if (beta_draws.empty()) {
    throw NumericalError("montecarlo: every replication failed; first error: " +
                         (errors.empty() ? std::string("unknown") : errors.front()));
  }
  out.selection_rate /= static_cast<double>(beta_draws.size());
  out.avg_sigma = sigma_acc / static_cast<double>(beta_draws.size());
  out.metrics = compute_metrics(beta_draws, beta_true, out.selections);
  if (!records.empty()) out.scores = score_forecasts(records);
  return out;
}

}  // namespace bmidas
