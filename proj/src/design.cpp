#include "bmidas/design.hpp"

#include <cmath>
#include <string>

#include "bmidas/errors.hpp"

namespace bmidas {

bool MixedFreqPanel::row_usable(int t) const {
  const int j0 = lag0_index(t);
  return j0 - (C - 1) >= 0 && j0 < static_cast<int>(x.cols());
}

int MixedFreqPanel::first_usable() const {
  // head + (t+1) m - 1 - h_steps - (C-1) >= 0
  const int num = C + h_steps - head() - m;
  const int t = num <= 0 ? 0 : (num + m - 1) / m;
  return t;
}

void MixedFreqPanel::validate() const {
  if (m < 1) throw ConfigError("panel: frequency ratio m must be >= 1");
  if (C < 1) throw ConfigError("panel: lag window C must be >= 1");
  if (h_steps < 0) throw ConfigError("panel: horizon must be non-negative");
  if (tail < 0) throw ConfigError("panel: tail must be non-negative");
  if (y.size() == 0) throw ConfigError("panel: empty response");
  if (x.rows() == 0) throw ConfigError("panel: no predictors");
  if (head() < 0) {
    throw ConfigError("panel: high-frequency sample too short: " +
                      std::to_string(x.cols()) + " obs cannot cover " +
                      std::to_string(y.size()) + " periods at m = " +
                      std::to_string(m) + " plus tail " + std::to_string(tail));
  }
  if (!y.allFinite() || !x.allFinite()) {
    throw ConfigError("panel: non-finite observations");
  }
}

MixedFreqPanel truncated(const MixedFreqPanel& panel, int keep) {
  if (keep < 1 || keep > panel.n_obs()) {
    throw ConfigError("truncated: keep out of range");
  }
  MixedFreqPanel out = panel;
  out.y = panel.y.head(keep);
  out.tail = panel.tail + panel.m * (panel.n_obs() - keep);
  if (!panel.y_dates.empty()) {
    out.y_dates.assign(panel.y_dates.begin(), panel.y_dates.begin() + keep);
  }
  return out;
}

Eigen::VectorXd z_row_raw(const MixedFreqPanel& panel, const AlmonBasis& basis, int t) {
  if (basis.lags() != panel.C) {
    throw ConfigError("z_row_raw: basis lag window does not match panel C");
  }
  if (!panel.row_usable(t)) {
    throw ConfigError("z_row_raw: period " + std::to_string(t) +
                      " lacks full lag history (first usable period is " +
                      std::to_string(panel.first_usable()) + ")");
  }
  const int K = panel.n_predictors();
  const int g = basis.free_params();
  const int j0 = panel.lag0_index(t);
  Eigen::VectorXd row(K * g);
  Eigen::VectorXd lags(panel.C);
  for (int k = 0; k < K; ++k) {
    for (int c = 0; c < panel.C; ++c) lags[c] = panel.x(k, j0 - c);
    row.segment(k * g, g) = basis.Q * lags;
  }
  return row;
}

DesignMatrix build_design(const MixedFreqPanel& panel, const AlmonBasis& basis,
                          const Eigen::MatrixXd* unpenalized,
                          const DesignOptions& opts) {
  panel.validate();
  if (basis.lags() != panel.C) {
    throw ConfigError("build_design: basis lag window does not match panel C");
  }
  const int t0 = panel.first_usable();
  const int T = panel.n_obs() - t0;
  if (T < 2) {
    throw ConfigError("build_design: insufficient high-frequency history, "
                      "first usable period is " + std::to_string(t0) +
                      " of " + std::to_string(panel.n_obs()));
  }
  if (unpenalized && unpenalized->rows() != panel.n_obs()) {
    throw ConfigError("build_design: unpenalized covariates must have one row per period");
  }

  const int K = panel.n_predictors();
  const int g = basis.free_params();

  DesignMatrix d;
  d.first_t = t0;
  d.n_predictors = K;
  d.Z.resize(T, K * g);
  for (int i = 0; i < T; ++i) d.Z.row(i) = z_row_raw(panel, basis, t0 + i);
  d.y = panel.y.tail(T);

  if (opts.grouping == Grouping::by_predictor) {
    for (int k = 0; k < K; ++k) d.groups.push_back({k * g, g});
  } else {
    for (int j = 0; j < K * g; ++j) d.groups.push_back({j, 1});
  }

  d.col_means = Eigen::VectorXd::Zero(K * g);
  d.col_sds = Eigen::VectorXd::Ones(K * g);

  if (unpenalized) {
    d.Zu = unpenalized->middleRows(t0, T);
    const int nu = d.n_unpenalized();
    d.unpen_means = d.Zu.colwise().mean();
    d.Zu.rowwise() -= d.unpen_means.transpose();
    d.unpen_sds = Eigen::VectorXd::Ones(nu);
    if (opts.scale_unpenalized) {
      for (int j = 0; j < nu; ++j) {
        const double sd = std::sqrt(d.Zu.col(j).squaredNorm() / (T - 1));
        if (sd <= 0.0) {
          throw ConfigError("build_design: unpenalized covariate " +
                            std::to_string(j + 1) + " is constant");
        }
        d.unpen_sds[j] = sd;
        d.Zu.col(j) /= sd;
      }
    }
  } else {
    d.unpen_means.resize(0);
    d.unpen_sds.resize(0);
  }

  if (opts.standardize) standardize(d);
  return d;
}

void standardize(DesignMatrix& d) {
  const int T = d.T();
  if (d.col_means.size() != d.g_tilde()) {
    d.col_means = Eigen::VectorXd::Zero(d.g_tilde());
    d.col_sds = Eigen::VectorXd::Ones(d.g_tilde());
  }
  for (int j = 0; j < d.g_tilde(); ++j) {
    const double mean = d.Z.col(j).mean();
    d.Z.col(j).array() -= mean;
    const double sd = std::sqrt(d.Z.col(j).squaredNorm() / (T - 1));
    if (!(sd > 0.0)) {
      throw ConfigError("standardize: design column " + std::to_string(j + 1) +
                        " is constant");
    }
    d.Z.col(j) /= sd;
    // compose with previously recorded statistics
    d.col_means[j] += d.col_sds[j] * mean;
    d.col_sds[j] *= sd;
  }
  const double ym = d.y.mean();
  d.y.array() -= ym;
  d.y_mean += ym;
}

Eigen::VectorXd standardize_row(const DesignMatrix& d, const Eigen::VectorXd& z_raw) {
  if (z_raw.size() != d.g_tilde()) {
    throw ConfigError("standardize_row: size mismatch");
  }
  return (z_raw - d.col_means).cwiseQuotient(d.col_sds);
}

Eigen::VectorXd standardize_unpenalized_row(const DesignMatrix& d,
                                            const Eigen::VectorXd& zu_raw) {
  if (zu_raw.size() != d.n_unpenalized()) {
    throw ConfigError("standardize_unpenalized_row: size mismatch");
  }
  return (zu_raw - d.unpen_means).cwiseQuotient(d.unpen_sds);
}

Eigen::MatrixXd recover_slopes(const Eigen::MatrixXd& theta_draws,
                               const Eigen::VectorXd& col_sds,
                               const AlmonBasis& basis,
                               int n_predictors) {
  const int g = basis.free_params();
  if (theta_draws.cols() != n_predictors * g ||
      col_sds.size() != theta_draws.cols()) {
    throw ConfigError("recover_slopes: shape mismatch");
  }
  // beta_k = sum_i theta_{k,i} / sd_{k,i} * (Q iota)_i
  const Eigen::VectorXd contraction = basis.Q.rowwise().sum();
  Eigen::MatrixXd beta(theta_draws.rows(), n_predictors);
  for (int k = 0; k < n_predictors; ++k) {
    Eigen::VectorXd w =
        contraction.cwiseQuotient(col_sds.segment(k * g, g));
    beta.col(k) = theta_draws.middleCols(k * g, g) * w;
  }
  return beta;
}

}  // namespace bmidas
