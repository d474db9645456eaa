#include "bmidas/inference.hpp"

#include <algorithm>
#include <cmath>

#include "bmidas/errors.hpp"

namespace bmidas {

double sample_quantile(Eigen::VectorXd values, double prob) {
  const long n = values.size();
  if (n == 0) throw ConfigError("sample_quantile: empty sample");
  std::sort(values.data(), values.data() + n);
  if (prob <= 0.0) return values[0];
  if (prob >= 1.0) return values[n - 1];
  const double pos = prob * (n - 1);
  const long lo = static_cast<long>(std::floor(pos));
  const double frac = pos - lo;
  if (lo + 1 >= n) return values[n - 1];
  return values[lo] * (1.0 - frac) + values[lo + 1] * frac;
}

Eigen::VectorXd coordinatewise_median(const Eigen::MatrixXd& draws) {
  Eigen::VectorXd med(draws.cols());
  for (long k = 0; k < draws.cols(); ++k) med[k] = sample_quantile(draws.col(k), 0.5);
  return med;
}

SelectionReport select_credible_interval(const Eigen::MatrixXd& beta_draws,
                                         double level) {
  if (beta_draws.rows() < 2) {
    throw ConfigError("select_credible_interval: need at least 2 draws");
  }
  if (!(level > 0.0 && level < 1.0)) {
    throw ConfigError("select_credible_interval: level must lie in (0, 1)");
  }
  SelectionReport rep;
  rep.criterion = SelectionCriterion::credible_interval;
  rep.level = level;
  const double alpha = (1.0 - level) / 2.0;
  for (long k = 0; k < beta_draws.cols(); ++k) {
    const double lo = sample_quantile(beta_draws.col(k), alpha);
    const double hi = sample_quantile(beta_draws.col(k), 1.0 - alpha);
    rep.included.push_back((lo > 0.0 || hi < 0.0) ? 1 : 0);
  }
  return rep;
}

SelectionReport select_posterior_median(const Eigen::MatrixXd& theta_draws,
                                        const std::vector<GroupRange>& groups) {
  if (theta_draws.rows() < 1) {
    throw ConfigError("select_posterior_median: empty draws");
  }
  SelectionReport rep;
  rep.criterion = SelectionCriterion::posterior_median;
  rep.inclusion_prob.resize(groups.size());
  const long n = theta_draws.rows();
  for (std::size_t j = 0; j < groups.size(); ++j) {
    long zeros = 0;
    for (long s = 0; s < n; ++s) {
      bool all_zero = true;
      for (int i = 0; i < groups[j].size; ++i) {
        if (theta_draws(s, groups[j].start + i) != 0.0) {
          all_zero = false;
          break;
        }
      }
      if (all_zero) ++zeros;
    }
    rep.inclusion_prob[j] = 1.0 - static_cast<double>(zeros) / n;
    rep.included.push_back(2 * zeros > n ? 0 : 1);
  }
  return rep;
}

MetricsReport compute_metrics(const std::vector<Eigen::MatrixXd>& beta_draws,
                              const Eigen::VectorXd& beta_true,
                              const std::vector<std::vector<int>>& selections) {
  const long R = static_cast<long>(beta_draws.size());
  const long K = beta_true.size();
  if (R == 0) throw ConfigError("compute_metrics: no replications");
  if (selections.size() != beta_draws.size()) {
    throw ConfigError("compute_metrics: selections / draws size mismatch");
  }

  MetricsReport rep;
  double sum_sq_err = 0.0, sum_sq_dev = 0.0, sum_sq_bias = 0.0;
  double sum_sq_err_active = 0.0, sum_sq_err_inactive = 0.0;
  long n_active_terms = 0, n_inactive_terms = 0;
  long total_draw_terms = 0;

  for (long i = 0; i < R; ++i) {
    const Eigen::MatrixXd& draws = beta_draws[i];
    if (draws.cols() != K) throw ConfigError("compute_metrics: K mismatch");
    const long S = draws.rows();
    for (long k = 0; k < K; ++k) {
      const double mean = draws.col(k).mean();
      const double dev = (draws.col(k).array() - mean).square().sum();
      const double err = (draws.col(k).array() - beta_true[k]).square().sum();
      sum_sq_dev += dev / S;
      sum_sq_err += err / S;
      sum_sq_bias += (mean - beta_true[k]) * (mean - beta_true[k]);
      if (beta_true[k] != 0.0) {
        sum_sq_err_active += err / S;
        ++n_active_terms;
      } else {
        sum_sq_err_inactive += err / S;
        ++n_inactive_terms;
      }
    }
    total_draw_terms += K;
  }
  (void)total_draw_terms;

  rep.var = sum_sq_dev / (R * K);
  rep.bias2 = sum_sq_bias / (R * K);
  rep.mse = sum_sq_err / (R * K);
  rep.mse_active = n_active_terms ? sum_sq_err_active / n_active_terms : 0.0;
  rep.mse_inactive = n_inactive_terms ? sum_sq_err_inactive / n_inactive_terms : 0.0;

  long tp = 0, fp = 0, tn = 0, fn = 0;
  for (long i = 0; i < R; ++i) {
    if (static_cast<long>(selections[i].size()) != K) {
      throw ConfigError("compute_metrics: selection length mismatch");
    }
    for (long k = 0; k < K; ++k) {
      const bool truth = beta_true[k] != 0.0;
      const bool sel = selections[i][k] != 0;
      if (truth && sel) ++tp;
      else if (!truth && sel) ++fp;
      else if (!truth && !sel) ++tn;
      else ++fn;
    }
  }
  rep.tpr = (tp + fn) ? static_cast<double>(tp) / (tp + fn) : 0.0;
  rep.fpr = (fp + tn) ? static_cast<double>(fp) / (fp + tn) : 0.0;
  const double d1 = static_cast<double>(tp + fp), d2 = static_cast<double>(tp + fn);
  const double d3 = static_cast<double>(tn + fp), d4 = static_cast<double>(tn + fn);
  if (d1 == 0.0 || d2 == 0.0 || d3 == 0.0 || d4 == 0.0) {
    rep.mcc = 0.0;
  } else {
    rep.mcc = (static_cast<double>(tp) * tn - static_cast<double>(fp) * fn) /
              std::sqrt(d1 * d2 * d3 * d4);
  }
  return rep;
}

}  // namespace bmidas
