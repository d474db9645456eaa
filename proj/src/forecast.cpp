#include "bmidas/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bmidas/errors.hpp"

namespace bmidas {

Eigen::VectorXd predictive_draws(const PosteriorDraws& draws,
                                 const Eigen::VectorXd& z_new,
                                 const Eigen::VectorXd& zu_new,
                                 RngHandle& rng) {
  if (draws.col_sds.size() == 0 && draws.theta.cols() > 0) {
    throw ConfigError("predictive_draws: missing standardization statistics");
  }
  if (z_new.size() != draws.theta.cols()) {
    throw ConfigError("predictive_draws: z_new size mismatch");
  }
  if (zu_new.size() != draws.theta_u.cols()) {
    throw ConfigError("predictive_draws: zu_new size mismatch");
  }
  const long n = draws.n_draws();
  Eigen::VectorXd out(n);
  for (long s = 0; s < n; ++s) {
    double mean = draws.theta.row(s).dot(z_new);
    if (zu_new.size() > 0) mean += draws.theta_u.row(s).dot(zu_new);
    out[s] = mean + std::sqrt(draws.sigma2[s]) * rng.normal() + draws.y_mean;
  }
  return out;
}

ForecastRecord make_forecast_record(const PosteriorDraws& draws,
                                    const Eigen::VectorXd& z_new,
                                    const Eigen::VectorXd& zu_new,
                                    long target_index, double horizon,
                                    std::optional<double> realized,
                                    RngHandle& rng) {
  ForecastRecord rec;
  rec.target_index = target_index;
  rec.horizon = horizon;
  rec.draws = predictive_draws(draws, z_new, zu_new, rng);
  rec.point = rec.draws.mean();
  rec.realized = realized;
  return rec;
}

double crps(Eigen::VectorXd draws, double realized) {
  const long S = draws.size();
  if (S < 2) throw ConfigError("crps: need at least 2 draws");
  std::sort(draws.data(), draws.data() + S);
  double abs_err = 0.0, spread = 0.0;
  for (long i = 0; i < S; ++i) {
    abs_err += std::abs(draws[i] - realized);
    spread += (2.0 * (i + 1) - S - 1.0) * draws[i];
  }
  return abs_err / S - spread / (static_cast<double>(S) * S);
}

double log_score(const Eigen::VectorXd& draws, double realized) {
  const long S = draws.size();
  if (S < 30) throw ConfigError("log_score: need at least 30 draws");
  const double mean = draws.mean();
  const double sd = std::sqrt((draws.array() - mean).square().sum() / (S - 1));
  const double bw = 1.06 * sd * std::pow(static_cast<double>(S), -0.2);
  if (!(bw > 0.0)) {
    // Degenerate predictive density (all draws equal).
    return realized == mean ? std::numeric_limits<double>::infinity()
                            : -std::numeric_limits<double>::infinity();
  }
  // log mean of N(realized; x_s, bw^2) via log-sum-exp
  double max_lp = -std::numeric_limits<double>::infinity();
  Eigen::VectorXd lp(S);
  const double lognorm = -0.5 * std::log(2.0 * M_PI) - std::log(bw);
  for (long s = 0; s < S; ++s) {
    const double zs = (realized - draws[s]) / bw;
    lp[s] = lognorm - 0.5 * zs * zs;
    max_lp = std::max(max_lp, lp[s]);
  }
  if (!std::isfinite(max_lp)) return -std::numeric_limits<double>::infinity();
  double acc = 0.0;
  for (long s = 0; s < S; ++s) acc += std::exp(lp[s] - max_lp);
  return max_lp + std::log(acc / S);
}

namespace {

// Continued-fraction incomplete beta, Lentz's algorithm.
double betacf(double a, double b, double x) {
  const double eps = 3e-16;
  const double fpmin = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0, d = 1.0 - qab * x / qap;
  if (std::abs(d) < fpmin) d = fpmin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 300; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < eps) break;
  }
  return h;
}

double inc_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                       a * std::log(x) + b * std::log1p(-x);
  const double bt = std::exp(ln_bt);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return bt * betacf(a, b, x) / a;
  }
  return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

}  // namespace

double student_t_cdf(double x, double dof) {
  if (!(dof > 0.0)) throw ConfigError("student_t_cdf: dof must be positive");
  const double p = 0.5 * inc_beta(0.5 * dof, 0.5, dof / (dof + x * x));
  return x >= 0.0 ? 1.0 - p : p;
}

double dmw_pvalue(const Eigen::VectorXd& loss_a, const Eigen::VectorXd& loss_b,
                  int horizon_steps) {
  const long n = loss_a.size();
  if (n < 8) throw ConfigError("dmw_pvalue: need at least 8 forecasts");
  if (loss_b.size() != n) throw ConfigError("dmw_pvalue: length mismatch");
  if (horizon_steps < 1) throw ConfigError("dmw_pvalue: horizon_steps must be >= 1");

  const Eigen::VectorXd d = loss_a - loss_b;
  const double dbar = d.mean();
  const Eigen::VectorXd dc = d.array() - dbar;

  // Long-run variance of the differential; Newey-West up to h-1 lags.
  double lrv = dc.squaredNorm() / n;
  if (horizon_steps > 1) {
    const int L = horizon_steps - 1;
    for (int l = 1; l <= L; ++l) {
      double g = 0.0;
      for (long t = l; t < n; ++t) g += dc[t] * dc[t - l];
      g /= n;
      lrv += 2.0 * (1.0 - static_cast<double>(l) / (L + 1)) * g;
    }
    lrv = std::max(lrv, 0.0);
  }

  if (!(lrv > 0.0)) {
    // Degenerate differential: no sampling variability to test against.
    return dbar == 0.0 ? 0.5 : 1.0;
  }

  const double h = static_cast<double>(horizon_steps);
  const double correction =
      std::sqrt((n + 1.0 - 2.0 * h + h * (h - 1.0) / n) / n);
  const double stat = correction * dbar / std::sqrt(lrv / n);
  return 1.0 - student_t_cdf(stat, static_cast<double>(n - 1));
}

ForecastScores score_forecasts(const std::vector<ForecastRecord>& records) {
  ForecastScores s;
  double sq = 0.0, ls = 0.0, cr = 0.0;
  for (const auto& rec : records) {
    if (!rec.realized) continue;
    const double err = rec.point - *rec.realized;
    sq += err * err;
    ls += log_score(rec.draws, *rec.realized);
    cr += crps(rec.draws, *rec.realized);
    ++s.n;
  }
  if (s.n == 0) return s;
  s.rmsfe = std::sqrt(sq / s.n);
  s.avg_log_score = ls / s.n;
  s.avg_crps = cr / s.n;
  return s;
}

RelativeScores relative_scores(const ForecastScores& model,
                               const ForecastScores& benchmark) {
  RelativeScores r;
  r.rmsfe_ratio = model.rmsfe / benchmark.rmsfe;
  r.crps_ratio = model.avg_crps / benchmark.avg_crps;
  r.ls_differential = model.avg_log_score - benchmark.avg_log_score;
  return r;
}

Eigen::VectorXd loss_series(const std::vector<ForecastRecord>& records, DmwLoss loss) {
  std::vector<double> vals;
  for (const auto& rec : records) {
    if (!rec.realized) continue;
    switch (loss) {
      case DmwLoss::squared_error: {
        const double e = rec.point - *rec.realized;
        vals.push_back(e * e);
        break;
      }
      case DmwLoss::crps:
        vals.push_back(crps(rec.draws, *rec.realized));
        break;
      case DmwLoss::neg_log_score:
        vals.push_back(-log_score(rec.draws, *rec.realized));
        break;
    }
  }
  return Eigen::Map<Eigen::VectorXd>(vals.data(), static_cast<long>(vals.size()));
}

}  // namespace bmidas
