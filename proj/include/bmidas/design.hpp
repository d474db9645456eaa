#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bmidas/almon.hpp"

namespace bmidas {

// Aligned low-frequency response plus high-frequency predictor panel.
//
// x holds one row per predictor. Its last `tail` columns fall after the
// last response period; the remaining columns cover the T response periods
// (m per period) preceded by head() columns of pre-sample history. The
// last high-frequency observation inside period t is lag 0 for an h = 0
// nowcast of y_t; horizons shift the lag-0 index back by h_steps
// high-frequency periods (direct forecast convention).
struct MixedFreqPanel {
  Eigen::VectorXd y;
  Eigen::MatrixXd x;  // K x N_hf
  int m = 1;
  int C = 1;
  int h_steps = 0;  // horizon in high-frequency periods, h = h_steps / m
  int tail = 0;     // high-frequency obs after the last response period

  std::vector<std::string> y_dates;  // optional labels, same length as y
  std::vector<std::string> x_dates;
  std::vector<std::string> x_names;

  int n_predictors() const { return static_cast<int>(x.rows()); }
  int n_obs() const { return static_cast<int>(y.size()); }
  int head() const {
    return static_cast<int>(x.cols()) - m * n_obs() - tail;
  }

  // Index of the lag-0 high-frequency observation for target period t.
  int lag0_index(int t) const { return head() + (t + 1) * m - 1 - h_steps; }
  // Whether a full C-lag window exists for target period t. Periods beyond
  // the response sample (t >= n_obs) are usable when the tail covers them.
  bool row_usable(int t) const;
  // Smallest usable target period.
  int first_usable() const;

  void validate() const;  // throws ConfigError on violated invariants
};

// Keeps the first `keep` response periods; the dropped periods'
// high-frequency data moves into the tail so forecast rows stay computable.
MixedFreqPanel truncated(const MixedFreqPanel& panel, int keep);

enum class Grouping {
  by_predictor,     // one group per predictor (BMIDAS-AGL / -SS)
  per_coefficient,  // singleton groups (BMIDAS-AL)
};

struct GroupRange {
  int start = 0;
  int size = 0;
};

struct DesignOptions {
  bool standardize = true;
  Grouping grouping = Grouping::by_predictor;
  bool scale_unpenalized = false;  // unpenalized block is always centered
};

// Standardized regression design. Z holds the penalized MIDAS blocks,
// Zu the always-included covariates; y is centered. The standardization
// statistics are frozen here at fit time and reused when standardizing
// out-of-sample rows.
struct DesignMatrix {
  Eigen::MatrixXd Z;
  Eigen::MatrixXd Zu;
  Eigen::VectorXd y;
  std::vector<GroupRange> groups;
  Eigen::VectorXd col_means, col_sds;    // per penalized column
  Eigen::VectorXd unpen_means, unpen_sds;
  double y_mean = 0.0;
  int first_t = 0;  // panel index of row 0
  int n_predictors = 0;

  int T() const { return static_cast<int>(Z.rows()); }
  int g_tilde() const { return static_cast<int>(Z.cols()); }
  int G() const { return static_cast<int>(groups.size()); }
  int n_unpenalized() const { return static_cast<int>(Zu.cols()); }
};

// Raw (unstandardized) transformed regressor row for target period t:
// the concatenation over predictors of Q * [x_{t-h}, ..., x_{t-h-(C-1)/m}].
Eigen::VectorXd z_row_raw(const MixedFreqPanel& panel, const AlmonBasis& basis, int t);

// Builds the design over all usable periods. `unpenalized`, when present,
// has one row per panel period and is sliced to the same rows as Z.
// Throws ConfigError when no usable rows exist (the message names the
// first usable period) or when a penalized column is constant.
DesignMatrix build_design(const MixedFreqPanel& panel, const AlmonBasis& basis,
                          const Eigen::MatrixXd* unpenalized = nullptr,
                          const DesignOptions& opts = {});

// Centers and scales the design in place, composing with any statistics
// already recorded.
void standardize(DesignMatrix& design);

// Applies the frozen statistics to a raw row (penalized part).
Eigen::VectorXd standardize_row(const DesignMatrix& design, const Eigen::VectorXd& z_raw);
Eigen::VectorXd standardize_unpenalized_row(const DesignMatrix& design,
                                            const Eigen::VectorXd& zu_raw);

// Per-draw overall slopes beta_k = theta_k' Q iota_C on the original data
// scale: standardized coefficients are mapped back through col_sds before
// the contraction. theta_draws is draws x g_tilde, columns ordered by
// predictor regardless of the penalty grouping.
Eigen::MatrixXd recover_slopes(const Eigen::MatrixXd& theta_draws,
                               const Eigen::VectorXd& col_sds,
                               const AlmonBasis& basis,
                               int n_predictors);

}  // namespace bmidas
