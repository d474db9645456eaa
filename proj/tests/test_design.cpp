#include <doctest.h>

#include <cmath>

#include <Eigen/Dense>

#include "bmidas/almon.hpp"
#include "bmidas/design.hpp"
#include "bmidas/errors.hpp"
#include "bmidas/rng.hpp"
#include "bmidas/simlab.hpp"

using namespace bmidas;

namespace {

MixedFreqPanel random_panel(int K, int T, int m, int C, std::uint64_t seed,
                            int tail = 0) {
  RngHandle rng(seed);
  MixedFreqPanel panel;
  panel.m = m;
  panel.C = C;
  panel.tail = tail;
  const int head = std::max(0, C - m);
  const int n_hf = head + m * T + tail;
  panel.x.resize(K, n_hf);
  for (int k = 0; k < K; ++k) {
    for (int n = 0; n < n_hf; ++n) panel.x(k, n) = rng.normal();
  }
  panel.y.resize(T);
  for (int t = 0; t < T; ++t) panel.y[t] = rng.normal();
  return panel;
}

}  // namespace

TEST_CASE("constant series yields monomial sums before standardization") {
  MixedFreqPanel panel;
  panel.m = 1;
  panel.C = 3;
  panel.y = Eigen::VectorXd::Zero(4);
  panel.x = Eigen::MatrixXd::Ones(1, 6);  // head = 2
  const AlmonBasis basis = almon_basis(2, 3, 0);
  DesignOptions opts;
  opts.standardize = false;
  const DesignMatrix d = build_design(panel, basis, nullptr, opts);
  REQUIRE(d.T() == 4);
  for (int t = 0; t < 4; ++t) {
    CHECK(d.Z(t, 0) == doctest::Approx(3.0));   // sum of c^0
    CHECK(d.Z(t, 1) == doctest::Approx(3.0));   // 0 + 1 + 2
    CHECK(d.Z(t, 2) == doctest::Approx(5.0));   // 0 + 1 + 4
  }
}

TEST_CASE("two-lag hand product") {
  // Q = [[1,1],[0,1]] is the p = 1, C = 2 monomial basis; lags (3, 5)
  // give z = (8, 5).
  MixedFreqPanel panel;
  panel.m = 1;
  panel.C = 2;
  panel.y = Eigen::VectorXd::Zero(2);
  panel.x.resize(1, 3);
  panel.x << 7.0, 5.0, 3.0;  // lag-0 of the last period is 3, lag-1 is 5
  const AlmonBasis basis = almon_basis(1, 2, 0);
  const Eigen::VectorXd z = z_row_raw(panel, basis, 1);
  CHECK(z[0] == doctest::Approx(8.0));
  CHECK(z[1] == doctest::Approx(5.0));
}

TEST_CASE("numerical illustration dimensions: K=4, m=3, C=12, T=500") {
  DgpConfig cfg;
  cfg.K = 4;
  cfg.m = 3;
  cfg.C = 12;
  cfg.T = 500;
  cfg.extra_rows = 0;
  cfg.x_iid_normal = true;
  cfg.fixed_sigma = 1.0;
  cfg.scheme = WeightScheme::fast_decay;
  cfg.beta_true = Eigen::VectorXd::Zero(4);
  cfg.beta_true[1] = 1.0;
  RngHandle rng(5);
  const SimulatedDataset ds = generate_dataset(cfg, rng);
  const AlmonBasis basis = almon_basis(3, 12, 2);
  const DesignMatrix d = build_design(ds.panel, basis);
  CHECK(d.Z.rows() == 500);
  CHECK(d.Z.cols() == 4 * (3 - 2 + 1));
  CHECK(d.G() == 4);
}

TEST_CASE("standardization statistics") {
  const MixedFreqPanel panel = random_panel(3, 60, 3, 6, 11);
  const AlmonBasis basis = almon_basis(3, 6, 2);
  const DesignMatrix d = build_design(panel, basis);
  const int T = d.T();
  for (int j = 0; j < d.g_tilde(); ++j) {
    CHECK(std::abs(d.Z.col(j).mean()) < 1e-10);
    const double sd = std::sqrt(d.Z.col(j).squaredNorm() / (T - 1));
    CHECK(std::abs(sd - 1.0) < 1e-8);
  }
  CHECK(std::abs(d.y.mean()) < 1e-10);
}

TEST_CASE("identity-standardization round trip") {
  const MixedFreqPanel panel = random_panel(2, 40, 3, 9, 12);
  const AlmonBasis basis = almon_basis(3, 9, 1);
  DesignOptions raw_opts;
  raw_opts.standardize = false;
  DesignMatrix manual = build_design(panel, basis, nullptr, raw_opts);
  standardize(manual);
  const DesignMatrix direct = build_design(panel, basis);
  CHECK((manual.Z - direct.Z).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((manual.col_means - direct.col_means).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((manual.col_sds - direct.col_sds).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(manual.y_mean == doctest::Approx(direct.y_mean));
}

TEST_CASE("shifting the panel by one period shifts the design rows") {
  const MixedFreqPanel panel = random_panel(2, 30, 3, 6, 13);
  MixedFreqPanel shifted = panel;
  shifted.y = panel.y.tail(29).eval();
  shifted.x = panel.x.rightCols(panel.x.cols() - 3).eval();
  const AlmonBasis basis = almon_basis(2, 6, 0);
  DesignOptions opts;
  opts.standardize = false;
  const DesignMatrix full = build_design(panel, basis, nullptr, opts);
  const DesignMatrix sub = build_design(shifted, basis, nullptr, opts);
  CHECK((full.Z.bottomRows(sub.T()) - sub.Z).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("rows lacking lag history are dropped, and the error names the first usable period") {
  MixedFreqPanel panel = random_panel(1, 10, 3, 12, 14);
  panel.x = panel.x.rightCols(30).eval();  // head = 0, first usable period > 0
  const AlmonBasis basis = almon_basis(3, 12, 2);
  const DesignMatrix d = build_design(panel, basis);
  CHECK(d.first_t == panel.first_usable());
  CHECK(d.T() == 10 - d.first_t);

  MixedFreqPanel tiny = random_panel(1, 4, 1, 12, 15);
  tiny.x = tiny.x.rightCols(4).eval();  // not a single usable row
  try {
    (void)build_design(tiny, almon_basis(3, 12, 0));
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("first usable period") != std::string::npos);
  }
}

TEST_CASE("constant design column cannot be standardized") {
  MixedFreqPanel panel = random_panel(1, 20, 1, 3, 16);
  panel.x.setOnes();
  CHECK_THROWS_AS((void)build_design(panel, almon_basis(2, 3, 0)), ConfigError);
}

TEST_CASE("truncation moves periods into the tail") {
  const MixedFreqPanel panel = random_panel(2, 30, 3, 6, 17);
  const MixedFreqPanel train = truncated(panel, 25);
  CHECK(train.n_obs() == 25);
  CHECK(train.tail == 15);
  CHECK(train.head() == panel.head());
  const AlmonBasis basis = almon_basis(2, 6, 0);
  // Forecast rows beyond the kept sample stay computable from the full panel.
  const Eigen::VectorXd z_full = z_row_raw(panel, basis, 27);
  DesignOptions opts;
  opts.standardize = false;
  const DesignMatrix d_full = build_design(panel, basis, nullptr, opts);
  CHECK((z_full.transpose() - d_full.Z.row(27 - d_full.first_t)).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("recover_slopes") {
  SUBCASE("zero coefficients give zero slopes") {
    const AlmonBasis basis = almon_basis(3, 12, 2);
    Eigen::MatrixXd theta = Eigen::MatrixXd::Zero(5, 4);
    const Eigen::MatrixXd beta =
        recover_slopes(theta, Eigen::VectorXd::Ones(4), basis, 2);
    CHECK(beta.cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("hand contraction on the unstandardized two-lag basis") {
    const AlmonBasis basis = almon_basis(1, 2, 0);
    Eigen::MatrixXd theta(1, 2);
    theta << 1.0, 1.0;
    const Eigen::MatrixXd beta =
        recover_slopes(theta, Eigen::VectorXd::Ones(2), basis, 1);
    CHECK(beta(0, 0) == doctest::Approx(3.0));
  }
  SUBCASE("standardization scaling is undone") {
    const AlmonBasis basis = almon_basis(1, 2, 0);
    Eigen::MatrixXd theta(1, 2);
    theta << 2.0, 2.0;
    Eigen::VectorXd sds(2);
    sds << 2.0, 4.0;
    const Eigen::MatrixXd beta = recover_slopes(theta, sds, basis, 1);
    // contraction (2, 1): 2/2*2 + 2/4*1
    CHECK(beta(0, 0) == doctest::Approx(2.5));
  }
}

TEST_CASE("unpenalized covariates are centered and recorded") {
  const MixedFreqPanel panel = random_panel(2, 40, 3, 6, 18);
  Eigen::MatrixXd U(40, 2);
  RngHandle rng(19);
  for (int t = 0; t < 40; ++t) {
    U(t, 0) = 3.0 + rng.normal();
    U(t, 1) = -1.0 + 2.0 * rng.normal();
  }
  const AlmonBasis basis = almon_basis(2, 6, 1);
  DesignOptions opts;
  opts.scale_unpenalized = true;
  const DesignMatrix d = build_design(panel, basis, &U, opts);
  REQUIRE(d.n_unpenalized() == 2);
  for (int j = 0; j < 2; ++j) {
    CHECK(std::abs(d.Zu.col(j).mean()) < 1e-10);
    CHECK(std::sqrt(d.Zu.col(j).squaredNorm() / (d.T() - 1)) ==
          doctest::Approx(1.0).epsilon(1e-8));
  }
  const Eigen::VectorXd zu = standardize_unpenalized_row(d, U.row(5).transpose());
  CHECK((zu.transpose() - d.Zu.row(5)).cwiseAbs().maxCoeff() < 1e-12);
}
