#include <doctest.h>

#include <cmath>
#include <cstdint>

#include <Eigen/Dense>

#include "bmidas/almon.hpp"
#include "bmidas/errors.hpp"
#include "bmidas/rng.hpp"

using bmidas::almon_basis;
using bmidas::AlmonBasis;
using bmidas::RestrictionKind;

namespace {

// Exact-arithmetic oracle for the p = 3, r = 2 restricted rows: solving
// B(a) = 0 and B'(a) = 0 for the two lowest monomial coefficients gives
// theta_1 = -k a^{k-1} and theta_0 = (k-1) a^k for free index k, all
// integers for integer a. Evaluates that polynomial at integer c.
std::int64_t restricted_row_value_p3r2(int k, std::int64_t a, std::int64_t c) {
  std::int64_t ak1 = 1;  // a^{k-1}
  for (int i = 0; i < k - 1; ++i) ak1 *= a;
  const std::int64_t theta1 = -static_cast<std::int64_t>(k) * ak1;
  const std::int64_t theta0 = (k - 1) * ak1 * a;
  std::int64_t ck = 1;
  for (int i = 0; i < k; ++i) ck *= c;
  return theta0 + theta1 * c + ck;
}

}  // namespace

TEST_CASE("unrestricted basis rows are monomials") {
  const AlmonBasis basis = almon_basis(3, 12, 0);
  CHECK(basis.kind == RestrictionKind::none);
  CHECK(basis.Q.rows() == 4);
  CHECK(basis.Q.cols() == 12);
  for (int c = 0; c < 12; ++c) {
    CHECK(basis.Q(0, c) == doctest::Approx(1.0));
    CHECK(basis.Q(1, c) == doctest::Approx(static_cast<double>(c)));
    CHECK(basis.Q(2, c) == doctest::Approx(static_cast<double>(c) * c));
  }
}

TEST_CASE("tail restriction forces the curve to zero at the last lag") {
  const AlmonBasis basis = almon_basis(3, 12, 1);
  CHECK(basis.kind == RestrictionKind::tail_zero);
  CHECK(basis.Q.rows() == 3);
  for (int i = 0; i < 3; ++i) {
    const double scale = basis.Q.row(i).cwiseAbs().maxCoeff();
    CHECK(std::abs(basis.Q(i, 11)) <= 1e-10 * scale);
  }
}

TEST_CASE("tail and slope restrictions, p = 3, C = 12") {
  const AlmonBasis basis = almon_basis(3, 12, 2);
  CHECK(basis.kind == RestrictionKind::tail_and_slope_zero);
  CHECK(basis.Q.rows() == 2);

  SUBCASE("endpoint values vanish") {
    for (int i = 0; i < 2; ++i) {
      const double scale = basis.Q.row(i).cwiseAbs().maxCoeff();
      CHECK(std::abs(basis.Q(i, 11)) <= 1e-10 * scale);
      Eigen::VectorXd e = Eigen::VectorXd::Zero(2);
      e[i] = 1.0;
      CHECK(std::abs(basis.weight_slope_at(e, 11.0)) <= 1e-10 * scale);
    }
  }
  SUBCASE("closed-form values at the first lag") {
    CHECK(basis.Q(0, 0) == doctest::Approx(121.0).epsilon(1e-12));
    CHECK(basis.Q(1, 0) == doctest::Approx(2662.0).epsilon(1e-12));
  }
  SUBCASE("every entry matches the exact-arithmetic oracle") {
    for (int i = 0; i < 2; ++i) {
      for (int c = 0; c < 12; ++c) {
        const auto expect = restricted_row_value_p3r2(2 + i, 11, c);
        CHECK(basis.Q(i, c) == doctest::Approx(static_cast<double>(expect)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("restriction identities hold for any coefficient vector") {
  bmidas::RngHandle rng(77);
  for (int C : {6, 12, 24}) {
    const AlmonBasis basis = almon_basis(3, C, 2);
    const double a = C - 1.0;
    for (int rep = 0; rep < 20; ++rep) {
      Eigen::VectorXd coefs(2);
      coefs << rng.normal() * 10.0, rng.normal() * 10.0;
      double scale = 0.0;
      for (int c = 0; c < C; ++c) {
        scale = std::max(scale, std::abs(basis.weight_at(coefs, c)));
      }
      CHECK(std::abs(basis.weight_at(coefs, a)) <= 1e-10 * scale);
      CHECK(std::abs(basis.weight_slope_at(coefs, a)) <= 1e-10 * scale);
    }
  }
}

TEST_CASE("restricted rows lie in the row space of the unrestricted basis") {
  const AlmonBasis full = almon_basis(3, 12, 0);
  const AlmonBasis restricted = almon_basis(3, 12, 2);
  Eigen::MatrixXd stacked(full.Q.rows() + restricted.Q.rows(), 12);
  stacked << full.Q, restricted.Q;
  Eigen::FullPivLU<Eigen::MatrixXd> lu_full(full.Q);
  Eigen::FullPivLU<Eigen::MatrixXd> lu_stacked(stacked);
  lu_full.setThreshold(1e-8);
  lu_stacked.setThreshold(1e-8);
  CHECK(lu_full.rank() == 4);
  CHECK(lu_stacked.rank() == 4);
}

TEST_CASE("precondition violations") {
  CHECK_THROWS_AS((void)almon_basis(3, 12, 4), bmidas::ConfigError);
  CHECK_THROWS_AS((void)almon_basis(1, 12, 2), bmidas::ConfigError);  // r > p
  CHECK_THROWS_AS((void)almon_basis(3, 1, 2), bmidas::ConfigError);   // underdetermined
  CHECK_THROWS_AS((void)almon_basis(0, 12, 0), bmidas::ConfigError);
  CHECK_THROWS_AS((void)almon_basis(3, 12, -1), bmidas::ConfigError);
}
