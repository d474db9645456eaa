#pragma once

#include <Eigen/Dense>

namespace bmidas {

enum class RestrictionKind { none, tail_zero, tail_and_slope_zero };

// Restricted Almon lag polynomial basis.
//
// The weight curve over lags c = 0..C-1 is B(c) = sum_i theta_i c^i with
// polynomial degree p. Endpoint restrictions force the curve (r >= 1) and
// its slope (r = 2) to zero at the last lag c = C-1, leaving p-r+1 free
// parameters. Q maps the C high-frequency lags of one predictor onto the
// free parameters: each row of Q is one basis polynomial of the restricted
// family evaluated at c = 0..C-1.
struct AlmonBasis {
  int p = 1;
  int r = 0;
  RestrictionKind kind = RestrictionKind::none;
  Eigen::MatrixXd Q;  // (p-r+1) x C

  int free_params() const { return p - r + 1; }
  int lags() const { return static_cast<int>(Q.cols()); }

  // B(c; coefs) for free-parameter vector coefs, evaluated at a (possibly
  // fractional) lag c. Used by the restriction identity tests.
  double weight_at(const Eigen::VectorXd& coefs, double c) const;
  // d/dc B(c; coefs).
  double weight_slope_at(const Eigen::VectorXd& coefs, double c) const;

  // Polynomial coefficients (length p+1, constant term first) of the
  // basis row `row`.
  Eigen::VectorXd row_poly(int row) const;
};

// Builds the basis. r = 0 gives the plain monomial rows [0^i, 1^i, ..],
// r = 1 forces B(C-1) = 0, r = 2 additionally forces B'(C-1) = 0. The
// restricted rows are obtained by eliminating the r lowest-order monomial
// coefficients against the restriction equations, so the free parameters
// are the coefficients of c^r..c^p.
AlmonBasis almon_basis(int p, int C, int r);

}  // namespace bmidas
