#include "bmidas/almon.hpp"

#include <cmath>

#include "bmidas/errors.hpp"

namespace bmidas {

namespace {

// Falling factorial j (j-1) ... (j-l+1); the l-th derivative of c^j is
// ffact(j,l) c^{j-l}.
double ffact(int j, int l) {
  double f = 1.0;
  for (int i = 0; i < l; ++i) f *= static_cast<double>(j - i);
  return f;
}

// Monomial coefficients (length p+1) of the restricted basis polynomial
// whose free coefficient is theta_k, k in [r, p]. The r lowest-order
// coefficients are eliminated against the restriction equations
// D^l B(a) = 0, l = 0..r-1, at a = C-1.
Eigen::VectorXd restricted_poly(int p, int r, int k, double a) {
  Eigen::VectorXd poly = Eigen::VectorXd::Zero(p + 1);
  poly[k] = 1.0;
  if (r == 0) return poly;

  Eigen::MatrixXd V(r, r);
  Eigen::VectorXd rhs(r);
  for (int l = 0; l < r; ++l) {
    for (int j = 0; j < r; ++j) {
      V(l, j) = (l > j) ? 0.0 : ffact(j, l) * std::pow(a, j - l);
    }
    rhs[l] = -ffact(k, l) * std::pow(a, k - l);
  }
  Eigen::VectorXd dep = V.partialPivLu().solve(rhs);
  for (int j = 0; j < r; ++j) poly[j] = dep[j];
  return poly;
}

}  // namespace

AlmonBasis almon_basis(int p, int C, int r) {
  if (p < 1) throw ConfigError("almon_basis: polynomial degree p must be >= 1");
  if (r < 0 || r > 2) throw ConfigError("almon_basis: restriction count r must be 0, 1, or 2");
  if (r > p) throw ConfigError("almon_basis: invalid restriction count r > p");
  if (C < 2) {
    throw ConfigError(r == 2 ? "almon_basis: underdetermined, C < 2 with r = 2"
                             : "almon_basis: lag window C must be >= 2");
  }

  AlmonBasis basis;
  basis.p = p;
  basis.r = r;
  basis.kind = r == 0   ? RestrictionKind::none
               : r == 1 ? RestrictionKind::tail_zero
                        : RestrictionKind::tail_and_slope_zero;

  const int rows = p - r + 1;
  const double a = static_cast<double>(C - 1);
  basis.Q.resize(rows, C);
  for (int i = 0; i < rows; ++i) {
    const Eigen::VectorXd poly = restricted_poly(p, r, r + i, a);
    for (int c = 0; c < C; ++c) {
      // Horner
      double v = 0.0;
      for (int j = p; j >= 0; --j) v = v * c + poly[j];
      basis.Q(i, c) = v;
    }
  }
  return basis;
}

Eigen::VectorXd AlmonBasis::row_poly(int row) const {
  const double a = static_cast<double>(lags() - 1);
  return restricted_poly(p, r, r + row, a);
}

double AlmonBasis::weight_at(const Eigen::VectorXd& coefs, double c) const {
  double v = 0.0;
  for (int i = 0; i < free_params(); ++i) {
    const Eigen::VectorXd poly = row_poly(i);
    double b = 0.0;
    for (int j = p; j >= 0; --j) b = b * c + poly[j];
    v += coefs[i] * b;
  }
  return v;
}

double AlmonBasis::weight_slope_at(const Eigen::VectorXd& coefs, double c) const {
  double v = 0.0;
  for (int i = 0; i < free_params(); ++i) {
    const Eigen::VectorXd poly = row_poly(i);
    double b = 0.0;
    for (int j = p; j >= 1; --j) b = b * c + j * poly[j];
    v += coefs[i] * b;
  }
  return v;
}

}  // namespace bmidas
