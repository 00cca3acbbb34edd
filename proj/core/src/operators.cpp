#include "shearmix/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace shearmix {

namespace {

MatrixXc multiplier_matrix(const Grid& grid,
                           const std::function<cplx(int)>& symbol) {
  const int n = grid.n();
  if (n > 2048)
    throw std::invalid_argument("dense operator limited to n <= 2048");
  MatrixXc out(n, n);
  std::vector<cplx> col(n);
  for (int j = 0; j < n; ++j) {
    std::fill(col.begin(), col.end(), cplx(0.0));
    col[j] = 1.0;
    auto c = grid.forward(col);
    for (int k = 0; k < n; ++k) c[k] *= symbol(grid.wavenumber(k));
    auto phys = grid.inverse(c);
    for (int i = 0; i < n; ++i) out(i, j) = phys[i];
  }
  return out;
}

}  // namespace

MatrixXc second_derivative_matrix(const Grid& grid) {
  return multiplier_matrix(grid, [](int eta) {
    return cplx(-static_cast<double>(eta) * eta, 0.0);
  });
}

MatrixXc first_derivative_matrix(const Grid& grid) {
  return multiplier_matrix(grid,
                           [](int eta) { return cplx(0.0, eta); });
}

DiscreteOperator build_L(const ShearProfile& profile, double eps,
                         std::shared_ptr<const Grid> grid) {
  if (eps <= 0) throw std::invalid_argument("build_L: eps must be > 0");
  DiscreteOperator op;
  op.grid = grid;
  op.profile_name = profile.name();
  op.eps = eps;
  op.matrix = eps * second_derivative_matrix(*grid);
  for (int j = 0; j < grid->n(); ++j)
    op.matrix(j, j) -= cplx(0.0, profile(grid->point(j)));
  return op;
}

DiscreteOperator build_A(const ShearProfile& profile, double eps,
                         double lambda, double alpha, double sigma0, int N,
                         std::shared_ptr<const Grid> grid) {
  if (alpha < 0) throw std::invalid_argument("build_A: alpha must be >= 0");
  DiscreteOperator op;
  op.grid = grid;
  op.profile_name = profile.name();
  op.eps = eps;
  op.lambda = lambda;
  op.alpha = alpha;
  op.sigma0 = sigma0;
  double shift =
      alpha - sigma0 * std::pow(eps, static_cast<double>(N + 1) / (N + 3));
  op.matrix = -eps * second_derivative_matrix(*grid);
  for (int j = 0; j < grid->n(); ++j)
    op.matrix(j, j) += shift + cplx(0.0, profile(grid->point(j)) - lambda);

  // full SVD at every build would dominate runtime; the smallest |U_jj|
  // of a pivoted LU is a cheap proxy for the smallest singular value
  Eigen::PartialPivLU<MatrixXc> lu(op.matrix);
  double norm = op.matrix.cwiseAbs().maxCoeff();
  double umin = 1e300;
  for (int j = 0; j < grid->n(); ++j)
    umin = std::min(umin, std::abs(lu.matrixLU()(j, j)));
  op.near_singular = umin < 1e-13 * norm;
  return op;
}

VectorXc to_vector(const SpectralField& f) {
  VectorXc v(f.n());
  for (int j = 0; j < f.n(); ++j) v[j] = f.values()[j];
  return v;
}

SpectralField to_field(std::shared_ptr<const Grid> grid, const VectorXc& v) {
  std::vector<cplx> vals(v.size());
  for (int j = 0; j < v.size(); ++j) vals[j] = v[j];
  return SpectralField(std::move(grid), std::move(vals));
}

}  // namespace shearmix
