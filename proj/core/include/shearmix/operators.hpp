#pragma once

#include <Eigen/Dense>
#include <string>

#include "shearmix/field.hpp"
#include "shearmix/profile.hpp"

namespace shearmix {

using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;

/// Dense matrix of a spectral operator on a Grid, with build metadata.
struct DiscreteOperator {
  MatrixXc matrix;
  std::shared_ptr<const Grid> grid;
  std::string profile_name;
  double eps = 0.0;
  double lambda = 0.0;
  double alpha = 0.0;
  double sigma0 = 0.0;
  bool near_singular = false;

  VectorXc apply(const VectorXc& v) const { return matrix * v; }
};

/// Fourier spectral second-derivative matrix (multiplier -eta^2) realized in
/// physical space. n <= 2048.
MatrixXc second_derivative_matrix(const Grid& grid);
MatrixXc first_derivative_matrix(const Grid& grid);

/// L_eps = eps * d^2/dy^2 - i b(y).
DiscreteOperator build_L(const ShearProfile& profile, double eps,
                         std::shared_ptr<const Grid> grid);

/// Airy-type operator
/// A = -eps d^2/dy^2 + (alpha - sigma0 eps^{(N+1)/(N+3)}) I + i (b(y) - lambda).
/// Flags near-singularity when the smallest singular value is below
/// 1e-13 * ||A||.
DiscreteOperator build_A(const ShearProfile& profile, double eps,
                         double lambda, double alpha, double sigma0, int N,
                         std::shared_ptr<const Grid> grid);

VectorXc to_vector(const SpectralField& f);
SpectralField to_field(std::shared_ptr<const Grid> grid, const VectorXc& v);

}  // namespace shearmix
