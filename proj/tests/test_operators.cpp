#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <memory>

#include "shearmix/operators.hpp"

using namespace shearmix;

namespace {
ShearProfile zero_profile() {
  return ShearProfile("zero", [](double, int) { return 0.0; }, 1, 0.5,
                      /*periodic=*/false);
}
}  // namespace

TEST_CASE("operators: derivative matrices act as Fourier multipliers") {
  auto grid = std::make_shared<Grid>(64);
  MatrixXc d1 = first_derivative_matrix(*grid);
  MatrixXc d2 = second_derivative_matrix(*grid);
  SpectralField f = SpectralField::from_function(
      grid, [](double y) { return cplx(std::cos(3 * y), std::sin(y)); });
  VectorXc v = to_vector(f);
  SpectralField df = to_field(grid, d1 * v);
  SpectralField ddf = to_field(grid, d2 * v);
  CHECK((df - f.derivative(1)).l2_norm() < 1e-11);
  CHECK((ddf - f.derivative(2)).l2_norm() < 1e-11);
}

TEST_CASE("operators: L with b = 0 has eigenvalues -eps eta^2") {
  auto grid = std::make_shared<Grid>(64);
  ShearProfile zero = zero_profile();
  double eps = 0.01;
  DiscreteOperator L = build_L(zero, eps, grid);
  Eigen::ComplexEigenSolver<MatrixXc> es(L.matrix, false);
  std::vector<double> got;
  for (int j = 0; j < 64; ++j) got.push_back(es.eigenvalues()[j].real());
  std::sort(got.begin(), got.end());
  std::vector<double> expect;
  for (int j = 0; j < 64; ++j) {
    int eta = grid->wavenumber(j);
    expect.push_back(-eps * eta * eta);
  }
  std::sort(expect.begin(), expect.end());
  for (int j = 0; j < 64; ++j) {
    CHECK(std::abs(got[j] - expect[j]) < 1e-10);
    CHECK(std::abs(es.eigenvalues()[j].imag()) < 1e-10);
  }
}

TEST_CASE("operators: pure transport spectrum is the sampled symbol") {
  // eps -> 0 limit checked directly: diag(-i b(y_j)).
  auto grid = std::make_shared<Grid>(64);
  ShearProfile sin_prof = make_profile("sinusoidal");
  MatrixXc M = MatrixXc::Zero(64, 64);
  for (int j = 0; j < 64; ++j)
    M(j, j) = cplx(0.0, -sin_prof(grid->point(j)));
  Eigen::ComplexEigenSolver<MatrixXc> es(M, false);
  std::vector<double> got, expect;
  for (int j = 0; j < 64; ++j) {
    got.push_back(es.eigenvalues()[j].imag());
    expect.push_back(-sin_prof(grid->point(j)));
  }
  std::sort(got.begin(), got.end());
  std::sort(expect.begin(), expect.end());
  for (int j = 0; j < 64; ++j) CHECK(got[j] == doctest::Approx(expect[j]));
}

TEST_CASE("operators: A with b = 0 is diagonal in Fourier") {
  auto grid = std::make_shared<Grid>(64);
  ShearProfile zero = zero_profile();
  double eps = 0.01, alpha = 1.0, lambda = 0.0;
  DiscreteOperator A = build_A(zero, eps, lambda, alpha, /*sigma0=*/0.0,
                               /*N=*/1, grid);
  SpectralField f = SpectralField::mode(grid, 2);
  SpectralField Af = to_field(grid, A.apply(to_vector(f)));
  // (eps eta^2 + alpha) e^{i eta y}
  double mult = eps * 4 + alpha;
  SpectralField scaled = f;
  scaled *= cplx(mult, 0.0);
  CHECK((Af - scaled).l2_norm() < 1e-12);
  CHECK_FALSE(A.near_singular);
}

TEST_CASE("operators: A and L agree up to the resolvent identity") {
  // A = -(L - (alpha - sigma0 eps^{1/2} - i lambda) I) for N = 1.
  auto grid = std::make_shared<Grid>(64);
  ShearProfile prof = make_profile("sinusoidal");
  double eps = 0.01, lambda = 0.4, alpha = 0.7, sigma0 = 0.1;
  DiscreteOperator L = build_L(prof, eps, grid);
  DiscreteOperator A = build_A(prof, eps, lambda, alpha, sigma0, 1, grid);
  cplx shift = cplx(alpha - sigma0 * std::pow(eps, 0.5), -lambda);
  MatrixXc recon = -(L.matrix - shift * MatrixXc::Identity(64, 64));
  CHECK((A.matrix - recon).norm() < 1e-10 * A.matrix.norm());
}

TEST_CASE("operators: A invertible for sinusoidal profile off spectrum") {
  auto grid = std::make_shared<Grid>(64);
  ShearProfile prof = make_profile("sinusoidal");
  DiscreteOperator A =
      build_A(prof, 0.01, /*lambda=*/0.3, /*alpha=*/0.5, 0.1, 1, grid);
  CHECK_FALSE(A.near_singular);
  VectorXc rhs = VectorXc::Ones(64);
  VectorXc sol = A.matrix.partialPivLu().solve(rhs);
  CHECK((A.matrix * sol - rhs).norm() < 1e-9);
}

TEST_CASE("operators: eps guard") {
  auto grid = std::make_shared<Grid>(64);
  ShearProfile prof = make_profile("sinusoidal");
  CHECK_THROWS_AS(build_L(prof, 0.0, grid), std::invalid_argument);
  CHECK_THROWS_AS(build_L(prof, -1.0, grid), std::invalid_argument);
}
