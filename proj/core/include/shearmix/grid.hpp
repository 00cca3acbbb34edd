#pragma once

#include <complex>
#include <memory>
#include <vector>

namespace shearmix {

using cplx = std::complex<double>;

/// Uniform periodic grid y_j = 2*pi*j/n with cached FFT plans.
///
/// Coefficient convention: fhat(eta) = (1/n) * sum_j f(y_j) e^{-i eta y_j},
/// eta in {-n/2, ..., n/2 - 1}. Parseval: ||f||_{L2}^2 = 2*pi sum |fhat|^2.
class Grid {
 public:
  explicit Grid(int n);
  ~Grid();
  Grid(const Grid&) = delete;
  Grid& operator=(const Grid&) = delete;

  int n() const { return n_; }
  double spacing() const;
  double point(int j) const;
  const std::vector<double>& points() const { return points_; }
  /// Integer wavenumber of coefficient slot k (FFT storage order).
  int wavenumber(int k) const { return wavenumbers_[k]; }
  const std::vector<int>& wavenumbers() const { return wavenumbers_; }

  /// Forward transform, 1/n normalization. Output in FFT storage order.
  std::vector<cplx> forward(const std::vector<cplx>& phys) const;
  std::vector<cplx> inverse(const std::vector<cplx>& coeffs) const;

 private:
  int n_;
  std::vector<double> points_;
  std::vector<int> wavenumbers_;
  struct Plans;
  std::unique_ptr<Plans> plans_;
};

}  // namespace shearmix
