#pragma once

#include <functional>
#include <memory>

#include "shearmix/grid.hpp"

namespace shearmix {

/// Complex periodic grid function for one x-Fourier mode, with lazily cached
/// Fourier coefficients and Fourier-side Sobolev norms.
class SpectralField {
 public:
  SpectralField(std::shared_ptr<const Grid> grid, std::vector<cplx> values);

  static SpectralField from_function(std::shared_ptr<const Grid> grid,
                                     const std::function<cplx(double)>& f);
  /// Single-mode field e^{i eta y}.
  static SpectralField mode(std::shared_ptr<const Grid> grid, int eta);

  const Grid& grid() const { return *grid_; }
  std::shared_ptr<const Grid> grid_ptr() const { return grid_; }
  int n() const { return grid_->n(); }

  const std::vector<cplx>& values() const { return values_; }
  std::vector<cplx>& mutable_values() {
    coeffs_valid_ = false;
    return values_;
  }
  const std::vector<cplx>& coeffs() const;

  SpectralField derivative(int order = 1) const;
  SpectralField shifted(double delta) const;  ///< f(y) -> f(y - delta)

  double l2_norm() const { return sobolev(0.0, false); }
  double sup_norm() const;

  /// Inhomogeneous H^s norm (2*pi sum (1+eta^2)^s |fhat|^2)^{1/2}.
  /// Homogeneous variant uses eta^2 and skips eta = 0; for s < 0 it requires
  /// |fhat(0)| < 1e-10 and throws std::invalid_argument otherwise.
  double sobolev(double s, bool homogeneous) const;
  /// Homogeneous multiplier norm over eta != 0 without the mean-zero guard
  /// (diagnostics use; the mean mode follows pure heat flow).
  double sobolev_meanfree(double s) const;

  cplx inner(const SpectralField& other) const;  ///< integral conj(this)*other
  cplx integral_product(const SpectralField& other) const;  ///< no conjugate

  SpectralField& operator*=(cplx c);
  SpectralField operator+(const SpectralField& o) const;
  SpectralField operator-(const SpectralField& o) const;

 private:
  std::shared_ptr<const Grid> grid_;
  std::vector<cplx> values_;
  mutable std::vector<cplx> coeffs_;
  mutable bool coeffs_valid_ = false;
};

}  // namespace shearmix
