#include "shearmix/field.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace shearmix {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

SpectralField::SpectralField(std::shared_ptr<const Grid> grid,
                             std::vector<cplx> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != grid_->n())
    throw std::invalid_argument("SpectralField: size mismatch");
}

SpectralField SpectralField::from_function(
    std::shared_ptr<const Grid> grid, const std::function<cplx(double)>& f) {
  std::vector<cplx> v(grid->n());
  for (int j = 0; j < grid->n(); ++j) v[j] = f(grid->point(j));
  return SpectralField(std::move(grid), std::move(v));
}

SpectralField SpectralField::mode(std::shared_ptr<const Grid> grid, int eta) {
  return from_function(std::move(grid), [eta](double y) {
    return std::exp(cplx(0.0, eta * y));
  });
}

const std::vector<cplx>& SpectralField::coeffs() const {
  if (!coeffs_valid_) {
    coeffs_ = grid_->forward(values_);
    coeffs_valid_ = true;
  }
  return coeffs_;
}

SpectralField SpectralField::derivative(int order) const {
  std::vector<cplx> c = coeffs();
  for (int k = 0; k < grid_->n(); ++k) {
    cplx ieta(0.0, static_cast<double>(grid_->wavenumber(k)));
    c[k] *= std::pow(ieta, order);
  }
  return SpectralField(grid_, grid_->inverse(c));
}

SpectralField SpectralField::shifted(double delta) const {
  std::vector<cplx> c = coeffs();
  for (int k = 0; k < grid_->n(); ++k)
    c[k] *= std::exp(cplx(0.0, -grid_->wavenumber(k) * delta));
  return SpectralField(grid_, grid_->inverse(c));
}

double SpectralField::sup_norm() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

double SpectralField::sobolev(double s, bool homogeneous) const {
  const auto& c = coeffs();
  if (homogeneous && s < 0 && std::abs(c[0]) >= 1e-10)
    throw std::invalid_argument(
        "homogeneous negative-order norm of a non-mean-zero field");
  double sum = 0.0;
  for (int k = 0; k < grid_->n(); ++k) {
    double e2 = static_cast<double>(grid_->wavenumber(k)) *
                grid_->wavenumber(k);
    if (homogeneous) {
      if (grid_->wavenumber(k) == 0) continue;
      sum += std::pow(e2, s) * std::norm(c[k]);
    } else {
      sum += std::pow(1.0 + e2, s) * std::norm(c[k]);
    }
  }
  return std::sqrt(kTwoPi * sum);
}

double SpectralField::sobolev_meanfree(double s) const {
  const auto& c = coeffs();
  double sum = 0.0;
  for (int k = 0; k < grid_->n(); ++k) {
    if (grid_->wavenumber(k) == 0) continue;
    double e2 = static_cast<double>(grid_->wavenumber(k)) *
                grid_->wavenumber(k);
    sum += std::pow(e2, s) * std::norm(c[k]);
  }
  return std::sqrt(kTwoPi * sum);
}

cplx SpectralField::inner(const SpectralField& other) const {
  cplx s = 0.0;
  for (int j = 0; j < grid_->n(); ++j)
    s += std::conj(values_[j]) * other.values_[j];
  return s * grid_->spacing();
}

cplx SpectralField::integral_product(const SpectralField& other) const {
  cplx s = 0.0;
  for (int j = 0; j < grid_->n(); ++j) s += values_[j] * other.values_[j];
  return s * grid_->spacing();
}

SpectralField& SpectralField::operator*=(cplx c) {
  for (auto& v : values_) v *= c;
  coeffs_valid_ = false;
  return *this;
}

SpectralField SpectralField::operator+(const SpectralField& o) const {
  std::vector<cplx> v(values_);
  for (int j = 0; j < grid_->n(); ++j) v[j] += o.values_[j];
  return SpectralField(grid_, std::move(v));
}

SpectralField SpectralField::operator-(const SpectralField& o) const {
  std::vector<cplx> v(values_);
  for (int j = 0; j < grid_->n(); ++j) v[j] -= o.values_[j];
  return SpectralField(grid_, std::move(v));
}

}  // namespace shearmix
