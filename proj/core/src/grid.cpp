#include "shearmix/grid.hpp"

#include <fftw3.h>

#include <mutex>
#include <numbers>
#include <stdexcept>

namespace shearmix {

namespace {
// FFTW planning is not thread-safe; execution on distinct buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct Grid::Plans {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
  }
};

Grid::Grid(int n) : n_(n), plans_(std::make_unique<Plans>()) {
  if (n < 64 || (n & (n - 1)) != 0)
    throw std::invalid_argument("Grid: n must be a power of two >= 64");
  points_.resize(n_);
  wavenumbers_.resize(n_);
  for (int j = 0; j < n_; ++j) points_[j] = 2.0 * std::numbers::pi * j / n_;
  for (int k = 0; k < n_; ++k) wavenumbers_[k] = k < n_ / 2 ? k : k - n_;

  std::vector<cplx> buf(n_);
  std::lock_guard lock(planner_mutex());
  auto* p = reinterpret_cast<fftw_complex*>(buf.data());
  plans_->fwd = fftw_plan_dft_1d(n_, p, p, FFTW_FORWARD, FFTW_ESTIMATE);
  plans_->bwd = fftw_plan_dft_1d(n_, p, p, FFTW_BACKWARD, FFTW_ESTIMATE);
}

Grid::~Grid() = default;

double Grid::spacing() const { return 2.0 * std::numbers::pi / n_; }
double Grid::point(int j) const { return points_[j]; }

std::vector<cplx> Grid::forward(const std::vector<cplx>& phys) const {
  if (static_cast<int>(phys.size()) != n_)
    throw std::invalid_argument("forward: size mismatch");
  std::vector<cplx> out = phys;
  auto* p = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(plans_->fwd, p, p);
  for (auto& c : out) c /= static_cast<double>(n_);
  return out;
}

std::vector<cplx> Grid::inverse(const std::vector<cplx>& coeffs) const {
  if (static_cast<int>(coeffs.size()) != n_)
    throw std::invalid_argument("inverse: size mismatch");
  std::vector<cplx> out = coeffs;
  auto* p = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(plans_->bwd, p, p);
  return out;
}

}  // namespace shearmix
