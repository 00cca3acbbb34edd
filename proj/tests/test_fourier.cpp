#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <memory>

#include "shearmix/field.hpp"

using namespace shearmix;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("fourier: transform round trip and coefficient convention") {
  auto grid = std::make_shared<Grid>(64);
  SpectralField f = SpectralField::mode(grid, 3);
  const auto& c = f.coeffs();
  for (int j = 0; j < 64; ++j) {
    double expect = grid->wavenumber(j) == 3 ? 1.0 : 0.0;
    CHECK(std::abs(c[j] - expect) < 1e-13);
  }
  // Parseval: ||e^{i3y}||_{L2}^2 = 2 pi
  CHECK(f.l2_norm() == doctest::Approx(std::sqrt(2 * kPi)).epsilon(1e-13));
}

TEST_CASE("fourier: derivative and shift") {
  auto grid = std::make_shared<Grid>(128);
  SpectralField f = SpectralField::from_function(
      grid, [](double y) { return cplx(std::sin(2 * y), std::cos(y)); });
  SpectralField df = f.derivative(1);
  for (int j = 0; j < 128; ++j) {
    double y = grid->point(j);
    cplx expect(2 * std::cos(2 * y), -std::sin(y));
    CHECK(std::abs(df.values()[j] - expect) < 1e-11);
  }
  // shift then differentiate == differentiate then shift
  SpectralField a = f.shifted(0.7).derivative(1);
  SpectralField b = f.derivative(1).shifted(0.7);
  CHECK((a - b).l2_norm() < 1e-12);
}

TEST_CASE("fourier: sobolev norms") {
  auto grid = std::make_shared<Grid>(64);
  SpectralField f2 = SpectralField::mode(grid, 2);
  CHECK(f2.sobolev(-1.0, false) ==
        doctest::Approx(std::sqrt(2 * kPi / 5.0)).epsilon(1e-13));
  SpectralField f1 = SpectralField::mode(grid, 1);
  CHECK(f1.sobolev(1.0, true) ==
        doctest::Approx(std::sqrt(2 * kPi)).epsilon(1e-13));
  // homogeneous negative norm requires mean-zero data
  SpectralField c = SpectralField::from_function(
      grid, [](double) { return cplx(1.0, 0.0); });
  CHECK_THROWS_AS(c.sobolev(-1.0, true), std::invalid_argument);
  CHECK(c.sobolev_meanfree(-1.0) == doctest::Approx(0.0));
  // monotone in s (inhomogeneous family)
  SpectralField g = SpectralField::from_function(grid, [](double y) {
    return cplx(std::cos(y) + 0.3 * std::sin(5 * y), 0.1);
  });
  double prev = 0;
  for (double s : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
    double cur = g.sobolev(s, false);
    CHECK(cur >= prev);
    prev = cur;
  }
  // Cauchy-Schwarz in multiplier form
  CHECK(g.sobolev(-1.0, false) * g.sobolev(1.0, false) >=
        g.l2_norm() * g.l2_norm() * (1 - 1e-12));
}

TEST_CASE("fourier: inner products") {
  auto grid = std::make_shared<Grid>(64);
  SpectralField f = SpectralField::mode(grid, 1);
  // integral of conj(e^{iy}) e^{iy} = 2 pi; integral of (e^{iy})^2 = 0
  CHECK(std::abs(f.inner(f) - cplx(2 * kPi)) < 1e-12);
  CHECK(std::abs(f.integral_product(f)) < 1e-12);
}
