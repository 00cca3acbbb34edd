#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "shearmix/profile.hpp"

using namespace shearmix;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("profiles: sinusoidal catalog entry") {
  ShearProfile p = make_profile("sinusoidal");
  CHECK(p(0.3) == doctest::Approx(std::sin(0.3)).epsilon(1e-14));
  CHECK(p.derivative(0.3, 1) == doctest::Approx(std::cos(0.3)).epsilon(1e-14));
  CHECK(p.derivative(0.3, 4) == doctest::Approx(std::sin(0.3)).epsilon(1e-14));
  CHECK(p.max_order() == 1);

  const auto& cps = p.critical_points();
  REQUIRE(cps.size() == 2);
  CHECK(cps[0].gamma == doctest::Approx(kPi / 2).epsilon(1e-10));
  CHECK(cps[1].gamma == doctest::Approx(3 * kPi / 2).epsilon(1e-10));
  CHECK(cps[0].order == 1);
  CHECK(cps[0].wave_value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(cps[0].sign_b2 == -1);
  CHECK(cps[1].sign_b2 == 1);
  // |b''/2| = 1/2 at both: ell_tilde = 2^{1/4}, tau_tilde = 2^{1/2}
  CHECK(cps[0].ell_tilde == doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-9));
  CHECK(cps[0].tau_tilde == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("profiles: degenerate2 critical points") {
  ShearProfile p = make_profile("degenerate2");
  CHECK(p(0.7) ==
        doctest::Approx(std::sin(0.7) - 0.5 * std::sin(1.4)).epsilon(1e-14));
  const auto& cps = p.critical_points();
  REQUIRE(cps.size() == 3);
  // order-2 point at 0 (b'' also vanishes, b''' = 3), simple at 2 pi/3, 4 pi/3
  CHECK(cps[0].gamma == doctest::Approx(0.0).epsilon(1e-8));
  CHECK(cps[0].order == 2);
  CHECK(cps[0].lead_coeff == doctest::Approx(3.0).epsilon(1e-8));
  CHECK(cps[1].gamma == doctest::Approx(2 * kPi / 3).epsilon(1e-9));
  CHECK(cps[1].order == 1);
  CHECK(cps[1].wave_value ==
        doctest::Approx(3 * std::sqrt(3.0) / 4).epsilon(1e-10));
  CHECK(cps[2].gamma == doctest::Approx(4 * kPi / 3).epsilon(1e-9));
}

TEST_CASE("profiles: regularized derivative branches") {
  ShearProfile p = make_profile("sinusoidal");
  const double eps = 1e-4, sigma0 = 0.1;
  const double sig = p.sigma_sharp();
  // at the critical point: floor value 2 sigma0 eps^{1/4}
  CHECK(regularized_derivative(p, kPi / 2, eps, sigma0) ==
        doctest::Approx(2 * sigma0 * std::pow(eps, 0.25)).epsilon(1e-10));
  // far branch: 2 sigma0 |b'|
  CHECK(regularized_derivative(p, 0.0, eps, sigma0) ==
        doctest::Approx(2 * sigma0).epsilon(1e-10));
  // annulus interpolates between the branch endpoint values
  double near_val = 2 * sigma0 * (sig + std::pow(eps, 0.25));
  double far_val = 2 * sigma0 * std::abs(std::cos(kPi / 2 + 2 * sig));
  double mid = regularized_derivative(p, kPi / 2 + 1.5 * sig, eps, sigma0);
  CHECK(mid == doctest::Approx(0.5 * (near_val + far_val)).epsilon(1e-9));
  // strictly positive everywhere
  for (double y = 0; y < 2 * kPi; y += 0.01)
    CHECK(regularized_derivative(p, y, eps, sigma0) > 0);
}

TEST_CASE("profiles: local scales") {
  ShearProfile p = make_profile("sinusoidal");
  double kappa = 1e-4;
  // monotone point: T = (k|b'|)^{-2/3} kappa^{-1/3}
  auto s = local_scales(p, 0.0, kappa, 1);
  CHECK(s.T_loc == doctest::Approx(std::pow(kappa, -1.0 / 3.0)).epsilon(1e-9));
  CHECK(s.L_loc == doctest::Approx(std::pow(kappa, 1.0 / 3.0)).epsilon(1e-9));
  // annulus is deliberately undefined
  CHECK_THROWS_AS(local_scales(p, kPi / 2 + 1.5 * p.sigma_sharp(), kappa, 1),
                  std::invalid_argument);
}

TEST_CASE("profiles: custom fourier profile") {
  ShearProfile p = make_fourier_profile(
      "two-mode", {{1, 0.0, 1.0}, {2, 0.0, -0.5}});  // sin y - sin(2y)/2
  ShearProfile ref = make_profile("degenerate2");
  for (double y = 0; y < 2 * kPi; y += 0.37) {
    CHECK(p(y) == doctest::Approx(ref(y)).epsilon(1e-12));
    CHECK(p.derivative(y, 3) ==
          doctest::Approx(ref.derivative(y, 3)).epsilon(1e-12));
  }
  CHECK(p.critical_points().size() == 3);
}

TEST_CASE("profiles: circle distance") {
  CHECK(circle_distance(0.1, 2 * kPi - 0.1) == doctest::Approx(0.2));
  CHECK(circle_distance(1.0, 1.0) == doctest::Approx(0.0));
  CHECK(circle_distance(0.0, kPi) == doctest::Approx(kPi));
}
