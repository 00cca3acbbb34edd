#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <memory>

#include "shearmix/evolution.hpp"
#include "shearmix/spectral.hpp"

using namespace shearmix;

namespace {
constexpr double kPi = 3.14159265358979323846;

ShearProfile zero_profile() {
  return ShearProfile("zero", [](double, int) { return 0.0; }, 1, 0.5, false);
}

SpectralField test_datum(std::shared_ptr<const Grid> grid) {
  return SpectralField::from_function(grid, [](double y) {
    return cplx(std::cos(y) + 0.5 * std::sin(3 * y), 0.3 * std::cos(2 * y));
  });
}
}  // namespace

TEST_CASE("evolution: inviscid step is unitary") {
  auto grid = std::make_shared<Grid>(128);
  ShearProfile prof = make_profile("sinusoidal");
  SpectralField f = test_datum(grid);
  double n0 = f.l2_norm();
  SpectralField g = f;
  for (int i = 0; i < 50; ++i) g = strang_step(g, prof, 0.0, 1, 0.05);
  CHECK(g.l2_norm() == doctest::Approx(n0).epsilon(1e-12));
}

TEST_CASE("evolution: pure heat flow is exact per step") {
  auto grid = std::make_shared<Grid>(64);
  ShearProfile zero = zero_profile();
  double kappa = 0.3, dt = 0.2;
  int k = 2;
  SpectralField f = SpectralField::mode(grid, 3);
  SpectralField g = strang_step(f, zero, kappa, k, dt);
  double expect = std::exp(-kappa * (9.0 + k * k) * dt);
  CHECK((g.values()[0] / f.values()[0]).real() ==
        doctest::Approx(expect).epsilon(1e-13));
  CHECK(g.l2_norm() == doctest::Approx(expect * f.l2_norm()).epsilon(1e-13));
}

TEST_CASE("evolution: strang step is time-reversible when kappa = 0") {
  auto grid = std::make_shared<Grid>(64);
  ShearProfile prof = make_profile("degenerate2");
  SpectralField f = test_datum(grid);
  SpectralField g = strang_step(f, prof, 0.0, 1, 0.07);
  SpectralField back = strang_step(g, prof, 0.0, -1, 0.07);
  // reversing the sign of k conjugates the phase: equivalent to dt -> -dt
  CHECK((back - f).l2_norm() < 1e-12);
}

TEST_CASE("evolution: strang converges at second order to eigenprop") {
  auto grid = std::make_shared<Grid>(64);
  ShearProfile prof = make_profile("sinusoidal");
  double kappa = 1e-3, t = 1.0;
  SpectralField f = test_datum(grid);
  SpectralField exact = eigenprop(f, prof, kappa, 1, t);
  auto run = [&](double dt) {
    SpectralField g = f;
    int steps = (int)std::round(t / dt);
    for (int i = 0; i < steps; ++i) g = strang_step(g, prof, kappa, 1, dt);
    return (g - exact).l2_norm();
  };
  double e1 = run(0.02);
  double e2 = run(0.01);
  double ratio = e1 / e2;
  CHECK(ratio > 3.6);
  CHECK(ratio < 4.4);
  CHECK(run(1e-3) < 1e-4);
}

TEST_CASE("evolution: evolve records consistent diagnostics") {
  auto grid = std::make_shared<Grid>(128);
  ShearProfile prof = make_profile("sinusoidal");
  EvolveSpec spec;
  spec.profile = &prof;
  spec.kappa = 1e-2;
  spec.k = 1;
  spec.initial = test_datum(grid);
  spec.t_end = 2.0;
  spec.dt = 0.01;
  spec.cadence = 20;
  DiagnosticsSeries s = evolve(spec);
  REQUIRE(s.t.size() == 11);  // includes t = 0
  CHECK(s.t.front() == doctest::Approx(0.0));
  CHECK(s.t.back() == doctest::Approx(2.0));
  CHECK(s.l2[0] == doctest::Approx(spec.initial->l2_norm()).epsilon(1e-12));
  for (std::size_t i = 0; i + 1 < s.l2.size(); ++i)
    CHECK(s.l2[i + 1] <= s.l2[i] * (1 + 1e-12));  // dissipative
  // ell = l2 / h1dot, ellbar = hm1dot / l2
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    CHECK(s.ell[i] == doctest::Approx(s.l2[i] / s.h1dot[i]).epsilon(1e-12));
    CHECK(s.ellbar[i] ==
          doctest::Approx(s.hm1dot[i] / s.l2[i]).epsilon(1e-12));
  }
  REQUIRE(s.final_field.has_value());
  CHECK(s.final_field->l2_norm() == doctest::Approx(s.l2.back()));
  // cadence must divide the step count
  spec.cadence = 30;
  CHECK_THROWS_AS(evolve(spec), std::invalid_argument);
}

TEST_CASE("evolution: strang and eigenprop schemes agree through evolve") {
  auto grid = std::make_shared<Grid>(64);
  ShearProfile prof = make_profile("sinusoidal");
  EvolveSpec spec;
  spec.profile = &prof;
  spec.kappa = 1e-3;
  spec.k = 1;
  spec.initial = test_datum(grid);
  spec.t_end = 1.0;
  spec.dt = 1e-3;
  spec.cadence = 1000;
  DiagnosticsSeries a = evolve(spec);
  spec.scheme = "eigenprop";
  spec.dt = 0.25;
  spec.cadence = 4;
  DiagnosticsSeries b = evolve(spec);
  CHECK((*a.final_field - *b.final_field).l2_norm() < 1e-4);
}

TEST_CASE("evolution: enhanced time") {
  CHECK(enhanced_time(1e-4, 1) == doctest::Approx(std::pow(1e-4, -0.5)));
  CHECK(enhanced_time(1e-4, 2) == doctest::Approx(std::pow(1e-4, -0.6)));
}

TEST_CASE("evolution: slope fit recovers a synthetic power law") {
  DiagnosticsSeries s;
  for (int i = 0; i <= 200; ++i) {
    double t = 1.0 + 0.1 * i;
    s.t.push_back(t);
    s.l2.push_back(3.0 * std::pow(t, -0.5));
    s.h1dot.push_back(1.0);
    s.hm1.push_back(1.0);
    s.hm1dot.push_back(1.0);
    s.ell.push_back(1.0);
    s.ellbar.push_back(1.0);
    s.sup.push_back(1.0);
  }
  // kappa tiny so T_e is far beyond the window
  SlopeFit fit = fit_decay_exponent(s, "l2", 2.0, 15.0, 1e-12, 1);
  CHECK(fit.slope == doctest::Approx(-0.5).epsilon(1e-10));
  CHECK(fit.stderr_ < 1e-10);
  // window crossing T_e rejected (T_e = 10 for kappa = 1e-2, N = 1)
  CHECK_THROWS_AS(fit_decay_exponent(s, "l2", 2.0, 15.0, 1e-2, 1),
                  std::invalid_argument);
  // too few samples rejected
  CHECK_THROWS_AS(fit_decay_exponent(s, "l2", 2.0, 2.5, 1e-12, 1),
                  std::invalid_argument);
}

TEST_CASE("evolution: late rate recovers the slow eigenvalue") {
  ShearProfile prof = make_profile("sinusoidal");
  double kappa = 1e-2;
  SpectralWindow w = window_spectrum(prof, kappa, 1.0, 128);
  REQUIRE(!w.pairs.empty());
  const EigenPair& top = w.pairs.front();
  EvolveSpec spec;
  spec.profile = &prof;
  spec.kappa = kappa;
  spec.k = 1;
  spec.initial = top.phi;
  spec.t_end = 4 * enhanced_time(kappa, 1);
  spec.dt = spec.t_end / 400;
  spec.cadence = 4;
  spec.scheme = "eigenprop";
  DiagnosticsSeries s = evolve(spec);
  LateRate lr = fit_late_rate(s, kappa, 1, 1);
  // L_eps eigenvalue lambda with eps = kappa/k: decay rate of the mode
  // equation is Re lambda - kappa k^2, so the diffusion-stripped rate is
  // -Re lambda.
  CHECK(lr.rate == doctest::Approx(-top.lambda.real()).epsilon(1e-6));
  CHECK(lr.log_linear_residual < 1e-8);
  CHECK_FALSE(lr.warn_slow);
}

TEST_CASE("evolution: scale diagnostics are amplitude invariant") {
  auto grid = std::make_shared<Grid>(64);
  ShearProfile prof = make_profile("sinusoidal");
  EvolveSpec spec;
  spec.profile = &prof;
  spec.kappa = 1e-3;
  spec.k = 1;
  spec.initial = test_datum(grid);
  spec.t_end = 1.0;
  spec.dt = 0.01;
  spec.cadence = 25;
  DiagnosticsSeries a = evolve(spec);
  SpectralField scaled = test_datum(grid);
  scaled *= cplx(7.5, 0.0);
  spec.initial = scaled;
  DiagnosticsSeries b = evolve(spec);
  for (std::size_t i = 0; i < a.t.size(); ++i) {
    CHECK(a.ell[i] == doctest::Approx(b.ell[i]).epsilon(1e-10));
    CHECK(a.ellbar[i] == doctest::Approx(b.ellbar[i]).epsilon(1e-10));
  }
}

TEST_CASE("evolution: mean-free H^{-1} decays across decades") {
  auto grid = std::make_shared<Grid>(256);
  ShearProfile prof = make_profile("sinusoidal");
  EvolveSpec spec;
  spec.profile = &prof;
  spec.kappa = 1e-4;
  spec.k = 1;
  spec.initial = SpectralField::mode(grid, 1);
  spec.t_end = 100.0;
  spec.dt = 0.02;
  spec.cadence = 500;
  DiagnosticsSeries s = evolve(spec);
  double at10 = 0, at100 = 0;
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    if (std::abs(s.t[i] - 10.0) < 1e-9) at10 = s.hm1dot[i];
    if (std::abs(s.t[i] - 100.0) < 1e-9) at100 = s.hm1dot[i];
  }
  REQUIRE(at10 > 0);
  // t^{-1/2} mixing rate predicts at least a factor 10^{-1/2}; allow slack
  CHECK(at100 / at10 < std::pow(10.0, -0.4));
}
