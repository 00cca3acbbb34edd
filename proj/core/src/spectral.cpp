#include "shearmix/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "shearmix/hermite.hpp"

namespace shearmix {

namespace {

constexpr double kPi = 3.14159265358979323846;

double l2_of_vector(const Grid& grid, const VectorXc& v) {
  return std::sqrt(grid.spacing()) * v.norm();
}

SpectralField normalized_field(std::shared_ptr<const Grid> grid,
                               VectorXc v) {
  v /= l2_of_vector(*grid, v);
  return to_field(std::move(grid), v);
}

double residual_of(const DiscreteOperator& op, const VectorXc& v, cplx lambda) {
  return (op.matrix * v - lambda * v).norm() / v.norm();
}

}  // namespace

std::vector<EigenPair> dense_spectrum(const DiscreteOperator& op) {
  const int n = op.grid->n();
  if (n > 1024) throw std::invalid_argument("dense_spectrum: n > 1024");
  Eigen::ComplexEigenSolver<MatrixXc> es(op.matrix, true);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("dense_spectrum: QR iteration failed to converge");
  std::vector<EigenPair> out;
  out.reserve(n);
  for (int k = 0; k < n; ++k) {
    VectorXc v = es.eigenvectors().col(k);
    EigenPair p{es.eigenvalues()[k], normalized_field(op.grid, v),
                residual_of(op, v, es.eigenvalues()[k]), -1, -1, "dense"};
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end(), [](const EigenPair& a, const EigenPair& b) {
    return a.lambda.real() > b.lambda.real();
  });
  return out;
}

cplx asymptotic_seed(const ShearProfile& profile, const CriticalPoint& cp,
                     int alpha, double eps) {
  (void)profile;
  if (cp.order != 1)
    throw std::invalid_argument("asymptotic_seed: degenerate critical point");
  if (alpha < 0 || eps <= 0)
    throw std::invalid_argument("asymptotic_seed: bad alpha or eps");
  const cplx i(0.0, 1.0);
  cplx branch = std::exp(i * (cp.sign_b2 > 0 ? kPi / 4 : -kPi / 4));
  return -i * cp.wave_value -
         std::sqrt(eps) / cp.tau_tilde * (2.0 * alpha + 1.0) * branch;
}

EigenPair shift_invert_eigen(const DiscreteOperator& op, cplx shift,
                             double tol) {
  const int n = op.grid->n();
  const MatrixXc id = MatrixXc::Identity(n, n);
  std::mt19937 rng(12345);
  std::normal_distribution<double> gauss(0.0, 1.0);

  double perturb = 0.0;
  double base_scale = std::max(1e-8, 1e-3 * std::abs(shift));
  for (int attempt = 0; attempt <= 3; ++attempt) {
    cplx mu = shift + perturb;
    Eigen::PartialPivLU<MatrixXc> lu(op.matrix - mu * id);
    VectorXc v(n);
    for (int j = 0; j < n; ++j) v[j] = cplx(gauss(rng), gauss(rng));
    v.normalize();

    std::vector<double> history;
    cplx lambda = mu;
    for (int it = 0; it < 60; ++it) {
      VectorXc w = lu.solve(v);
      double wn = w.norm();
      if (!std::isfinite(wn) || wn == 0.0) break;  // shift hit an eigenvalue
      v = w / wn;
      lambda = v.dot(op.matrix * v);  // Eigen's dot conjugates the left arg
      double res = residual_of(op, v, lambda);
      if (res < tol)
        return {lambda, normalized_field(op.grid, v), res, -1, -1,
                "shift-invert"};
      history.push_back(res);
      // Rayleigh restart once the iterate has locked onto a single pair
      if (res < 1e-4 && std::abs(lambda - mu) > 10 * tol) {
        mu = lambda;
        lu.compute(op.matrix - mu * id);
      }
      // oscillation between two eigenvalues: residual stops decreasing
      if (history.size() >= 20) {
        double recent = *std::min_element(history.end() - 10, history.end());
        double before = *std::min_element(history.begin(), history.end() - 10);
        if (recent >= before) break;
      }
    }
    // bisected perturbation schedule: scale, scale/2, scale/4
    perturb = base_scale / double(1 << attempt);
  }
  throw std::runtime_error("shift_invert_eigen: no convergence after retries");
}

SpectralWindow window_spectrum(const ShearProfile& profile, double eps,
                               double q, int n) {
  if (q < 1.0) throw std::invalid_argument("window_spectrum: q < 1");
  const auto& cps = profile.critical_points();
  if (cps.empty())
    throw std::invalid_argument("window_spectrum: no critical points");
  for (const auto& cp : cps)
    if (cp.order != 1)
      throw std::invalid_argument(
          "window_spectrum: degenerate critical point out of scope");
  for (size_t a = 0; a < cps.size(); ++a)
    for (size_t b = a + 1; b < cps.size(); ++b)
      if (std::abs(cps[a].wave_value - cps[b].wave_value) <= 1e-8)
        throw std::invalid_argument(
            "window_spectrum: wave speeds not pairwise distinct");

  if (n == 0) n = eps >= 1e-3 ? 512 : 1024;
  auto grid = std::make_shared<Grid>(n);
  DiscreteOperator L = build_L(profile, eps, grid);

  struct Seed {
    cplx value;
    int j;
    int alpha;
  };
  std::vector<Seed> seeds;
  for (size_t j = 0; j < cps.size(); ++j) {
    for (int alpha = 0;; ++alpha) {
      if ((2.0 * alpha + 1.0) * std::cos(kPi / 4) / cps[j].tau_tilde > q + 1)
        break;
      seeds.push_back(
          {asymptotic_seed(profile, cps[j], alpha, eps), int(j), alpha});
    }
  }

  SpectralWindow win;
  win.q = q;
  win.eps = eps;
  for (const auto& seed : seeds) {
    EigenPair pair = shift_invert_eigen(L, seed.value);
    bool dup = false;
    for (const auto& existing : win.pairs)
      if (std::abs(existing.lambda - pair.lambda) <= 1e-8) {
        dup = true;
        if (existing.cp_index != seed.j || existing.alpha != seed.alpha)
          win.anomalies.push_back(
              "seeds (" + std::to_string(existing.cp_index) + "," +
              std::to_string(existing.alpha) + ") and (" +
              std::to_string(seed.j) + "," + std::to_string(seed.alpha) +
              ") collapsed onto one eigenvalue");
        break;
      }
    if (dup) continue;
    // label by nearest seed, accepted within half the level spacing
    double best = 1e300;
    for (const auto& other : seeds) {
      double d = std::abs(pair.lambda - other.value);
      if (d < best) {
        best = d;
        pair.cp_index = other.j;
        pair.alpha = other.alpha;
      }
    }
    if (best > std::sqrt(eps) / cps[pair.cp_index].tau_tilde) {
      pair.cp_index = -1;
      pair.alpha = -1;
    }
    if (pair.lambda.real() >= -q * std::sqrt(eps))
      win.pairs.push_back(std::move(pair));
  }
  std::sort(win.pairs.begin(), win.pairs.end(),
            [](const EigenPair& a, const EigenPair& b) {
              return a.lambda.real() > b.lambda.real();
            });
  return win;
}

double compare_eigenfunction(const EigenPair& pair, const ShearProfile& profile,
                             const CriticalPoint& cp, int alpha, double eps) {
  (void)profile;
  if (cp.order != 1)
    throw std::invalid_argument("compare_eigenfunction: degenerate cp");
  const double zeta = cp.sign_b2 > 0 ? kPi / 4 : -kPi / 4;
  const double ell = cp.ell_tilde * std::pow(eps, 0.25);
  auto grid = pair.phi.grid_ptr();
  SpectralField pred = SpectralField::from_function(grid, [&](double y) {
    double u = y - cp.gamma;
    // nearest periodic representative; the Gaussian kills the far tail
    u = std::remainder(u, 2 * kPi);
    return rotated_eigenfunction(alpha, zeta, u / ell);
  });
  pred *= cplx(1.0 / pred.l2_norm());
  SpectralField num = pair.phi;
  num *= cplx(1.0 / num.l2_norm());
  cplx ip = num.inner(pred);
  cplx phase = std::abs(ip) > 0 ? std::conj(ip) / std::abs(ip) : cplx(1.0);
  pred *= phase;
  return (num - pred).l2_norm();
}

SlowProjection slow_projection(const SpectralField& field,
                               const SpectralWindow& window) {
  SlowProjection out{{},
                     SpectralField(field.grid_ptr(),
                                   std::vector<cplx>(field.n(), cplx(0.0)))};
  for (const auto& pair : window.pairs) {
    cplx denom = pair.phi.integral_product(pair.phi);
    if (std::abs(denom) <= 1e-6)
      throw std::runtime_error(
          "slow_projection: near-defective pair, projection invalid");
    cplx c = field.integral_product(pair.phi) / denom;
    out.coeffs.push_back(c);
    SpectralField term = pair.phi;
    term *= c;
    out.reconstruction = out.reconstruction + term;
  }
  return out;
}

WaveReadout traveling_wave_readout(const EigenPair& pair) {
  return {-pair.lambda.imag(), pair.lambda.real()};
}

}  // namespace shearmix
