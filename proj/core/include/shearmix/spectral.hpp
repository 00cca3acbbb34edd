#pragma once

#include <string>
#include <vector>

#include "shearmix/operators.hpp"

namespace shearmix {

/// Converged eigenpair of a discrete L_eps, L2-normalized, with the
/// (critical point, level) label when a nearby asymptotic seed claims it.
struct EigenPair {
  cplx lambda;
  SpectralField phi;
  double residual = 0.0;  ///< ||L phi - lambda phi|| / ||phi||
  int cp_index = -1;      ///< j, or -1 when unmatched
  int alpha = -1;
  std::string method;  ///< "dense" or "shift-invert"
};

/// Slow part of the spectrum: Re lambda >= -q eps^{1/2}.
struct SpectralWindow {
  double q = 0.0;
  double eps = 0.0;
  std::vector<EigenPair> pairs;  ///< sorted by Re lambda descending
  std::vector<std::string> anomalies;
};

/// Full spectrum by dense QR (Eigen's complex Schur path), eigenvectors
/// included. Sorted by Re lambda descending. n <= 1024.
std::vector<EigenPair> dense_spectrum(const DiscreteOperator& op);

/// Leading-order eigenvalue prediction at a simple critical point:
/// lambda ~ -i b(gamma) - eps^{1/2} tau_tilde^{-1} (2 alpha + 1) e^{s i pi/4},
/// s = sign b''(gamma). Rejects degenerate critical points.
cplx asymptotic_seed(const ShearProfile& profile, const CriticalPoint& cp,
                     int alpha, double eps);

/// Inverse iteration with Rayleigh-quotient restarts, converging to the
/// eigenvalue nearest the shift. Residual oscillation triggers a bisected
/// seed perturbation, up to 3 retries.
EigenPair shift_invert_eigen(const DiscreteOperator& op, cplx shift,
                             double tol = 1e-10);

/// Slow spectral window of L_eps for a periodic profile: seeds shift-invert
/// at every (j, alpha) with (2 alpha + 1) cos(pi/4) / tau_tilde_j <= q + 1,
/// deduplicates, labels pairs by nearest seed within half the level spacing,
/// and filters Re lambda >= -q eps^{1/2}.
/// n = 0 picks the grid automatically. Requires simple critical points with
/// pairwise-distinct wave speeds.
SpectralWindow window_spectrum(const ShearProfile& profile, double eps,
                               double q, int n = 0);

/// L2 distance between the normalized numeric eigenfunction and the rotated
/// Gaussian prediction Phi_alpha^{s}((y - gamma)/(ell_tilde eps^{1/4})),
/// after optimal phase alignment.
double compare_eigenfunction(const EigenPair& pair, const ShearProfile& profile,
                             const CriticalPoint& cp, int alpha, double eps);

/// Non-self-adjoint projection onto the window's slow modes:
/// c_j = (integral f phi_j) / (integral phi_j^2), no conjugation.
/// Throws if any |integral phi^2| <= 1e-6 (near-defective pair).
struct SlowProjection {
  std::vector<cplx> coeffs;
  SpectralField reconstruction;
};
SlowProjection slow_projection(const SpectralField& field,
                               const SpectralWindow& window);

/// Per-mode traveling-wave data: speed = -Im lambda, decay = Re lambda.
struct WaveReadout {
  double speed;
  double decay;
};
WaveReadout traveling_wave_readout(const EigenPair& pair);

}  // namespace shearmix
