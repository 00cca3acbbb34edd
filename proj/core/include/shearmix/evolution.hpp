#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shearmix/field.hpp"
#include "shearmix/profile.hpp"

namespace shearmix {

/// One run of the mode equation
///   d/dt f + i k b(y) f = kappa (d^2/dy^2 - k^2) f.
struct EvolveSpec {
  const ShearProfile* profile = nullptr;
  double kappa = 0.0;  ///< 0 allowed (inviscid reference)
  int k = 1;
  std::optional<SpectralField> initial;
  double t_end = 1.0;
  double dt = 0.01;
  int cadence = 1;  ///< record every `cadence` steps; must divide step count
  std::string scheme = "strang";  ///< "strang" or "eigenprop"
};

/// Mixing diagnostics sampled along a run. ell = L2/H1dot (Batchelor scale),
/// ellbar = Hm1dot/L2 (inverse filamentation scale).
struct DiagnosticsSeries {
  std::vector<double> t;
  std::vector<double> l2;
  std::vector<double> h1dot;
  std::vector<double> hm1;
  std::vector<double> hm1dot;
  std::vector<double> ell;
  std::vector<double> ellbar;
  std::vector<double> sup;
  std::optional<SpectralField> final_field;
};

/// One Strang step: exact advection half-step e^{-i k b dt/2} in physical
/// space, exact heat multiplier e^{-kappa (eta^2 + k^2) dt} in Fourier space,
/// advection half-step again. Second order, unconditionally stable,
/// norm-dissipative.
SpectralField strang_step(const SpectralField& field,
                          const ShearProfile& profile, double kappa, int k,
                          double dt);

/// Exact propagator by dense eigendecomposition of
/// kappa (D^2 - k^2) - i k diag(b). Oracle path, n <= 1024.
SpectralField eigenprop(const SpectralField& initial,
                        const ShearProfile& profile, double kappa, int k,
                        double t);

/// Run the spec and sample diagnostics. Aborts (throws) on NaN/Inf norms.
DiagnosticsSeries evolve(const EvolveSpec& spec);

/// Enhanced-dissipation time scale kappa^{-(N+1)/(N+3)}.
double enhanced_time(double kappa, int N);

/// Least-squares slope of log ||f||_{tag} vs log t on [t0, t1].
/// tag is one of l2, h1dot, hm1, hm1dot, ell, ellbar, sup.
/// Requires >= 10 samples in the window and rejects windows crossing the
/// enhanced-dissipation time of (kappa, N).
struct SlopeFit {
  double slope;
  double stderr_;
};
SlopeFit fit_decay_exponent(const DiagnosticsSeries& series,
                            const std::string& tag, double t0, double t1,
                            double kappa, int N);

/// e-fold rate of ||f||_{L2} e^{kappa k^2 t} on [2 T_e, t_end] (diffusive
/// factor removed); warn_slow is set when the initial slow-mode content is
/// too small (< 1e-8) for the rate to reflect the slow eigenvalue.
struct LateRate {
  double rate;
  double log_linear_residual;  ///< relative rms of the log-linear fit
  bool warn_slow = false;
};
LateRate fit_late_rate(const DiagnosticsSeries& series, double kappa, int k,
                       int N, double initial_slow_mass = 1.0);

}  // namespace shearmix
