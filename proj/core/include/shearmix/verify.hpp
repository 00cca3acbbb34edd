#pragma once

#include <string>
#include <vector>

namespace shearmix {

/// One acceptance experiment outcome: measured values and the pinned
/// tolerances live together in `detail` so the pass/fail line is
/// self-explanatory.
struct AcceptanceRecord {
  std::string id;
  bool pass = false;
  std::string detail;
  double runtime_seconds = 0.0;
};

AcceptanceRecord ac1();   ///< H^-1 mixing slope, sinusoidal (N = 1)
AcceptanceRecord ac2();   ///< H^-1 mixing slope, degenerate2 (N = 2)
AcceptanceRecord ac3();   ///< enhanced-dissipation rate vs kappa exponent
AcceptanceRecord ac4();   ///< eigenvalue remainder <= C eps^{3/4}
AcceptanceRecord ac5();   ///< eigenfunction L2 convergence slope
AcceptanceRecord ac6();   ///< ell and ellbar plateau exponents
AcceptanceRecord ac7();   ///< traveling-wave projection and speeds
AcceptanceRecord ac8();   ///< higher-order expansion vs dense oracle
AcceptanceRecord ac9();   ///< kernel bound sweep (fs2 + fs4)
AcceptanceRecord ac10();  ///< monotone resolvent slopes + spectral gap
AcceptanceRecord ac11();  ///< exact-identity suite

/// All criteria in order; `only` restricts to matching ids when non-empty.
std::vector<AcceptanceRecord> run_acceptance(
    const std::vector<std::string>& only = {});

}  // namespace shearmix
