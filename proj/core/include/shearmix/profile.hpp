#pragma once

#include <functional>
#include <string>
#include <vector>

namespace shearmix {

/// A critical point gamma of the shear b, classified by its order m:
/// b'(gamma) = ... = b^(m)(gamma) = 0, b^(m+1)(gamma) != 0.
struct CriticalPoint {
  double gamma = 0.0;       ///< location in [0, 2*pi)
  int order = 1;            ///< m
  double wave_value = 0.0;  ///< b(gamma)
  double lead_coeff = 0.0;  ///< b^(m+1)(gamma)
  /// Inner length scale |b''(gamma)/2|^{-1/4}; populated when order == 1.
  double ell_tilde = 0.0;
  /// Inner time scale |b''(gamma)/2|^{-1/2}; populated when order == 1.
  double tau_tilde = 0.0;
  int sign_b2 = 0;  ///< sign of b''(gamma) (0 when order > 1)
};

/// Shear velocity profile b : T -> R with exact derivative evaluators.
///
/// Built-in profiles carry closed-form derivatives of every order; custom
/// profiles are truncated Fourier series differentiated termwise. Immutable
/// after construction, safe for concurrent reads.
class ShearProfile {
 public:
  /// evaluator(y, order): order = 0 is b itself.
  using Evaluator = std::function<double(double, int)>;

  ShearProfile(std::string name, Evaluator eval, int max_order,
               double sigma_sharp, bool periodic = true);

  double operator()(double y) const { return eval_(y, 0); }
  double derivative(double y, int order) const { return eval_(y, order); }

  const std::string& name() const { return name_; }
  /// Declared maximal order of vanishing N (Assumption-style bound).
  int max_order() const { return max_order_; }
  double sigma_sharp() const { return sigma_sharp_; }
  bool periodic() const { return periodic_; }

  /// Critical points on [0, 2*pi), sorted by location. Computed lazily at
  /// construction for periodic profiles.
  const std::vector<CriticalPoint>& critical_points() const {
    return critical_points_;
  }

  double min_b() const;
  double max_b() const;

 private:
  std::string name_;
  Evaluator eval_;
  int max_order_;
  double sigma_sharp_;
  bool periodic_;
  std::vector<CriticalPoint> critical_points_;
};

/// Catalog of named profiles:
///   "sinusoidal"       b(y) = sin y
///   "degenerate2"      b(y) = sin y - sin(2y)/2
///   "couette-truncated" b(y) = y (non-periodic, Appendix-style tests only)
ShearProfile make_profile(const std::string& name);

/// Custom profile from Fourier terms a*cos(eta y) + b*sin(eta y).
struct FourierTerm {
  int eta;
  double a;
  double b;
};
ShearProfile make_fourier_profile(const std::string& name,
                                  const std::vector<FourierTerm>& terms);

/// All roots of b' on [0, 2*pi) with classified order, sorted by location.
/// Throws std::runtime_error if a root's order exceeds the profile's declared
/// maximum or two roots violate the 4*sigma_sharp separation.
std::vector<CriticalPoint> find_critical_points(const ShearProfile& profile,
                                                double tol = 1e-8);

/// Regularized derivative |B'(y)|: strictly positive surrogate for |b'(y)|.
/// Near-critical branch 2*sigma0*(|y-gamma|^m + eps^{m/(m+3)}) within
/// sigma_sharp, far branch 2*sigma0*|b'(y)| beyond 2*sigma_sharp, linear
/// interpolation of the two branch values on the annulus.
double regularized_derivative(const ShearProfile& profile, double y,
                              double eps, double sigma0 = 0.1);

struct LocalScales {
  double T_loc;
  double L_loc;
};

/// Dimensional-analysis local mixing scales. Away from critical points:
/// T = (k|b'|)^{-2/3} kappa^{-1/3}, L = (k|b'|)^{-1/3} kappa^{1/3}.
/// Within sigma_sharp of a critical point of order m the critical-point
/// formulas apply. Throws std::invalid_argument in the interpolation annulus.
LocalScales local_scales(const ShearProfile& profile, double y, double kappa,
                         int k);

/// Geodesic distance on the 2*pi circle.
double circle_distance(double a, double b);

}  // namespace shearmix
