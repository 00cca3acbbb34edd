#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "shearmix/field.hpp"
#include "shearmix/profile.hpp"

namespace shearmix {

/// One fundamental-solution slice K(., z, lambda) of the Airy-type operator
/// -eps K'' + (alpha - sigma0 eps^{(N+1)/(N+3)}) K + i (b - lambda) K =
/// delta(y - z), with the envelope data the pointwise bounds are checked
/// against.
struct KernelSlice {
  double z = 0.0;
  double lambda = 0.0;
  double eps = 0.0;
  double alpha = 0.0;
  double sigma0 = 0.0;
  int N = 1;
  int z_index = 0;
  std::shared_ptr<const Grid> grid;
  std::vector<cplx> K;
  std::vector<cplx> dK;  ///< centered differences (the kink at z makes
                         ///< spectral differentiation ring globally)
  double amplitude = 0.0;       ///< A(z), diagonal envelope
  std::vector<double> decay;    ///< |y - z| / L(y, z, lambda), piecewise L
  double impulse_residual = 0.0;
  bool near_singular = false;
};

/// Dense LU solve of the kernel equation with discrete delta e_z / dy.
KernelSlice solve_kernel(const ShearProfile& profile, double eps,
                         double lambda, double alpha, double sigma0, int N,
                         int z_index, std::shared_ptr<const Grid> grid);

struct KernelSweep {
  std::vector<double> eps_list;     ///< spanning >= 2 decades, >= 3 values
  std::vector<double> z_list;      ///< snapped to the grid
  std::vector<double> lambda_list;
  double alpha = 0.0;
  double sigma0 = 0.1;
  int N = 1;
  int n = 1024;
};

/// Uniform-constant fit: largest c0 in {0.05, 0.10, ..., 1.0} whose
/// per-eps amplitude constant does not grow monotonically as eps shrinks,
/// with C = max pointwise ratio |K| / (A(z) e^{-c0 |y-z|/L}) over the whole
/// sweep and C_deriv the same for |dK| / (eps^{-1} e^{-c0 |y-z|/L}).
struct BoundFit {
  double C = 0.0;
  double c0 = 0.0;
  double C_deriv = 0.0;
  bool pass = false;
  int slices = 0;
  std::string worst_slice;
  std::map<double, double> C_per_eps;  ///< at the fitted c0
};
BoundFit verify_kernel_bounds(const ShearProfile& profile,
                              const KernelSweep& sweep);

/// LHS/RHS of the weighted gap inequality
///   || eps^{1/6} |B'|^{1/3} f || <= || |b - lambda|^{1/2} f ||
///                                   + || eps^{1/2} f' ||.
double gap_ratio(const ShearProfile& profile, const SpectralField& f,
                 double lambda, double eps, double sigma0);

/// Randomized check of the gap inequality over band-limited trial fields
/// (modes <= n/4) and lambda in [min b - 1, max b + 1]. Also reports the
/// largest sigma0 keeping the max ratio <= 1 on the same trials (bisection).
struct GapCheck {
  double max_ratio = 0.0;
  bool pass = false;
  double max_sigma0 = 0.0;
};
GapCheck spectral_gap_check(const ShearProfile& profile, double eps,
                            double sigma0, int trials, unsigned seed = 7,
                            int n = 512);

/// i (y - tau) f - eps f'' = g on [-L_dom, L_dom], Dirichlet endpoints,
/// second-order finite differences solved by the Thomas algorithm. tau is
/// the (real) wave speed the resolvent is evaluated at; for b(y) = y it is
/// absorbed by translation.
struct MonotoneSolution {
  std::vector<double> y;
  std::vector<cplx> f;
  double l2_f = 0.0;
  double l2_df = 0.0;
  double l2_g = 0.0;
  double boundary_mass_fraction = 0.0;  ///< |f|^2 mass within 1 of endpoints
  double domain = 0.0;
};
MonotoneSolution solve_monotone(double eps, double tau,
                                const std::function<cplx(double)>& g,
                                double L_dom = 20.0, int npts = 40001);

/// eps-sweep of the monotone-shear resolvent with Gaussian forcing localized
/// at the eps^{1/3} critical-layer scale (the saturating profile for the
/// bound); fits log ||f||/||g|| and log ||f'||/||g|| against log eps.
/// Enlarges the domain once if boundary mass exceeds 1%.
struct MonotoneFit {
  double slope_f = 0.0;
  double slope_df = 0.0;
  double domain = 0.0;
};
MonotoneFit monotone_resolvent_check(const std::vector<double>& eps_list,
                                     double tau = 0.0);

/// Laplace-representation reconstruction
///   f_*(t) = e^{-sigma0 eps^p t} / (2 pi) *
///            integral e^{-i lambda t}
///                     (-i lambda - sigma0 eps^p - L_eps)^{-1} f_in dlambda,
/// p = (N+1)/(N+3), real-lambda contour on [-extent, extent] with spacing
/// dlam, trapezoid quadrature. The O(1/lambda) resolvent tail is subtracted
/// analytically (f_in/(c - i lambda) integrates to e^{-c t} f_in) so the
/// truncated integral converges. Errors out if doubling the grid moves the
/// answer by more than 10x tol.
SpectralField laplace_reconstruct(const ShearProfile& profile, double eps,
                                  const SpectralField& f_in, double t,
                                  double sigma0, int N, double extent,
                                  double dlam, double tol = 1e-3,
                                  bool convergence_check = true);

}  // namespace shearmix
