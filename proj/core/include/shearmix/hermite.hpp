#pragma once

#include <complex>
#include <vector>

namespace shearmix {

using cplx = std::complex<double>;

/// L2-normalized Hermite function G_alpha(x) = H_alpha(x) e^{-x^2/2} /
/// (2^alpha alpha! sqrt(pi))^{1/2}, evaluated by the three-term recurrence on
/// normalized polynomials with the Gaussian weight applied in log space.
/// alpha <= 60.
double hermite_eval(int alpha, double x);
cplx hermite_eval(int alpha, cplx x);

/// Phi_{alpha,zeta}(Y) = e^{i zeta/4} G_alpha(e^{i zeta/2} Y), the
/// complex-harmonic-oscillator eigenfunction with eigenvalue
/// Lambda_{alpha,zeta} = -e^{i zeta}(2 alpha + 1). zeta in (-pi/2, pi/2).
cplx rotated_eigenfunction(int alpha, double zeta, cplx Y);

/// Gauss-Hermite rule: nodes x_i and total weights w_i such that
/// integral f(x) dx ~ sum_i w_i f(x_i) for f = (polynomial) * e^{-x^2}.
/// The Gaussian factor is folded into w_i (w_i = w_i^{GH} e^{x_i^2},
/// assembled in log space so large rules don't overflow).
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussHermiteRule gauss_hermite(int n);

/// Finite expansion sum_beta c_beta G_beta plus recursion metadata.
struct HermiteExpansion {
  std::vector<cplx> coeffs;  ///< c_beta, beta = 0..coeffs.size()-1
  int level = 0;             ///< alpha of the expansion this term belongs to
  int order = 0;             ///< k of the expansion term

  cplx eval(cplx x) const;
};

/// Coefficient-space ladder X * G_beta = sqrt((beta+1)/2) G_{beta+1}
///                                     + sqrt(beta/2) G_{beta-1}.
HermiteExpansion multiply_by_X(const HermiteExpansion& e);

}  // namespace shearmix
