#pragma once

#include <vector>

#include "shearmix/hermite.hpp"
#include "shearmix/profile.hpp"

namespace shearmix {

/// Output of the higher-order eigenvalue recursion at a simple (order-1)
/// critical point.
///
/// lambda[k] are the un-rotated series coefficients, already conjugated when
/// b''(gamma) < 0 (the minus branch is handled by conjugating the equation
/// and conjugating back). lambda_hat[k] are the real hat-variable values the
/// recursion actually produces; phi_hat[k] their eigenfunction corrections
/// over G_beta. zeta0 = pi/4 throughout; the hat factors are
/// e^{i(k-2) zeta0/2}.
struct ExpansionResult {
  std::vector<cplx> lambda;        ///< Lambda_k, k = 0..m
  std::vector<double> lambda_hat;  ///< hat-variable Lambda_hat_k (real)
  std::vector<HermiteExpansion> phi_hat;
  CriticalPoint cp;
  int alpha = 0;
  double zeta0 = 0.0;
};

/// Reduced Taylor coefficient of the order-k correction at cp:
/// B_k(Y) = [b^{(k+2)}(gamma) / ((k+2)! b''(gamma)/2)] Y^{k+2}.
/// Dividing by the signed b''/2 makes the quadratic base term exactly +Y^2
/// in the (possibly conjugated) inner equation; for b'' < 0 this is the
/// coefficient of the conjugated equation, matching the branch handling in
/// higher_order_expansion. Returns the coefficient of Y^{k+2}.
/// Requires cp.order == 1 and 1 <= k <= 6.
double taylor_rescaled_Bk(const ShearProfile& profile, const CriticalPoint& cp,
                          int k);

/// Hat-variable recursion to order m (<= 6):
///   Phi_hat_0 = G_alpha;
///   for k >= 1, rhs = -sum_{j=1..k} Lambda_hat_j Phi_hat_{k-j}
///                    - sum_{j=1..k} B_j(X) Phi_hat_{k-j},
///   Lambda_hat_k = rhs's G_alpha component (solvability), removed exactly;
///   Phi_hat_k[beta] = rhs[beta] / (2(beta - alpha)) for beta != alpha;
///   Lambda_k = e^{-i(k-2) pi/8} Lambda_hat_k, with Lambda_0 =
///   -(2 alpha + 1) e^{i pi/4}; the whole list is conjugated when
///   sign b''(gamma) < 0.
ExpansionResult higher_order_expansion(const ShearProfile& profile,
                                       const CriticalPoint& cp, int alpha,
                                       int m);

/// lambda_pred = -i b(gamma)
///             + eps^{1/2} tau_tilde^{-1} sum_k (ell_tilde eps^{1/4})^k
///               Lambda_k.
cplx expansion_prediction(const ExpansionResult& result, double eps);

}  // namespace shearmix
