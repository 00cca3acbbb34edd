#include "shearmix/expansion.hpp"

#include <cmath>
#include <stdexcept>

namespace shearmix {

namespace {

constexpr double kPi = 3.14159265358979323846;

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// expansion *= scalar, accumulate into dst (dst sized at least src)
void axpy(std::vector<cplx>& dst, const std::vector<cplx>& src, cplx a) {
  for (size_t i = 0; i < src.size(); ++i) dst[i] += a * src[i];
}

}  // namespace

double taylor_rescaled_Bk(const ShearProfile& profile, const CriticalPoint& cp,
                          int k) {
  if (cp.order != 1)
    throw std::invalid_argument("taylor_rescaled_Bk: critical point not simple");
  if (k < 1 || k > 6)
    throw std::invalid_argument("taylor_rescaled_Bk: k out of [1, 6]");
  double half_b2 = 0.5 * profile.derivative(cp.gamma, 2);
  return profile.derivative(cp.gamma, k + 2) / (factorial(k + 2) * half_b2);
}

ExpansionResult higher_order_expansion(const ShearProfile& profile,
                                       const CriticalPoint& cp, int alpha,
                                       int m) {
  if (cp.order != 1)
    throw std::invalid_argument(
        "higher_order_expansion: critical point not simple");
  if (m < 0 || m > 6)
    throw std::invalid_argument("higher_order_expansion: order out of [0, 6]");
  if (alpha < 0 || alpha + 3 * m + m + 2 > 60)
    throw std::invalid_argument("higher_order_expansion: coefficient overflow");

  const cplx i(0.0, 1.0);
  const double zeta0 = kPi / 4.0;

  std::vector<double> bk(m + 1, 0.0);
  for (int k = 1; k <= m; ++k) bk[k] = taylor_rescaled_Bk(profile, cp, k);

  ExpansionResult res;
  res.cp = cp;
  res.alpha = alpha;
  res.zeta0 = zeta0;
  res.lambda.assign(m + 1, cplx(0.0));
  res.lambda_hat.assign(m + 1, 0.0);
  res.phi_hat.resize(m + 1);
  res.lambda[0] = -(2.0 * alpha + 1.0) * std::exp(i * zeta0);

  const int size = alpha + 3 * m + 1;
  res.phi_hat[0].coeffs.assign(size, cplx(0.0));
  res.phi_hat[0].coeffs[alpha] = 1.0;
  res.phi_hat[0].level = alpha;

  for (int k = 1; k <= m; ++k) {
    // rhs lives in a slightly larger space; entries above `size` can only be
    // hit by B_j products whose solved components we keep below the cap
    std::vector<cplx> rhs(size + k + 2, cplx(0.0));
    for (int j = 1; j <= k; ++j) {
      axpy(rhs, res.phi_hat[k - j].coeffs, -res.lambda_hat[j]);
      if (bk[j] != 0.0) {
        HermiteExpansion prod = res.phi_hat[k - j];
        for (int p = 0; p < j + 2; ++p) prod = multiply_by_X(prod);
        axpy(rhs, prod.coeffs, -bk[j]);
      }
    }
    // solvability: the -Lambda_hat_k Phi_hat_0 term must cancel rhs[alpha]
    res.lambda_hat[k] = rhs[alpha].real();
    rhs[alpha] = 0.0;
    res.phi_hat[k].coeffs.assign(size, cplx(0.0));
    res.phi_hat[k].level = alpha;
    res.phi_hat[k].order = k;
    for (int beta = 0; beta < size; ++beta)
      if (beta != alpha) res.phi_hat[k].coeffs[beta] = rhs[beta] / (2.0 * (beta - alpha));
    res.lambda[k] =
        std::exp(-i * (double(k - 2) * zeta0 / 2.0)) * res.lambda_hat[k];
  }

  if (cp.sign_b2 < 0)
    for (auto& l : res.lambda) l = std::conj(l);
  return res;
}

cplx expansion_prediction(const ExpansionResult& result, double eps) {
  if (eps <= 0) throw std::invalid_argument("expansion_prediction: eps <= 0");
  const cplx i(0.0, 1.0);
  double l1 = result.cp.ell_tilde * std::pow(eps, 0.25);
  cplx s = 0.0;
  double w = 1.0;
  for (size_t k = 0; k < result.lambda.size(); ++k, w *= l1)
    s += w * result.lambda[k];
  return -i * result.cp.wave_value +
         std::sqrt(eps) / result.cp.tau_tilde * s;
}

}  // namespace shearmix
