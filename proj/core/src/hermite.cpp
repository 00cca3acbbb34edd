#include "shearmix/hermite.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace shearmix {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_level(int alpha) {
  if (alpha < 0 || alpha > 60)
    throw std::invalid_argument("hermite: alpha out of [0, 60]");
}

// Recurrence on the weightless normalized polynomials
// p_{beta+1} = x sqrt(2/(beta+1)) p_beta - sqrt(beta/(beta+1)) p_{beta-1},
// p_0 = pi^{-1/4}; G_alpha = p_alpha e^{-x^2/2}.
template <class T>
T hermite_poly(int alpha, T x) {
  T p_prev = T(0.0);
  T p = T(std::pow(kPi, -0.25));
  for (int beta = 0; beta < alpha; ++beta) {
    T p_next = x * std::sqrt(2.0 / (beta + 1)) * p -
               std::sqrt(double(beta) / (beta + 1)) * p_prev;
    p_prev = p;
    p = p_next;
  }
  return p;
}

}  // namespace

double hermite_eval(int alpha, double x) {
  check_level(alpha);
  double p = hermite_poly(alpha, x);
  if (p == 0.0) return 0.0;
  // weight in log space: e^{-x^2/2} underflows on its own past |x| ~ 38
  return std::copysign(std::exp(std::log(std::abs(p)) - 0.5 * x * x), p);
}

cplx hermite_eval(int alpha, cplx x) {
  check_level(alpha);
  return hermite_poly(alpha, x) * std::exp(-0.5 * x * x);
}

cplx rotated_eigenfunction(int alpha, double zeta, cplx Y) {
  if (!(zeta > -kPi / 2 && zeta < kPi / 2))
    throw std::invalid_argument("rotated_eigenfunction: zeta out of range");
  const cplx i(0.0, 1.0);
  return std::exp(i * (zeta / 4.0)) *
         hermite_eval(alpha, std::exp(i * (zeta / 2.0)) * Y);
}

GaussHermiteRule gauss_hermite(int n) {
  if (n < 1 || n > 512)
    throw std::invalid_argument("gauss_hermite: n out of [1, 512]");
  // Golub-Welsch on the symmetric Jacobi matrix, off-diagonal sqrt(k/2).
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    double off = std::sqrt(k / 2.0);
    J(k, k - 1) = off;
    J(k - 1, k) = off;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J, Eigen::EigenvaluesOnly);
  GaussHermiteRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int k = 0; k < n; ++k) {
    double x = es.eigenvalues()[k];
    rule.nodes[k] = x;
    // Christoffel form of the total weight, w = 1 / sum_{j<n} G_j(x)^2
    // (the e^{x^2} of the bare rule cancels against the Gaussian of the
    // weighted functions). The G_j recurrence is run with a tracked binary
    // exponent: G_0 underflows for outer nodes, but the sum is O(1).
    //
    // This beats the eigenvector-squared weight, whose first component sits
    // near the noise floor for outer nodes and halves the attainable
    // precision.
    double lead = -0.5 * x * x - 0.25 * std::log(kPi);
    int e2 = static_cast<int>(std::floor(lead / std::numbers::ln2));
    double g_prev = 0.0;                                      // G_{-1}
    double g = std::exp(lead - e2 * std::numbers::ln2);       // G_0 * 2^{-e2}
    double sum = g * g;                                       // * 2^{-2 e2}
    for (int j = 1; j < n; ++j) {
      double g_next = x * std::sqrt(2.0 / j) * g - std::sqrt((j - 1.0) / j) * g_prev;
      g_prev = g;
      g = g_next;
      if (std::abs(g) > 1e100) {
        g *= 0x1p-400;
        g_prev *= 0x1p-400;
        sum *= 0x1p-800;
        e2 += 400;
      }
      sum += g * g;
    }
    rule.weights[k] = 1.0 / std::ldexp(sum, 2 * e2);
  }
  return rule;
}

cplx HermiteExpansion::eval(cplx x) const {
  cplx s = 0.0;
  for (int beta = 0; beta < static_cast<int>(coeffs.size()); ++beta)
    if (coeffs[beta] != cplx(0.0)) s += coeffs[beta] * hermite_eval(beta, x);
  return s;
}

HermiteExpansion multiply_by_X(const HermiteExpansion& e) {
  const int n = static_cast<int>(e.coeffs.size());
  if (n + 1 > 61)
    throw std::invalid_argument("multiply_by_X: coefficient overflow");
  HermiteExpansion out;
  out.level = e.level;
  out.order = e.order;
  out.coeffs.assign(n + 1, cplx(0.0));
  for (int beta = 0; beta < n; ++beta) {
    out.coeffs[beta + 1] += e.coeffs[beta] * std::sqrt((beta + 1) / 2.0);
    if (beta > 0) out.coeffs[beta - 1] += e.coeffs[beta] * std::sqrt(beta / 2.0);
  }
  return out;
}

}  // namespace shearmix
