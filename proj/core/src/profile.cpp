#include "shearmix/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace shearmix {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double y) {
  double r = std::fmod(y, kTwoPi);
  if (r < 0) r += kTwoPi;
  return r;
}

}  // namespace

double circle_distance(double a, double b) {
  double d = std::fabs(wrap(a) - wrap(b));
  return std::min(d, kTwoPi - d);
}

ShearProfile::ShearProfile(std::string name, Evaluator eval, int max_order,
                           double sigma_sharp, bool periodic)
    : name_(std::move(name)),
      eval_(std::move(eval)),
      max_order_(max_order),
      sigma_sharp_(sigma_sharp),
      periodic_(periodic) {
  if (periodic_) critical_points_ = find_critical_points(*this);
}

double ShearProfile::min_b() const {
  double m = eval_(0.0, 0);
  for (int i = 1; i < 4096; ++i) m = std::min(m, eval_(kTwoPi * i / 4096, 0));
  return m;
}

double ShearProfile::max_b() const {
  double m = eval_(0.0, 0);
  for (int i = 1; i < 4096; ++i) m = std::max(m, eval_(kTwoPi * i / 4096, 0));
  return m;
}

ShearProfile make_profile(const std::string& name) {
  if (name == "sinusoidal" || name == "sin") {
    auto eval = [](double y, int k) {
      // d^k/dy^k sin y = sin(y + k*pi/2)
      return std::sin(y + k * std::numbers::pi / 2);
    };
    return ShearProfile("sinusoidal", eval, 1, std::numbers::pi / 8);
  }
  if (name == "degenerate2") {
    auto eval = [](double y, int k) {
      double p = k * std::numbers::pi / 2;
      return std::sin(y + p) - 0.5 * std::pow(2.0, k) * std::sin(2 * y + p);
    };
    return ShearProfile("degenerate2", eval, 2, std::numbers::pi / 16);
  }
  if (name == "couette-truncated" || name == "couette") {
    auto eval = [](double y, int k) {
      if (k == 0) return y;
      if (k == 1) return 1.0;
      return 0.0;
    };
    return ShearProfile("couette-truncated", eval, 0, std::numbers::pi / 8,
                        /*periodic=*/false);
  }
  throw std::invalid_argument("unknown profile: " + name);
}

ShearProfile make_fourier_profile(const std::string& name,
                                  const std::vector<FourierTerm>& terms) {
  auto eval = [terms](double y, int k) {
    double s = 0.0;
    for (const auto& t : terms) {
      // d^k cos(e y) = e^k cos(e y + k pi/2), same shift for sin
      double p = k * std::numbers::pi / 2;
      double ek = std::pow(static_cast<double>(t.eta), k);
      s += ek * (t.a * std::cos(t.eta * y + p) + t.b * std::sin(t.eta * y + p));
    }
    return s;
  };
  ShearProfile probe(name, eval, 8, 1e-9);
  // tighten sigma_sharp to a quarter of the minimal separation if needed
  const auto& cps = probe.critical_points();
  double sep = kTwoPi;
  for (size_t i = 0; i < cps.size(); ++i)
    for (size_t j = i + 1; j < cps.size(); ++j)
      sep = std::min(sep, circle_distance(cps[i].gamma, cps[j].gamma));
  double ss = std::min(std::numbers::pi / 8, sep / 4.0 * 0.999);
  int max_order = 1;
  for (const auto& cp : cps) max_order = std::max(max_order, cp.order);
  return ShearProfile(name, eval, max_order, ss);
}

namespace {

// Bisection on g over [lo, hi] assuming a sign change, then Newton polish.
double refine_root(const std::function<double(double)>& g,
                   const std::function<double(double)>& gp, double lo,
                   double hi) {
  double flo = g(lo);
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = g(mid);
    if ((flo <= 0) == (fm <= 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-12) break;
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 60; ++it) {
    double d = gp(x);
    if (std::fabs(d) < 1e-14) break;
    double step = g(x) / d;
    x -= step;
    if (std::fabs(step) < 1e-15) break;
  }
  return x;
}

}  // namespace

std::vector<CriticalPoint> find_critical_points(const ShearProfile& profile,
                                                double tol) {
  if (tol <= 0 || tol > 1e-6)
    throw std::invalid_argument("find_critical_points: tol out of (0, 1e-6]");
  if (!profile.periodic()) {
    // couette-style monotone segments: b' never vanishes
    const int n = 4096;
    for (int i = 0; i < n; ++i) {
      if (std::fabs(profile.derivative(kTwoPi * i / n, 1)) < tol)
        throw std::runtime_error("non-periodic profile with vanishing b'");
    }
    return {};
  }

  const int n = 4096;
  auto bp = [&](double y) { return profile.derivative(y, 1); };
  auto bpp = [&](double y) { return profile.derivative(y, 2); };
  auto bppp = [&](double y) { return profile.derivative(y, 3); };

  std::vector<double> roots;
  auto push_root = [&](double r) {
    r = wrap(r);
    if (kTwoPi - r < 1e-7) r = 0.0;  // roots at the seam belong to 0
    for (double q : roots)
      if (circle_distance(q, r) < 1e-7) return;
    roots.push_back(r);
  };

  // Sign changes of b' catch odd-order critical points; even-order ones sit
  // at simple roots of b'' where b' also vanishes.
  for (int i = 0; i < n; ++i) {
    double a = kTwoPi * i / n, b = kTwoPi * (i + 1) / n;
    if ((bp(a) <= 0) != (bp(b) <= 0)) push_root(refine_root(bp, bpp, a, b));
    if ((bpp(a) <= 0) != (bpp(b) <= 0)) {
      double r = refine_root(bpp, bppp, a, b);
      if (std::fabs(bp(r)) < tol) push_root(r);
    }
  }
  std::sort(roots.begin(), roots.end());

  std::vector<CriticalPoint> out;
  for (double g : roots) {
    CriticalPoint cp;
    cp.gamma = g;
    cp.wave_value = profile(g);
    int m = 0;
    const int n_max = profile.max_order();
    for (int j = 1; j <= n_max + 1; ++j) {
      double d = profile.derivative(g, j);
      if (std::fabs(d) > tol) {
        m = j - 1;
        cp.lead_coeff = d;
        break;
      }
    }
    if (m == 0)
      throw std::runtime_error(
          "critical point order exceeds declared maximum at y=" +
          std::to_string(g));
    cp.order = m;
    if (m == 1) {
      double half = std::fabs(profile.derivative(g, 2)) / 2.0;
      cp.ell_tilde = std::pow(half, -0.25);
      cp.tau_tilde = std::pow(half, -0.5);
      cp.sign_b2 = profile.derivative(g, 2) > 0 ? 1 : -1;
    }
    out.push_back(cp);
  }

  for (size_t i = 0; i < out.size(); ++i)
    for (size_t j = i + 1; j < out.size(); ++j)
      if (circle_distance(out[i].gamma, out[j].gamma) <
          4.0 * profile.sigma_sharp())
        throw std::runtime_error(
            "critical points closer than 4*sigma_sharp separation");
  return out;
}

namespace {

// Nearest critical point and the (signed) offset from it.
const CriticalPoint* nearest_cp(const ShearProfile& profile, double y,
                                double* dist) {
  const CriticalPoint* best = nullptr;
  double bd = 1e300;
  for (const auto& cp : profile.critical_points()) {
    double d = circle_distance(y, cp.gamma);
    if (d < bd) {
      bd = d;
      best = &cp;
    }
  }
  *dist = bd;
  return best;
}

}  // namespace

double regularized_derivative(const ShearProfile& profile, double y,
                              double eps, double sigma0) {
  double d = 1e300;
  const CriticalPoint* cp =
      profile.periodic() ? nearest_cp(profile, y, &d) : nullptr;
  double far = 2.0 * sigma0 * std::fabs(profile.derivative(y, 1));
  if (cp == nullptr) return far;

  const double ss = profile.sigma_sharp();
  const int m = cp->order;
  const double floor = std::pow(eps, static_cast<double>(m) / (m + 3));
  if (d <= ss) return 2.0 * sigma0 * (std::pow(d, m) + floor);
  if (d >= 2.0 * ss) return far;

  // annulus: interpolate the near-branch value at d = sigma_sharp and the
  // far-branch value at the same-side point with d = 2*sigma_sharp
  double t = (d - ss) / ss;
  double v_near = 2.0 * sigma0 * (std::pow(ss, m) + floor);
  double off = wrap(y) - cp->gamma;
  if (off > std::numbers::pi) off -= kTwoPi;
  if (off < -std::numbers::pi) off += kTwoPi;
  double side = off >= 0 ? 1.0 : -1.0;
  double y_far = cp->gamma + side * 2.0 * ss;
  double v_far = 2.0 * sigma0 * std::fabs(profile.derivative(y_far, 1));
  return (1.0 - t) * v_near + t * v_far;
}

LocalScales local_scales(const ShearProfile& profile, double y, double kappa,
                         int k) {
  if (kappa <= 0 || k < 1)
    throw std::invalid_argument("local_scales: need kappa > 0, k >= 1");
  double d = 1e300;
  const CriticalPoint* cp =
      profile.periodic() ? nearest_cp(profile, y, &d) : nullptr;
  const double ss = profile.sigma_sharp();
  if (cp != nullptr && d <= ss) {
    const int m = cp->order;
    double lead = std::fabs(cp->lead_coeff) * k;
    double T = std::pow(lead, -2.0 / (m + 3)) *
               std::pow(kappa, -static_cast<double>(m + 1) / (m + 3));
    double L = std::pow(lead, -1.0 / (m + 3)) *
               std::pow(kappa, 1.0 / (m + 3));
    return {T, L};
  }
  if (cp != nullptr && d < 2.0 * profile.sigma_sharp())
    throw std::invalid_argument(
        "local_scales: ambiguous regime in the interpolation annulus");
  double s = k * std::fabs(profile.derivative(y, 1));
  double T = std::pow(s, -2.0 / 3.0) * std::pow(kappa, -1.0 / 3.0);
  double L = std::pow(s, -1.0 / 3.0) * std::pow(kappa, 1.0 / 3.0);
  return {T, L};
}

}  // namespace shearmix
