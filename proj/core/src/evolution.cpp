#include "shearmix/evolution.hpp"

#include <cmath>
#include <stdexcept>

#include "shearmix/operators.hpp"

namespace shearmix {

namespace {

std::vector<cplx> advection_phase(const Grid& grid, const ShearProfile& profile,
                                  int k, double half_dt) {
  std::vector<cplx> phase(grid.n());
  for (int j = 0; j < grid.n(); ++j)
    phase[j] = std::exp(cplx(0.0, -k * profile(grid.point(j)) * half_dt));
  return phase;
}

std::vector<double> heat_multiplier(const Grid& grid, double kappa, int k,
                                    double dt) {
  std::vector<double> mult(grid.n());
  for (int j = 0; j < grid.n(); ++j) {
    double eta = grid.wavenumber(j);
    mult[j] = std::exp(-kappa * (eta * eta + double(k) * k) * dt);
  }
  return mult;
}

const std::vector<double>& series_tag(const DiagnosticsSeries& s,
                                      const std::string& tag) {
  if (tag == "l2") return s.l2;
  if (tag == "h1dot") return s.h1dot;
  if (tag == "hm1") return s.hm1;
  if (tag == "hm1dot") return s.hm1dot;
  if (tag == "ell") return s.ell;
  if (tag == "ellbar") return s.ellbar;
  if (tag == "sup") return s.sup;
  throw std::invalid_argument("unknown diagnostics tag: " + tag);
}

struct LinFit {
  double slope;
  double intercept;
  double stderr_;
  double rel_residual;
};

LinFit least_squares(const std::vector<double>& x,
                     const std::vector<double>& y) {
  const int n = static_cast<int>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double denom = n * sxx - sx * sx;
  double slope = (n * sxy - sx * sy) / denom;
  double intercept = (sy - slope * sx) / n;
  double ss = 0, yms = 0, ymean = sy / n;
  for (int i = 0; i < n; ++i) {
    double r = y[i] - slope * x[i] - intercept;
    ss += r * r;
    yms += (y[i] - ymean) * (y[i] - ymean);
  }
  double stderr_ =
      n > 2 ? std::sqrt(ss / (n - 2) / (sxx - sx * sx / n)) : 0.0;
  double rel = yms > 0 ? std::sqrt(ss / yms) : 0.0;
  return {slope, intercept, stderr_, rel};
}

void record(DiagnosticsSeries& out, double t, const SpectralField& f) {
  double l2 = f.l2_norm();
  double h1dot = f.sobolev_meanfree(1.0);
  double hm1dot = f.sobolev_meanfree(-1.0);
  double hm1 = f.sobolev(-1.0, false);
  double sup = f.sup_norm();
  for (double v : {l2, h1dot, hm1, hm1dot, sup})
    if (!std::isfinite(v))
      throw std::runtime_error("evolve: non-finite norm at t = " +
                               std::to_string(t));
  out.t.push_back(t);
  out.l2.push_back(l2);
  out.h1dot.push_back(h1dot);
  out.hm1.push_back(hm1);
  out.hm1dot.push_back(hm1dot);
  out.ell.push_back(h1dot > 0 ? l2 / h1dot : 0.0);
  out.ellbar.push_back(l2 > 0 ? hm1dot / l2 : 0.0);
  out.sup.push_back(sup);
}

}  // namespace

SpectralField strang_step(const SpectralField& field,
                          const ShearProfile& profile, double kappa, int k,
                          double dt) {
  if (kappa < 0) throw std::invalid_argument("strang_step: kappa < 0");
  const Grid& grid = field.grid();
  auto phase = advection_phase(grid, profile, k, dt / 2);
  auto heat = heat_multiplier(grid, kappa, k, dt);

  std::vector<cplx> v = field.values();
  for (int j = 0; j < grid.n(); ++j) v[j] *= phase[j];
  auto c = grid.forward(v);
  for (int j = 0; j < grid.n(); ++j) c[j] *= heat[j];
  v = grid.inverse(c);
  for (int j = 0; j < grid.n(); ++j) v[j] *= phase[j];
  return SpectralField(field.grid_ptr(), std::move(v));
}

SpectralField eigenprop(const SpectralField& initial,
                        const ShearProfile& profile, double kappa, int k,
                        double t) {
  auto grid = initial.grid_ptr();
  const int n = grid->n();
  if (n > 1024) throw std::invalid_argument("eigenprop: n > 1024");
  MatrixXc M = kappa * second_derivative_matrix(*grid);
  for (int j = 0; j < n; ++j)
    M(j, j) += -kappa * double(k) * k - cplx(0.0, k * profile(grid->point(j)));
  Eigen::ComplexEigenSolver<MatrixXc> es(M, true);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigenprop: eigendecomposition failed");
  VectorXc c = es.eigenvectors().partialPivLu().solve(to_vector(initial));
  for (int j = 0; j < n; ++j) c[j] *= std::exp(es.eigenvalues()[j] * t);
  return to_field(grid, es.eigenvectors() * c);
}

DiagnosticsSeries evolve(const EvolveSpec& spec) {
  if (!spec.profile || !spec.initial)
    throw std::invalid_argument("evolve: missing profile or initial data");
  if (spec.dt <= 0 || spec.dt > spec.t_end)
    throw std::invalid_argument("evolve: need 0 < dt <= t_end");
  const long nsteps = std::lround(spec.t_end / spec.dt);
  if (std::abs(nsteps * spec.dt - spec.t_end) > 1e-9 * spec.t_end)
    throw std::invalid_argument("evolve: dt does not divide t_end");
  if (spec.cadence < 1 || nsteps % spec.cadence != 0)
    throw std::invalid_argument("evolve: cadence does not divide step count");

  DiagnosticsSeries out;
  if (spec.scheme == "eigenprop") {
    auto grid = spec.initial->grid_ptr();
    const int n = grid->n();
    if (n > 1024) throw std::invalid_argument("evolve: eigenprop needs n <= 1024");
    MatrixXc M = spec.kappa * second_derivative_matrix(*grid);
    for (int j = 0; j < n; ++j)
      M(j, j) += -spec.kappa * double(spec.k) * spec.k -
                 cplx(0.0, spec.k * (*spec.profile)(grid->point(j)));
    Eigen::ComplexEigenSolver<MatrixXc> es(M, true);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("evolve: eigendecomposition failed");
    VectorXc c0 = es.eigenvectors().partialPivLu().solve(to_vector(*spec.initial));
    record(out, 0.0, *spec.initial);
    SpectralField f = *spec.initial;
    for (long s = spec.cadence; s <= nsteps; s += spec.cadence) {
      double t = s * spec.dt;
      VectorXc c = c0;
      for (int j = 0; j < n; ++j) c[j] *= std::exp(es.eigenvalues()[j] * t);
      f = to_field(grid, es.eigenvectors() * c);
      record(out, t, f);
    }
    out.final_field = std::move(f);
    return out;
  }
  if (spec.scheme != "strang")
    throw std::invalid_argument("evolve: unknown scheme " + spec.scheme);

  const Grid& grid = spec.initial->grid();
  auto phase = advection_phase(grid, *spec.profile, spec.k, spec.dt / 2);
  auto heat = heat_multiplier(grid, spec.kappa, spec.k, spec.dt);
  std::vector<cplx> v = spec.initial->values();
  record(out, 0.0, *spec.initial);
  for (long s = 1; s <= nsteps; ++s) {
    for (int j = 0; j < grid.n(); ++j) v[j] *= phase[j];
    auto c = grid.forward(v);
    for (int j = 0; j < grid.n(); ++j) c[j] *= heat[j];
    v = grid.inverse(c);
    for (int j = 0; j < grid.n(); ++j) v[j] *= phase[j];
    if (s % spec.cadence == 0)
      record(out, s * spec.dt, SpectralField(spec.initial->grid_ptr(), v));
  }
  out.final_field = SpectralField(spec.initial->grid_ptr(), std::move(v));
  return out;
}

double enhanced_time(double kappa, int N) {
  if (kappa <= 0) throw std::invalid_argument("enhanced_time: kappa <= 0");
  return std::pow(kappa, -double(N + 1) / (N + 3));
}

SlopeFit fit_decay_exponent(const DiagnosticsSeries& series,
                            const std::string& tag, double t0, double t1,
                            double kappa, int N) {
  if (kappa > 0 && t1 > enhanced_time(kappa, N))
    throw std::invalid_argument(
        "fit_decay_exponent: window crosses the enhanced-dissipation time");
  const auto& vals = series_tag(series, tag);
  std::vector<double> lx, ly;
  for (size_t i = 0; i < series.t.size(); ++i)
    if (series.t[i] >= t0 && series.t[i] <= t1 && series.t[i] > 0 &&
        vals[i] > 0) {
      lx.push_back(std::log(series.t[i]));
      ly.push_back(std::log(vals[i]));
    }
  if (lx.size() < 10)
    throw std::invalid_argument("fit_decay_exponent: fewer than 10 samples");
  auto fit = least_squares(lx, ly);
  return {fit.slope, fit.stderr_};
}

LateRate fit_late_rate(const DiagnosticsSeries& series, double kappa, int k,
                       int N, double initial_slow_mass) {
  double te = enhanced_time(kappa, N);
  std::vector<double> xs, ys;
  for (size_t i = 0; i < series.t.size(); ++i)
    if (series.t[i] >= 2 * te && series.l2[i] > 0) {
      xs.push_back(series.t[i]);
      ys.push_back(std::log(series.l2[i]) + kappa * double(k) * k * series.t[i]);
    }
  if (xs.size() < 4)
    throw std::invalid_argument("fit_late_rate: window [2 T_e, t_end] too short");
  auto fit = least_squares(xs, ys);
  return {-fit.slope, fit.rel_residual, initial_slow_mass < 1e-8};
}

}  // namespace shearmix
