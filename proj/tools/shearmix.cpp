// shearmix command-line driver.
//
// Subcommands: evolve, spectrum, asymptotics, kernel, verify. Each run
// writes its artifacts under <out>/<subcommand>/<config-hash>/ so reruns
// with different parameters never clobber each other; a manifest.json in
// the run directory records the effective configuration, the hash, and the
// produced files. CSV bodies are deterministic for a fixed config and
// build; only the manifest carries a timestamp.
//
// Exit codes: 0 success, 1 acceptance failure, 2 usage error, 3 numerical
// failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "shearmix/evolution.hpp"
#include "shearmix/expansion.hpp"
#include "shearmix/io.hpp"
#include "shearmix/kernel.hpp"
#include "shearmix/profile.hpp"
#include "shearmix/spectral.hpp"
#include "shearmix/verify.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;
using namespace shearmix;

ShearProfile resolve_profile(const std::string& name) {
  if (name == "sin" || name == "sinusoidal") return make_profile("sinusoidal");
  if (name == "degenerate2") return make_profile("degenerate2");
  if (name == "couette" || name == "couette-truncated")
    return make_profile("couette-truncated");
  throw CLI::ValidationError("--profile", "unknown profile '" + name + "'");
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? "," : "") + fmt(v[i]);
  return s;
}

/// Create <out>/<subcommand>/<hash>/ and drop manifest.json inside.
fs::path start_run(const std::string& out_root, const std::string& subcommand,
                   const std::map<std::string, std::string>& config) {
  fs::path dir = fs::path(out_root) / subcommand / config_hash(config);
  fs::create_directories(dir);
  return dir;
}

void write_manifest(const fs::path& dir, const std::string& subcommand,
                    const std::map<std::string, std::string>& config,
                    const json& extra,
                    const std::vector<std::string>& outputs) {
  json m;
  m["subcommand"] = subcommand;
  m["config"] = config;
  m["config_hash"] = config_hash(config);
  m["outputs"] = outputs;
  m["extra"] = extra;
  m["timestamp_utc"] =
      std::chrono::duration_cast<std::chrono::seconds>(
          std::chrono::system_clock::now().time_since_epoch())
          .count();
  std::ofstream f(dir / "manifest.json");
  f << m.dump(2) << "\n";
}

/// Run fn(i) for i in [0, count) on up to `workers` threads. Exceptions are
/// captured and rethrown on the calling thread.
void parallel_for(int count, int workers, const std::function<void(int)>& fn) {
  workers = std::max(1, std::min(workers, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::mutex mu;
  std::exception_ptr err;
  std::atomic<int> next{0};
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

/// Parse a location like "1.57", "pi", "pi/2", or "3pi/2".
double parse_gamma(const std::string& s) {
  constexpr double kPi = 3.14159265358979323846;
  auto pos = s.find("pi");
  if (pos == std::string::npos) return std::stod(s);
  double mult = pos == 0 ? 1.0 : std::stod(s.substr(0, pos));
  double div = 1.0;
  auto rest = s.substr(pos + 2);
  if (!rest.empty()) {
    if (rest[0] != '/')
      throw CLI::ValidationError("--gamma", "cannot parse '" + s + "'");
    div = std::stod(rest.substr(1));
  }
  return mult * kPi / div;
}

int default_workers() {
  unsigned h = std::thread::hardware_concurrency();
  return h ? static_cast<int>(h) : 1;
}

// ---------------------------------------------------------------------------
// evolve

int cmd_evolve(const std::string& profile_name,
               const std::vector<double>& kappas, int k, int n, double t_end,
               double dt, int cadence, const std::string& scheme,
               const std::string& out_root, int workers) {
  ShearProfile profile = resolve_profile(profile_name);
  int N = 1;
  for (const auto& cp : find_critical_points(profile))
    N = std::max(N, cp.order);

  std::map<std::string, std::string> config = {
      {"profile", profile.name()}, {"kappa", fmt_list(kappas)},
      {"k", std::to_string(k)},    {"n", std::to_string(n)},
      {"tend", fmt(t_end)},        {"dt", fmt(dt)},
      {"cadence", std::to_string(cadence)}, {"scheme", scheme}};
  fs::path dir = start_run(out_root, "evolve", config);

  std::vector<std::string> outputs(kappas.size());
  json runs = json::array();
  std::mutex mu;
  parallel_for(static_cast<int>(kappas.size()), workers, [&](int i) {
    double kappa = kappas[i];
    auto grid = std::make_shared<Grid>(n);
    EvolveSpec spec;
    spec.profile = &profile;
    spec.kappa = kappa;
    spec.k = k;
    spec.initial = SpectralField::mode(grid, 1);
    spec.t_end = t_end;
    spec.dt = dt;
    spec.cadence = cadence;
    spec.scheme = scheme;
    DiagnosticsSeries d = evolve(spec);

    std::string name = "diagnostics_kappa" + fmt(kappa) + ".csv";
    write_csv((dir / name).string(),
              {{"t", d.t},
               {"L2", d.l2},
               {"H1dot", d.h1dot},
               {"Hm1", d.hm1},
               {"Hm1dot", d.hm1dot},
               {"ell", d.ell},
               {"ellbar", d.ellbar},
               {"sup", d.sup}});
    json r;
    r["kappa"] = kappa;
    r["samples"] = d.t.size();
    r["N"] = N;
    r["T_e"] = enhanced_time(kappa, N);
    r["csv"] = name;
    std::lock_guard<std::mutex> lock(mu);
    outputs[i] = name;
    runs.push_back(r);
  });

  json extra;
  extra["N"] = N;
  extra["runs"] = runs;
  write_manifest(dir, "evolve", config, extra, outputs);
  std::printf("evolve: %zu run(s) -> %s\n", kappas.size(), dir.c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// spectrum

int cmd_spectrum(const std::string& profile_name, double eps, double q, int n,
                 const std::string& out_root) {
  ShearProfile profile = resolve_profile(profile_name);
  std::map<std::string, std::string> config = {{"profile", profile.name()},
                                               {"eps", fmt(eps)},
                                               {"q", fmt(q)},
                                               {"n", std::to_string(n)}};
  fs::path dir = start_run(out_root, "spectrum", config);

  SpectralWindow window = window_spectrum(profile, eps, q, n);
  std::vector<double> re, im, residual, cp_index, alpha, speed, decay;
  json pairs = json::array();
  for (const auto& p : window.pairs) {
    WaveReadout w = traveling_wave_readout(p);
    re.push_back(p.lambda.real());
    im.push_back(p.lambda.imag());
    residual.push_back(p.residual);
    cp_index.push_back(p.cp_index);
    alpha.push_back(p.alpha);
    speed.push_back(w.speed);
    decay.push_back(w.decay);
    pairs.push_back({{"re", p.lambda.real()},
                     {"im", p.lambda.imag()},
                     {"residual", p.residual},
                     {"cp_index", p.cp_index},
                     {"alpha", p.alpha},
                     {"method", p.method},
                     {"speed", w.speed},
                     {"decay", w.decay}});
  }
  write_csv((dir / "window.csv").string(),
            {{"re", re},
             {"im", im},
             {"residual", residual},
             {"cp_index", cp_index},
             {"alpha", alpha},
             {"speed", speed},
             {"decay", decay}});
  json extra;
  extra["pairs"] = pairs;
  extra["anomalies"] = window.anomalies;
  extra["count"] = window.pairs.size();
  write_manifest(dir, "spectrum", config, extra, {"window.csv"});
  std::printf("spectrum: %zu pair(s) in the window -> %s\n",
              window.pairs.size(), dir.c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// asymptotics

int cmd_asymptotics(const std::string& profile_name, int alpha, int order,
                    double gamma, bool have_gamma,
                    const std::vector<double>& eps_list,
                    const std::string& out_root) {
  ShearProfile profile = resolve_profile(profile_name);
  auto cps = find_critical_points(profile);
  // Select the critical point: nearest to --gamma when given, else the first
  // simple one.
  const CriticalPoint* cp = nullptr;
  double best = 1e300;
  for (const auto& c : cps) {
    if (c.order != 1) continue;
    double d = have_gamma ? circle_distance(c.gamma, gamma) : 0.0;
    if (!cp || d < best) {
      cp = &c;
      best = d;
      if (!have_gamma) break;
    }
  }
  if (!cp)
    throw std::runtime_error("asymptotics: no simple critical point found");

  std::map<std::string, std::string> config = {
      {"profile", profile.name()},    {"alpha", std::to_string(alpha)},
      {"order", std::to_string(order)}, {"gamma", fmt(cp->gamma)},
      {"eps", fmt_list(eps_list)}};
  fs::path dir = start_run(out_root, "asymptotics", config);

  ExpansionResult res = higher_order_expansion(profile, *cp, alpha, order);
  std::vector<double> kcol, re, im, hat;
  json coeffs = json::array();
  for (std::size_t k = 0; k < res.lambda.size(); ++k) {
    kcol.push_back(static_cast<double>(k));
    re.push_back(res.lambda[k].real());
    im.push_back(res.lambda[k].imag());
    hat.push_back(res.lambda_hat[k]);
    coeffs.push_back({{"k", k},
                      {"re", res.lambda[k].real()},
                      {"im", res.lambda[k].imag()},
                      {"lambda_hat", res.lambda_hat[k]}});
  }
  write_csv((dir / "coefficients.csv").string(),
            {{"k", kcol}, {"re", re}, {"im", im}, {"lambda_hat", hat}});

  std::vector<std::string> outputs = {"coefficients.csv"};
  json preds = json::array();
  if (!eps_list.empty()) {
    std::vector<double> epscol, pre, pim, seed_re, seed_im;
    for (double eps : eps_list) {
      cplx pred = expansion_prediction(res, eps);
      cplx seed = asymptotic_seed(profile, *cp, alpha, eps);
      epscol.push_back(eps);
      pre.push_back(pred.real());
      pim.push_back(pred.imag());
      seed_re.push_back(seed.real());
      seed_im.push_back(seed.imag());
      preds.push_back({{"eps", eps},
                       {"re", pred.real()},
                       {"im", pred.imag()},
                       {"seed_re", seed.real()},
                       {"seed_im", seed.imag()}});
    }
    write_csv((dir / "predictions.csv").string(),
              {{"eps", epscol},
               {"re", pre},
               {"im", pim},
               {"seed_re", seed_re},
               {"seed_im", seed_im}});
    outputs.push_back("predictions.csv");
  }

  json extra;
  extra["gamma"] = cp->gamma;
  extra["sign_b2"] = cp->sign_b2;
  extra["coefficients"] = coeffs;
  extra["predictions"] = preds;
  write_manifest(dir, "asymptotics", config, extra, outputs);

  std::printf("asymptotics: %s at gamma=%.6f, alpha=%d, order %d\n",
              profile.name().c_str(), cp->gamma, alpha, order);
  for (std::size_t k = 0; k < res.lambda.size(); ++k)
    std::printf("  Lambda_%zu = %+.12f %+.12fi\n", k, res.lambda[k].real(),
                res.lambda[k].imag());
  std::printf("-> %s\n", dir.c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// kernel

int cmd_kernel(const std::string& profile_name,
               const std::vector<double>& eps_list,
               const std::vector<double>& z_list,
               const std::vector<double>& lambda_list, double alpha,
               double sigma0, int n, const std::vector<double>& monotone_eps,
               const std::string& out_root) {
  ShearProfile profile = resolve_profile(profile_name);
  std::map<std::string, std::string> config = {
      {"profile", profile.name()},  {"eps", fmt_list(eps_list)},
      {"z", fmt_list(z_list)},      {"lambda", fmt_list(lambda_list)},
      {"alpha", fmt(alpha)},        {"sigma0", fmt(sigma0)},
      {"n", std::to_string(n)},     {"monotone_eps", fmt_list(monotone_eps)}};
  fs::path dir = start_run(out_root, "kernel", config);

  KernelSweep sweep;
  sweep.eps_list = eps_list;
  sweep.z_list = z_list;
  sweep.lambda_list = lambda_list;
  sweep.alpha = alpha;
  sweep.sigma0 = sigma0;
  sweep.n = n;
  BoundFit fit = verify_kernel_bounds(profile, sweep);

  std::vector<double> eps_col, c_col;
  for (const auto& [e, c] : fit.C_per_eps) {
    eps_col.push_back(e);
    c_col.push_back(c);
  }
  write_csv((dir / "bound_fit.csv").string(),
            {{"eps", eps_col}, {"C", c_col}});

  json extra;
  extra["C"] = fit.C;
  extra["c0"] = fit.c0;
  extra["C_deriv"] = fit.C_deriv;
  extra["pass"] = fit.pass;
  extra["slices"] = fit.slices;
  extra["worst_slice"] = fit.worst_slice;
  std::vector<std::string> outputs = {"bound_fit.csv"};

  if (!monotone_eps.empty()) {
    MonotoneFit mono = monotone_resolvent_check(monotone_eps);
    extra["monotone"] = {{"slope_f", mono.slope_f},
                         {"slope_df", mono.slope_df},
                         {"domain", mono.domain}};
    std::printf("kernel: monotone slopes %.4f / %.4f (domain %.0f)\n",
                mono.slope_f, mono.slope_df, mono.domain);
  }
  write_manifest(dir, "kernel", config, extra, outputs);
  std::printf("kernel: c0=%.2f C=%.4g C_deriv=%.4g pass=%s (%d slices) -> %s\n",
              fit.c0, fit.C, fit.C_deriv, fit.pass ? "yes" : "no", fit.slices,
              dir.c_str());
  return fit.pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(const std::vector<std::string>& only,
               const std::string& out_root) {
  auto records = run_acceptance(only);
  if (records.empty()) {
    std::fprintf(stderr, "verify: no criterion matches the --only filter\n");
    return 2;
  }
  std::map<std::string, std::string> config = {
      {"only", [&] {
         std::string s;
         for (const auto& o : only) s += (s.empty() ? "" : ",") + o;
         return s;
       }()}};
  fs::path dir = start_run(out_root, "verify", config);

  bool all_pass = true;
  std::vector<double> runtimes;
  std::vector<std::string> ids;
  json table = json::array();
  for (const auto& r : records) {
    std::printf("%s: %s  %s  [%.1fs]\n", r.id.c_str(),
                r.pass ? "PASS" : "FAIL", r.detail.c_str(),
                r.runtime_seconds);
    all_pass = all_pass && r.pass;
    ids.push_back(r.id);
    runtimes.push_back(r.runtime_seconds);
    table.push_back({{"id", r.id},
                     {"pass", r.pass},
                     {"detail", r.detail},
                     {"runtime_seconds", r.runtime_seconds}});
  }
  json extra;
  extra["table"] = table;
  extra["all_pass"] = all_pass;
  write_manifest(dir, "verify", config, extra, {});
  if (!all_pass) {
    for (const auto& r : records)
      if (!r.pass) std::fprintf(stderr, "verify: %s FAILED\n", r.id.c_str());
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shearmix: shear-flow mixing experiments"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "Key=value config file with one [subcommand] section per "
                 "subcommand; flags override (give --config before the "
                 "subcommand)");

  std::string profile = "sinusoidal";
  std::string out_root = "out";
  int workers = default_workers();

  // evolve
  auto* ev = app.add_subcommand("evolve", "Integrate the mode equation");
  std::vector<double> kappas = {1e-4};
  int ev_k = 1, ev_n = 256, ev_cadence = 100;
  double ev_tend = 100.0, ev_dt = 0.01;
  std::string ev_scheme = "strang";
  ev->add_option("--profile", profile, "Profile name")->required();
  ev->add_option("--kappa", kappas, "Diffusivity list");
  ev->add_option("--k", ev_k, "Horizontal wavenumber");
  ev->add_option("--n", ev_n, "Grid size (power of two >= 64)");
  ev->add_option("--tend", ev_tend, "Final time");
  ev->add_option("--dt", ev_dt, "Time step");
  ev->add_option("--cadence", ev_cadence, "Record every this many steps");
  ev->add_option("--scheme", ev_scheme, "strang or eigenprop");
  ev->add_option("--out", out_root, "Output root directory");
  ev->add_option("--workers", workers, "Sweep worker threads");

  // spectrum
  auto* sp = app.add_subcommand("spectrum", "Slow spectral window of L_eps");
  double sp_eps = 1e-2, sp_q = 3.0;
  int sp_n = 0;
  sp->add_option("--profile", profile, "Profile name")->required();
  sp->add_option("--eps", sp_eps, "Viscosity eps");
  sp->add_option("--q", sp_q, "Window depth: Re lambda >= -q sqrt(eps)");
  sp->add_option("--n", sp_n, "Grid size (0 = automatic)");
  sp->add_option("--out", out_root, "Output root directory");

  // asymptotics
  auto* as = app.add_subcommand("asymptotics",
                                "Higher-order eigenvalue expansion");
  int as_alpha = 0, as_order = 4;
  std::string as_gamma;
  std::vector<double> as_eps;
  as->add_option("--profile", profile, "Profile name")->required();
  as->add_option("--alpha", as_alpha, "Hermite level");
  as->add_option("--order", as_order, "Expansion order m (<= 6)");
  as->add_option("--gamma", as_gamma,
                 "Pick the critical point nearest this y (accepts pi/2)");
  as->add_option("--eps", as_eps, "Evaluate the prediction at these eps");
  as->add_option("--out", out_root, "Output root directory");

  // kernel
  auto* ke = app.add_subcommand("kernel", "Fundamental-solution bound sweep");
  std::vector<double> ke_eps = {1e-2, 1e-3, 1e-4};
  std::vector<double> ke_z = {1.5707963267948966, 0.7853981633974483, 1.0};
  std::vector<double> ke_lambda = {0.5, 1.0, 1.5, -1.3};
  std::vector<double> ke_mono;
  double ke_alpha = 0.5, ke_sigma0 = 0.1;
  int ke_n = 512;
  ke->add_option("--profile", profile, "Profile name")->required();
  ke->add_option("--eps", ke_eps, "eps sweep (>= 3 values, >= 2 decades)");
  ke->add_option("--z", ke_z, "Impulse locations");
  ke->add_option("--lambda", ke_lambda, "Spectral parameters");
  ke->add_option("--alpha", ke_alpha, "Zeroth-order coefficient");
  ke->add_option("--sigma0", ke_sigma0, "Shift constant");
  ke->add_option("--n", ke_n, "Grid size");
  ke->add_option("--monotone-eps", ke_mono,
                 "Also run the monotone-shear resolvent sweep at these eps");
  ke->add_option("--out", out_root, "Output root directory");

  // verify
  auto* ve = app.add_subcommand("verify", "Run the acceptance suite");
  std::vector<std::string> ve_only;
  std::string ve_suite = "full";
  ve->add_option("--only", ve_only, "Restrict to these criterion IDs");
  ve->add_option("--suite", ve_suite, "quick or full (same criteria)");
  ve->add_option("--out", out_root, "Output root directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);  // prints the message / help text
    return code == 0 ? 0 : 2;
  }

  try {
    if (*ev)
      return cmd_evolve(profile, kappas, ev_k, ev_n, ev_tend, ev_dt,
                        ev_cadence, ev_scheme, out_root, workers);
    if (*sp) return cmd_spectrum(profile, sp_eps, sp_q, sp_n, out_root);
    if (*as)
      return cmd_asymptotics(profile, as_alpha, as_order,
                             as_gamma.empty() ? 0.0 : parse_gamma(as_gamma),
                             !as_gamma.empty(), as_eps, out_root);
    if (*ke)
      return cmd_kernel(profile, ke_eps, ke_z, ke_lambda, ke_alpha, ke_sigma0,
                        ke_n, ke_mono, out_root);
    if (*ve) return cmd_verify(ve_only, out_root);
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  }
  return 2;
}
